#include "algeval/sketch.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace algeval {

std::optional<Label> label_from_char(char c) {
    if (c == 'a') return Label::alpha;
    if (c == 'b') return Label::beta;
    return std::nullopt;
}

std::string DecisionEvent::pattern() const {
    return {label_char(votes[0]), label_char(votes[1]), label_char(votes[2])};
}

std::optional<DecisionEvent> DecisionEvent::parse(std::string_view pattern) {
    if (pattern.size() != 3) return std::nullopt;
    DecisionEvent ev;
    for (int i = 0; i < 3; ++i) {
        auto l = label_from_char(pattern[i]);
        if (!l) return std::nullopt;
        ev.votes[i] = *l;
    }
    return ev;
}

void DecisionSketch::update(const DecisionEvent& event) {
    std::uint64_t& c = counts_[event.index()];
    if (c == std::numeric_limits<std::uint64_t>::max() ||
        n_ == std::numeric_limits<std::uint64_t>::max())
        throw CounterOverflow("sketch counter at 2^64-1");
    ++c;
    ++n_;
}

DecisionSketch DecisionSketch::merge(const DecisionSketch& other) const {
    DecisionSketch out;
    for (int e = 0; e < 8; ++e) {
        std::uint64_t sum = 0;
        if (__builtin_add_overflow(counts_[e], other.counts_[e], &sum))
            throw CounterOverflow("sketch counter sum exceeds 2^64-1");
        out.counts_[e] = sum;
    }
    if (__builtin_add_overflow(n_, other.n_, &out.n_))
        throw CounterOverflow("sketch total exceeds 2^64-1");
    return out;
}

DecisionSketch DecisionSketch::from_counts(const std::array<std::uint64_t, 8>& counts) {
    DecisionSketch out;
    out.counts_ = counts;
    std::uint64_t n = 0;
    for (std::uint64_t c : counts) {
        if (__builtin_add_overflow(n, c, &n))
            throw CounterOverflow("sketch total exceeds 2^64-1");
    }
    out.n_ = n;
    return out;
}

DecisionSketch to_sketch(const LabeledStream& stream) {
    DecisionSketch sk;
    for (const auto& item : stream.items) sk.update(item.event);
    return sk;
}

GroundTruthPoint truth_statistics(const LabeledStream& stream) {
    if (stream.items.empty()) throw EmptySketch("labeled stream is empty");

    // Integer tallies first; the centered-product statistics reduce to
    // polynomial expressions in these (identical to the per-item sums).
    std::array<std::uint64_t, 2> n_label{};
    std::array<std::array<std::uint64_t, 3>, 2> correct{};        // [label][i]
    std::array<std::array<std::uint64_t, 3>, 2> pair_correct{};   // [label][pair]
    std::array<std::uint64_t, 2> triple_correct{};                // [label]

    for (const auto& item : stream.items) {
        int lbl = item.truth == Label::alpha ? 0 : 1;
        ++n_label[lbl];
        std::array<bool, 3> ok{};
        for (int i = 0; i < 3; ++i) ok[i] = item.event.votes[i] == item.truth;
        for (int i = 0; i < 3; ++i)
            if (ok[i]) ++correct[lbl][i];
        for (int p = 0; p < 3; ++p) {
            auto [i, j] = kPairs[p];
            if (ok[i] && ok[j]) ++pair_correct[lbl][p];
        }
        if (ok[0] && ok[1] && ok[2]) ++triple_correct[lbl];
    }

    if (n_label[0] == 0) throw MissingLabel("no alpha items: per-label statistics undefined");
    if (n_label[1] == 0) throw MissingLabel("no beta items: per-label statistics undefined");

    GroundTruthPoint gt;
    gt.n_alpha = n_label[0];
    gt.n_beta = n_label[1];
    BigInt n_total(static_cast<unsigned long>(stream.items.size()));
    gt.point.prevalence_alpha =
        make_rational(BigInt(static_cast<unsigned long>(n_label[0])), n_total);

    for (int lbl = 0; lbl < 2; ++lbl) {
        BigInt nl(static_cast<unsigned long>(n_label[lbl]));
        std::array<Rational, 3> acc;
        for (int i = 0; i < 3; ++i)
            acc[i] = make_rational(BigInt(static_cast<unsigned long>(correct[lbl][i])), nl);

        std::array<Rational, 3> pair_corr;
        for (int p = 0; p < 3; ++p) {
            auto [i, j] = kPairs[p];
            Rational mean_product =
                make_rational(BigInt(static_cast<unsigned long>(pair_correct[lbl][p])), nl);
            pair_corr[p] = mean_product - acc[i] * acc[j];
        }

        // E[(x_i-P_i)(x_j-P_j)(x_k-P_k)]
        //   = E[xyz] - P_i E[yz] - P_j E[xz] - P_k E[xy] + 2 P_i P_j P_k
        Rational mean_triple =
            make_rational(BigInt(static_cast<unsigned long>(triple_correct[lbl])), nl);
        Rational triple = mean_triple + 2 * acc[0] * acc[1] * acc[2];
        for (int p = 0; p < 3; ++p) {
            int k = kThirdOfPair[p];
            Rational mean_pair =
                make_rational(BigInt(static_cast<unsigned long>(pair_correct[lbl][p])), nl);
            triple -= acc[k] * mean_pair;
        }

        if (lbl == 0) {
            gt.point.acc_alpha = acc;
            gt.correlations.pair_alpha = pair_corr;
            gt.correlations.triple_alpha = triple;
        } else {
            gt.point.acc_beta = acc;
            gt.correlations.pair_beta = pair_corr;
            gt.correlations.triple_beta = triple;
        }
    }
    return gt;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

IngestResult ingest_decisions(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    bool have_header = false;
    bool has_truth = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_fields(line);
        if (fields.size() == 5 && fields[4] == "truth") {
            has_truth = true;
        } else if (fields.size() != 4) {
            throw ParseError("row " + std::to_string(line_no) +
                             ": expected header item_id,c1,c2,c3[,truth]");
        }
        have_header = true;
        break;
    }
    if (!have_header) throw ParseError("decisions file has no header row");

    IngestResult result;
    LabeledStream stream;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_fields(line);
        std::size_t expected = has_truth ? 5 : 4;
        if (fields.size() != expected) {
            if (fields.size() == 4 || fields.size() == 5)
                throw InconsistentTruthColumn(
                    "row " + std::to_string(line_no) + ": truth column " +
                    (has_truth ? "missing" : "present") + " but header says otherwise");
            throw ParseError("row " + std::to_string(line_no) + ": expected " +
                             std::to_string(expected) + " fields, got " +
                             std::to_string(fields.size()));
        }
        DecisionEvent ev;
        for (int i = 0; i < 3; ++i) {
            const std::string& f = fields[1 + i];
            if (f.size() != 1)
                throw ParseError("row " + std::to_string(line_no) + ": vote '" + f +
                                 "' is not in {a,b}");
            auto l = label_from_char(f[0]);
            if (!l)
                throw ParseError("row " + std::to_string(line_no) + ": vote '" + f +
                                 "' is not in {a,b}");
            ev.votes[i] = *l;
        }
        result.sketch.update(ev);
        if (has_truth) {
            const std::string& f = fields[4];
            std::optional<Label> l = f.size() == 1 ? label_from_char(f[0]) : std::nullopt;
            if (!l)
                throw ParseError("row " + std::to_string(line_no) + ": truth '" + f +
                                 "' is not in {a,b}");
            stream.items.push_back({ev, *l});
        }
    }
    if (has_truth) result.stream = std::move(stream);
    return result;
}

void write_decisions(std::ostream& out, const LabeledStream& stream,
                     std::string_view generator_note) {
    if (!generator_note.empty()) out << "# " << generator_note << "\n";
    out << "item_id,c1,c2,c3,truth\n";
    std::size_t id = 0;
    for (const auto& item : stream.items) {
        out << id++;
        for (int i = 0; i < 3; ++i) out << ',' << label_char(item.event.votes[i]);
        out << ',' << label_char(item.truth) << "\n";
    }
}

}  // namespace algeval
