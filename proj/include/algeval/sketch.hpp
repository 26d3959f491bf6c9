#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algeval/errors.hpp"
#include "algeval/point.hpp"
#include "algeval/scalar.hpp"

namespace algeval {

enum class Label : std::uint8_t { alpha = 0, beta = 1 };

inline Label opposite(Label l) { return l == Label::alpha ? Label::beta : Label::alpha; }
inline char label_char(Label l) { return l == Label::alpha ? 'a' : 'b'; }
std::optional<Label> label_from_char(char c);

// One aligned decision by the trio; eight distinct values. The classifier
// count is carried by the type so serialized formats stay tied to it.
struct DecisionEvent {
    static constexpr int kClassifiers = 3;
    static constexpr int kCount = 1 << kClassifiers;

    std::array<Label, kClassifiers> votes;

    // Pattern index with classifier 1 most significant: "aaa" = 0, "bbb" = 7.
    int index() const {
        return (votes[0] == Label::beta ? 4 : 0) | (votes[1] == Label::beta ? 2 : 0) |
               (votes[2] == Label::beta ? 1 : 0);
    }

    static DecisionEvent from_index(int idx) {
        return DecisionEvent{{(idx & 4) ? Label::beta : Label::alpha,
                              (idx & 2) ? Label::beta : Label::alpha,
                              (idx & 1) ? Label::beta : Label::alpha}};
    }

    bool votes_beta(int classifier) const { return votes[classifier] == Label::beta; }

    std::string pattern() const;
    static std::optional<DecisionEvent> parse(std::string_view pattern);

    friend bool operator==(const DecisionEvent&, const DecisionEvent&) = default;
};

// The per-item decision data sketch: eight voting-pattern counters plus the
// item total. Counters are 64-bit with checked addition; overflow is a hard
// error rather than a silent wraparound.
class DecisionSketch {
public:
    void update(const DecisionEvent& event);
    DecisionSketch merge(const DecisionSketch& other) const;

    std::uint64_t n() const { return n_; }
    std::uint64_t count(const DecisionEvent& event) const { return counts_[event.index()]; }
    std::uint64_t count(int index) const { return counts_[index]; }
    const std::array<std::uint64_t, 8>& counts() const { return counts_; }

    static DecisionSketch from_counts(const std::array<std::uint64_t, 8>& counts);

    friend bool operator==(const DecisionSketch&, const DecisionSketch&) = default;

private:
    std::array<std::uint64_t, 8> counts_{};
    std::uint64_t n_ = 0;
};

template <class S>
struct FrequencyVector {
    std::array<S, 8> freqs{};

    const S& operator[](int i) const { return freqs[i]; }
    S& operator[](int i) { return freqs[i]; }

    friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;
};

template <class S>
FrequencyVector<S> frequencies(const DecisionSketch& sketch) {
    if (sketch.n() == 0) throw EmptySketch();
    FrequencyVector<S> out;
    if constexpr (is_exact_scalar_v<S>) {
        BigInt n = BigInt(static_cast<unsigned long>(sketch.n()));
        for (int e = 0; e < 8; ++e)
            out[e] = make_rational(BigInt(static_cast<unsigned long>(sketch.count(e))), n);
    } else {
        double n = static_cast<double>(sketch.n());
        for (int e = 0; e < 8; ++e) out[e] = static_cast<double>(sketch.count(e)) / n;
    }
    return out;
}

// Observed sample statistics of a sketch. delta[p] is the label-symmetric
// pair covariance f_{i,j,beta} - f_{i,beta} f_{j,beta}; triple_delta is the
// third central mixed moment of the three beta-vote indicators.
template <class S>
struct SketchStatistics {
    std::array<S, 3> vote_beta{};       // f_{i,beta}
    std::array<S, 3> pair_vote_beta{};  // f_{i,j,beta}, pair order per kPairs
    std::array<S, 3> delta{};           // Delta_{i,j}
    S triple_delta{};                   // T
    std::array<S, 3> agreement{};       // a_{i,j}
};

template <class S>
SketchStatistics<S> statistics(const FrequencyVector<S>& fv) {
    SketchStatistics<S> st;
    for (int i = 0; i < 3; ++i) {
        S sum{};
        for (int e = 0; e < 8; ++e)
            if (DecisionEvent::from_index(e).votes_beta(i)) sum += fv[e];
        st.vote_beta[i] = sum;
    }
    for (int p = 0; p < 3; ++p) {
        auto [i, j] = kPairs[p];
        S both_beta{};
        S both_alpha{};
        for (int e = 0; e < 8; ++e) {
            auto ev = DecisionEvent::from_index(e);
            if (ev.votes_beta(i) && ev.votes_beta(j)) both_beta += fv[e];
            if (!ev.votes_beta(i) && !ev.votes_beta(j)) both_alpha += fv[e];
        }
        st.pair_vote_beta[p] = both_beta;
        st.delta[p] = both_beta - st.vote_beta[i] * st.vote_beta[j];
        st.agreement[p] = both_alpha + both_beta;
    }
    S t{};
    for (int e = 0; e < 8; ++e) {
        auto ev = DecisionEvent::from_index(e);
        S term = fv[e];
        for (int i = 0; i < 3; ++i) {
            S x = ev.votes_beta(i) ? S(1) : S(0);
            term *= x - st.vote_beta[i];
        }
        t += term;
    }
    st.triple_delta = t;
    return st;
}

template <class S>
SketchStatistics<S> statistics(const DecisionSketch& sketch) {
    return statistics(frequencies<S>(sketch));
}

struct LabeledItem {
    DecisionEvent event;
    Label truth;

    friend bool operator==(const LabeledItem&, const LabeledItem&) = default;
};

struct LabeledStream {
    std::vector<LabeledItem> items;

    friend bool operator==(const LabeledStream&, const LabeledStream&) = default;
};

DecisionSketch to_sketch(const LabeledStream& stream);

// Ground-truth sample statistics of a labeled stream: the true evaluation
// point, the full correlation set, and the label tallies. Exact rationals.
struct GroundTruthPoint {
    EvaluationPoint<Rational> point;
    CorrelationSet<Rational> correlations;
    std::uint64_t n_alpha = 0;
    std::uint64_t n_beta = 0;
};

GroundTruthPoint truth_statistics(const LabeledStream& stream);

struct IngestResult {
    DecisionSketch sketch;
    std::optional<LabeledStream> stream;
};

// Reads the decisions file format: header `item_id,c1,c2,c3[,truth]`, votes
// and truth in {a,b}. Lines starting with '#' are skipped. The labeled
// stream is returned iff the header declares a truth column (every row must
// then carry one).
IngestResult ingest_decisions(std::istream& in);

void write_decisions(std::ostream& out, const LabeledStream& stream,
                     std::string_view generator_note = {});

}  // namespace algeval
