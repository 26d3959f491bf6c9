#include "algeval/forward.hpp"

#include <algorithm>

namespace algeval {

namespace {

BigInt lcm_of_denominator(const BigInt& acc, const Rational& value) {
    BigInt out;
    mpz_lcm(out.get_mpz_t(), acc.get_mpz_t(), value.get_den().get_mpz_t());
    return out;
}

}  // namespace

BigInt minimal_test_size(const FrequencyVector<Rational>& freqs) {
    BigInt n(1);
    for (int e = 0; e < 8; ++e) n = lcm_of_denominator(n, freqs[e]);
    return n;
}

BigInt minimal_test_size(const FrequencyVector<double>&) {
    throw NotRational("minimal test size requires exact rational frequencies");
}

BigInt minimal_materialization_size(const EvaluationPoint<Rational>& point,
                                    const CorrelationSet<Rational>& corr) {
    auto table = conditional_event_table(point, corr);
    Rational pa = point.prevalence_alpha;
    Rational pb = Rational(1) - pa;
    BigInt n(1);
    for (int e = 0; e < 8; ++e) {
        n = lcm_of_denominator(n, pa * table.given_alpha[e]);
        n = lcm_of_denominator(n, pb * table.given_beta[e]);
    }
    return n;
}

LabeledStream materialize_stream(const EvaluationPoint<Rational>& point,
                                 const CorrelationSet<Rational>& corr, std::uint64_t n,
                                 std::uint64_t seed) {
    auto table = conditional_event_table(point, corr);
    Rational pa = point.prevalence_alpha;
    Rational pb = Rational(1) - pa;
    BigInt big_n(static_cast<unsigned long>(n));

    LabeledStream stream;
    stream.items.reserve(n);
    for (int lbl = 0; lbl < 2; ++lbl) {
        Label label = lbl == 0 ? Label::alpha : Label::beta;
        const Rational& weight = lbl == 0 ? pa : pb;
        const auto& cond = lbl == 0 ? table.given_alpha : table.given_beta;
        for (int e = 0; e < 8; ++e) {
            Rational count = weight * cond[e] * Rational(big_n);
            if (count.get_den() != 1) {
                BigInt minimal = minimal_materialization_size(point, corr);
                throw IndivisibleTestSize(
                    "count of " + DecisionEvent::from_index(e).pattern() + " given " +
                    std::string(1, label_char(label)) + " is not integral at n=" +
                    std::to_string(n) + "; smallest valid n is " + minimal.get_str());
            }
            unsigned long reps = count.get_num().get_ui();
            for (unsigned long r = 0; r < reps; ++r)
                stream.items.push_back({DecisionEvent::from_index(e), label});
        }
    }

    Rng rng(seed);
    rng.shuffle(stream.items);
    return stream;
}

LabeledStream sample_stream(const EvaluationPoint<Rational>& point,
                            const CorrelationSet<Rational>& corr, std::uint64_t n,
                            std::uint64_t seed) {
    auto exact_table = conditional_event_table(point, corr);

    double pa = to_double(point.prevalence_alpha);
    std::array<std::array<double, 8>, 2> cumulative{};
    for (int lbl = 0; lbl < 2; ++lbl) {
        const auto& cond = lbl == 0 ? exact_table.given_alpha : exact_table.given_beta;
        double acc = 0.0;
        for (int e = 0; e < 8; ++e) {
            acc += to_double(cond[e]);
            cumulative[lbl][e] = acc;
        }
        cumulative[lbl][7] = 1.0;
    }

    Rng rng(seed);
    LabeledStream stream;
    stream.items.reserve(n);
    for (std::uint64_t s = 0; s < n; ++s) {
        int lbl = rng.uniform01() < pa ? 0 : 1;
        double u = rng.uniform01();
        int e = 0;
        while (e < 7 && u >= cumulative[lbl][e]) ++e;
        stream.items.push_back(
            {DecisionEvent::from_index(e), lbl == 0 ? Label::alpha : Label::beta});
    }
    return stream;
}

}  // namespace algeval
