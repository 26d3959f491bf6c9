#pragma once

#include <cstdint>
#include <vector>

namespace algeval {

// xoshiro256++ with splitmix64 seeding. Hand-rolled so that sequences are
// identical on every platform (std engines are portable, std distributions
// are not). Streams for parallel workers come from split(), which derives a
// child seed from the construction seed and the stream index only — the
// parent's draw position never leaks into children.
class Rng {
public:
    static constexpr const char* kAlgorithm = "xoshiro256++";

    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // 53-bit uniform in [0, 1).
    double uniform01();

    // Unbiased uniform integer in [0, bound); bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);

    // Child generator for stream `index`, independent of draw position.
    Rng split(std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }

    template <class T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t state_[4];
};

}  // namespace algeval
