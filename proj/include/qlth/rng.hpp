#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qlth {

// Deterministic random source. std::mt19937_64 has a standard-specified
// output sequence; the double conversion is done by hand because the
// distributions in <random> are implementation-defined. Same seed, same
// stream, on every platform this builds on.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n) via rejection, exact and reproducible.
    std::size_t index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    template <typename T> void shuffle(std::vector<T> &v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

    // Decorrelates streams that share a user-facing seed (model init,
    // epoch shuffling, data splitting, ...). splitmix64 finalizer.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 engine_;
};

// Stream salts; one per independent consumer of a run seed.
inline constexpr std::uint64_t kSaltInit = 1;
inline constexpr std::uint64_t kSaltShuffle = 2;
inline constexpr std::uint64_t kSaltSplit = 3;
inline constexpr std::uint64_t kSaltEa = 4;

} // namespace qlth
