#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>

namespace eok {

// All randomness in the library flows through this type. The engine is
// std::mt19937_64, whose output sequence is fixed by the standard; the
// distributions below are written out by hand because the std:: ones are
// implementation-defined and would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound). Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Number of failures before the first success, success probability q in (0, 1].
    std::uint64_t geometric(double q) {
        if (q >= 1.0) return 0;
        double u = 1.0 - uniform();  // (0, 1]
        double g = std::floor(std::log(u) / std::log1p(-q));
        if (!(g < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(g);
    }

    // Exact Binomial(trials, q) by geometric gap skipping; O(trials * q) expected.
    std::uint64_t binomial(std::uint64_t trials, double q) {
        if (q <= 0.0 || trials == 0) return 0;
        if (q >= 1.0) return trials;
        std::uint64_t count = 0;
        std::uint64_t pos = 0;
        for (;;) {
            std::uint64_t gap = geometric(q);
            if (gap >= trials - pos) break;
            pos += gap + 1;
            ++count;
            if (pos >= trials) break;
        }
        return count;
    }

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial) {
    return mix64(mix64(mix64(master) ^ cell) ^ trial);
}

}  // namespace eok
