#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace eok {

// C(n, r), saturating at UINT64_MAX.
inline std::uint64_t choose_u64(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

inline double choose(double n, double r) {
    if (r < 0 || r > n) return 0.0;
    return std::exp(std::lgamma(n + 1) - std::lgamma(r + 1) - std::lgamma(n - r + 1));
}

inline double log_choose(double n, double r) {
    if (r < 0 || r > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1) - std::lgamma(r + 1) - std::lgamma(n - r + 1);
}

inline double factorial(unsigned m) {
    double f = 1.0;
    for (unsigned i = 2; i <= m; ++i) f *= i;
    return f;
}

// Advances `subset` (strictly increasing, values < n) to the next k-subset in
// lexicographic order. Returns false after the last one.
inline bool next_combination(std::vector<std::uint32_t>& subset, std::uint32_t n) {
    const auto k = static_cast<std::uint32_t>(subset.size());
    std::uint32_t i = k;
    while (i > 0) {
        --i;
        if (subset[i] < n - k + i) {
            ++subset[i];
            for (std::uint32_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace eok
