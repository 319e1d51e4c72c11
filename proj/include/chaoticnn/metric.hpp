#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>

#include "chaoticnn/dynamics.hpp"

namespace chaoticnn {

/// Evaluation rule for the strategy distance d_s, which is an infinite
/// series: only the first `depth` strategy terms are compared.
///
/// Truncating at depth K changes d_s by at most (N-1)/N * 10^-K (the tail
/// is a geometric series whose terms are bounded by 9/N * (N-1) * 10^-k).
struct TruncationPolicy {
    int depth = 16;

    TruncationPolicy() = default;
    explicit TruncationPolicy(int k) : depth(k) {
        if (k < 1) throw std::invalid_argument("TruncationPolicy: depth must be >= 1");
    }

    /// Worst-case change of d_s caused by the truncation.
    double truncation_bound(int n_cells) const {
        double p = 1.0;
        for (int i = 0; i < depth; ++i) p /= 10.0;
        return (static_cast<double>(n_cells) - 1.0) / static_cast<double>(n_cells) * p;
    }
};

/// Hamming distance d_e between two configurations; exact integer in [0, N].
inline int config_distance(const Configuration& e1, const Configuration& e2) {
    if (e1.n_cells() != e2.n_cells())
        throw std::invalid_argument("config_distance: dimension mismatch");
    return std::popcount(e1.index() ^ e2.index());
}

/// d_s(S, S') = 9/N * sum_k |S^k - S'^k| / 10^k, truncated at trunc.depth
/// terms. The sum is accumulated from the smallest term upward.
inline double strategy_distance(const Strategy& s1, const Strategy& s2,
                                const TruncationPolicy& trunc = {}) {
    if (s1.n_cells() != s2.n_cells())
        throw std::invalid_argument("strategy_distance: dimension mismatch");
    const int n = s1.n_cells();
    std::vector<int> diffs(static_cast<std::size_t>(trunc.depth));
    Strategy::Stream a = s1.stream();
    Strategy::Stream b = s2.stream();
    for (int k = 0; k < trunc.depth; ++k) diffs[static_cast<std::size_t>(k)] = std::abs(a.next() - b.next());
    double acc = 0.0;
    double scale = 1.0;
    for (int i = 0; i < trunc.depth; ++i) scale /= 10.0;  // 10^-depth
    for (int k = trunc.depth - 1; k >= 0; --k) {
        acc += diffs[static_cast<std::size_t>(k)] * scale;
        scale *= 10.0;
    }
    return 9.0 / static_cast<double>(n) * acc;
}

/// d((S,E); (S',E')) = d_e(E,E') + d_s(S,S').
///
/// d_e is an integer and d_s lies in [0, 1), so the integer part of the
/// mathematical distance is exactly d_e and its fractional part is exactly
/// d_s; use the two components when a test needs those parts unpolluted by
/// the final floating-point addition.
inline double phase_distance(const PhasePoint& p1, const PhasePoint& p2,
                             const TruncationPolicy& trunc = {}) {
    if (p1.config.n_cells() != p2.config.n_cells())
        throw std::invalid_argument("phase_distance: dimension mismatch");
    return static_cast<double>(config_distance(p1.config, p2.config)) +
           strategy_distance(p1.strategy, p2.strategy, trunc);
}

}  // namespace chaoticnn
