// Test-only reference implementations, kept deliberately naive and separate
// from the library code they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace oracle {

struct MeanVar {
    double mean = 0.0;
    double variance = 0.0;  // population variance
};

// Two-pass batch mean and population variance in long double.
inline MeanVar batch_mean_variance(std::span<const double> xs) {
    MeanVar out;
    if (xs.empty()) return out;
    long double sum = 0.0L;
    for (double x : xs) sum += x;
    const long double mean = sum / static_cast<long double>(xs.size());
    long double ss = 0.0L;
    for (double x : xs) {
        const long double d = x - mean;
        ss += d * d;
    }
    out.mean = static_cast<double>(mean);
    out.variance = static_cast<double>(ss / static_cast<long double>(xs.size()));
    return out;
}

// Exhaustive scan over every bin edge for the tail-count threshold rule:
// minimize |tail(edge) - required|, ties toward the larger edge, with the
// boundary overrides (required >= total -> lowest edge, required == 0 -> 1).
inline double exhaustive_threshold(const std::vector<double>& edges,
                                   const std::vector<std::int64_t>& counts,
                                   std::int64_t required) {
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    if (required == 0) return 1.0;
    if (required >= total) return edges.front();
    double best_edge = edges.front();
    std::int64_t best_gap = -1;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::int64_t tail = 0;
        for (std::size_t j = i; j < counts.size(); ++j) tail += counts[j];
        const std::int64_t gap = std::llabs(tail - required);
        if (best_gap < 0 || gap < best_gap || (gap == best_gap && edges[i] > best_edge)) {
            best_gap = gap;
            best_edge = edges[i];
        }
    }
    return best_edge;
}

// Sort-based nearest-rank percentile (rank = ceil(p*n), 1-based).
inline double nearest_rank_percentile(std::vector<double> xs, double p) {
    std::sort(xs.begin(), xs.end());
    auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(xs.size())));
    if (rank < 1) rank = 1;
    if (rank > xs.size()) rank = xs.size();
    return xs[rank - 1];
}

// Second-price outcome given a known competing bid and floor.
struct AuctionRef {
    bool won = false;
    std::int64_t pay = 0;
};

inline AuctionRef second_price(std::int64_t bid, std::int64_t highest_competing,
                               std::int64_t floor) {
    const std::int64_t reserve = std::max(highest_competing, floor);
    if (bid > reserve) return {true, reserve};
    return {false, 0};
}

}  // namespace oracle
