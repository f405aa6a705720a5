#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pacer/domain.hpp"
#include "pacer/pacing.hpp"

namespace pacer {

// Histogram of predicted CTR/AR values over [0,1]. Predicted rates for
// conversion goals cluster near zero, so the default layout is log-spaced
// below the split point and linear above it.
class QualityHistogram {
public:
    explicit QualityHistogram(std::vector<double> edges);
    static QualityHistogram log_linear(int bins = 1000, double log_floor = 1e-6,
                                       double split = 0.01);

    void add(double predicted_rate);
    // Fold another histogram with identical edges into this one.
    void add_counts(const QualityHistogram& other);
    void clear();

    int bins() const { return static_cast<int>(counts_.size()); }
    std::int64_t total_count() const { return total_; }
    const std::vector<double>& edges() const { return edges_; }
    const std::vector<std::int64_t>& counts() const { return counts_; }

    // CSV rows "bin_low,bin_high,count".
    void dump_csv(std::ostream& out) const;

private:
    std::vector<double> edges_;        // bins()+1 entries, strictly increasing, spans [0,1]
    std::vector<std::int64_t> counts_;
    std::int64_t total_ = 0;
};

// Threshold that keeps roughly `required_requests` requests above it:
// the bin edge minimizing |tail count above edge - required|, ties broken
// toward the larger edge. required >= total accepts everything (lowest
// edge); required == 0 accepts nothing (threshold 1.0).
double solve_threshold(const QualityHistogram& hist, std::int64_t required_requests);

// Online mean/variance of the per-slot thresholds (population variance).
struct ThresholdStats {
    double mean = 0.0;
    double variance = 0.0;
    std::int64_t count = 0;
    int lookback_days = 1;      // d
    double critical_value = 1.96;  // gamma

    void update(double tau);
};

struct ConfidenceBounds {
    double lower = 0.0;
    double upper = 1.0;
};

// mean +/- gamma * sigma / sqrt(d), clamped to [0,1]. Requires at least one
// observation.
ConfidenceBounds confidence_bounds(const ThresholdStats& stats);

// Demand sizing chain for one slot: impressions needed to spend the slot
// budget at the fixed price, bids needed to win them, requests needed to
// place those bids at the current pacing rate. All rounded up.
struct DemandPlan {
    std::int64_t impressions = 0;
    std::int64_t bids = 0;
    std::int64_t requests = 0;
};

DemandPlan required_requests(Money target_spend, Money fixed_bid, double win_rate,
                             PacingRate pacing);

struct FlatDecision {
    enum class Kind { Bid, Drop, Probabilistic };
    Kind kind = Kind::Drop;
    Money price = 0;          // Bid only
    double probability = 0.0;  // Probabilistic only
};

// Above the band: bid the fixed price. Below: drop. Inside: select at
// random with probability equal to the pacing rate.
FlatDecision decide_flat(double predicted_rate, const ConfidenceBounds& bounds, PacingRate pacing,
                         Money fixed_bid);

}  // namespace pacer
