#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pacer/domain.hpp"
#include "pacer/pacing.hpp"

namespace pacer {

enum class Region { Safe, Critical, Danger };
enum class UnderdeliveryCause { None, TargetingLimited, PriceLimited };

struct PacingRegion {
    Region region = Region::Critical;
    UnderdeliveryCause cause = UnderdeliveryCause::None;
};

// Pacing rate vs (beta1, beta2). A targeting-limited campaign never counts
// as Safe: no price action can help it, so it is held at Critical.
PacingRegion classify_region(PacingRate pacing, const CampaignConfig& cfg, bool targeting_limited);

// u_i = predicted rate x goal value, floored to micros.
Money base_bid(double predicted_rate, Money goal_value);

// Histogram of theta = clearing_price / submitted_bid over converted
// impressions, kept as a sliding window. theta* is the configured bottom
// percentile; with too few samples shading stays off (theta* = 1).
class ShadingStats {
public:
    explicit ShadingStats(double percentile = 0.02, std::size_t window = 10'000,
                          std::size_t min_samples = 50);

    void record_win(const AuctionOutcome& outcome, bool converted);
    double theta_star() const;
    std::size_t sample_count() const;

    // Fixed 100-bin histogram of the current theta samples, CSV rows
    // "bin_low,bin_high,count".
    void dump_csv(std::ostream& out) const;

private:
    std::vector<double> samples_;  // ring buffer
    std::size_t next_ = 0;
    bool full_ = false;
    double percentile_;
    std::size_t window_;
    std::size_t min_samples_;
};

// Historical average winning clearing price c*, exponentially smoothed with
// a one-day half-life so it tracks slow market drift.
class CostAverage {
public:
    explicit CostAverage(int slots_per_halflife);

    void update_slot(Money slot_mean_clearing, std::int64_t wins);
    bool has_data() const { return any_; }
    Money value() const;

private:
    double avg_micros_ = 0.0;
    bool any_ = false;
    double alpha_;
};

// Danger-region boost, linear in the pacing rate: 1 at beta2, C/c* at 1.
double boost_factor(PacingRate pacing, const CampaignConfig& cfg, Money average_cost);

// Safe: theta* x u. Critical: u. Danger: rho x u. Clamped to [0, C]; a
// zero bid means no bid is submitted.
Money compute_bid(const PacingRegion& region, Money base, double theta_star, double boost,
                  const CampaignConfig& cfg);

}  // namespace pacer
