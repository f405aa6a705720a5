#include "pacer/dcpm_bidding.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pacer {

PacingRegion classify_region(PacingRate pacing, const CampaignConfig& cfg,
                             bool targeting_limited) {
    const double rate = pacing.value;
    PacingRegion out;
    if (rate > cfg.region_high) {
        out.region = Region::Danger;
        out.cause = targeting_limited ? UnderdeliveryCause::TargetingLimited
                                      : UnderdeliveryCause::PriceLimited;
    } else if (rate > cfg.region_low) {
        out.region = Region::Critical;
        out.cause = targeting_limited ? UnderdeliveryCause::TargetingLimited
                                      : UnderdeliveryCause::None;
    } else if (targeting_limited) {
        out.region = Region::Critical;
        out.cause = UnderdeliveryCause::TargetingLimited;
    } else {
        out.region = Region::Safe;
        out.cause = UnderdeliveryCause::None;
    }
    return out;
}

Money base_bid(double predicted_rate, Money goal_value) {
    if (goal_value <= 0) throw std::invalid_argument("base_bid: goal value must be > 0");
    if (predicted_rate <= 0.0) return 0;
    return static_cast<Money>(std::floor(predicted_rate * static_cast<double>(goal_value)));
}

ShadingStats::ShadingStats(double percentile, std::size_t window, std::size_t min_samples)
    : percentile_(percentile), window_(window), min_samples_(min_samples) {
    if (!(percentile > 0.0 && percentile <= 1.0))
        throw std::invalid_argument("ShadingStats: percentile must be in (0,1]");
    if (window == 0) throw std::invalid_argument("ShadingStats: window must be positive");
    samples_.reserve(window);
}

void ShadingStats::record_win(const AuctionOutcome& outcome, bool converted) {
    if (!outcome.won) throw std::logic_error("ShadingStats: outcome was not a win");
    if (outcome.submitted_bid <= 0)
        throw std::invalid_argument("ShadingStats: zero submitted bid");
    if (!converted) return;
    const double theta = static_cast<double>(outcome.clearing_price) /
                         static_cast<double>(outcome.submitted_bid);
    if (samples_.size() < window_ && !full_) {
        samples_.push_back(theta);
        if (samples_.size() == window_) full_ = true;
    } else {
        samples_[next_] = theta;
        next_ = (next_ + 1) % window_;
    }
}

std::size_t ShadingStats::sample_count() const { return samples_.size(); }

double ShadingStats::theta_star() const {
    if (samples_.size() < min_samples_) return 1.0;
    std::vector<double> sorted(samples_);
    std::sort(sorted.begin(), sorted.end());
    // Nearest-rank percentile: rank = ceil(p * n), 1-based.
    auto rank = static_cast<std::size_t>(
        std::ceil(percentile_ * static_cast<double>(sorted.size())));
    if (rank < 1) rank = 1;
    if (rank > sorted.size()) rank = sorted.size();
    return sorted[rank - 1];
}

void ShadingStats::dump_csv(std::ostream& out) const {
    constexpr int kBins = 100;
    std::vector<std::int64_t> counts(kBins, 0);
    for (double theta : samples_) {
        auto bin = static_cast<int>(theta * kBins);
        if (bin >= kBins) bin = kBins - 1;
        if (bin < 0) bin = 0;
        ++counts[bin];
    }
    out << "bin_low,bin_high,count\n";
    for (int i = 0; i < kBins; ++i)
        out << static_cast<double>(i) / kBins << ',' << static_cast<double>(i + 1) / kBins << ','
            << counts[i] << '\n';
}

CostAverage::CostAverage(int slots_per_halflife) {
    if (slots_per_halflife < 1)
        throw std::invalid_argument("CostAverage: half-life must be >= 1 slot");
    alpha_ = 1.0 - std::pow(0.5, 1.0 / static_cast<double>(slots_per_halflife));
}

void CostAverage::update_slot(Money slot_mean_clearing, std::int64_t wins) {
    if (wins <= 0) return;
    if (slot_mean_clearing < 0) throw std::invalid_argument("CostAverage: negative price");
    const auto x = static_cast<double>(slot_mean_clearing);
    if (!any_) {
        avg_micros_ = x;
        any_ = true;
    } else {
        avg_micros_ += alpha_ * (x - avg_micros_);
    }
}

Money CostAverage::value() const {
    if (!any_) throw std::logic_error("CostAverage: no cost history");
    auto v = static_cast<Money>(std::llround(avg_micros_));
    return v > 0 ? v : 1;
}

double boost_factor(PacingRate pacing, const CampaignConfig& cfg, Money average_cost) {
    if (average_cost <= 0) throw std::invalid_argument("no cost history");
    if (pacing.value < cfg.region_high)
        throw std::logic_error("boost_factor: pacing rate below beta2");
    if (cfg.bid_cap < average_cost)
        throw std::invalid_argument("boost_factor: bid cap below average cost");
    if (cfg.region_high >= 1.0) return 1.0;
    const double cap_ratio =
        static_cast<double>(cfg.bid_cap) / static_cast<double>(average_cost);
    const double progress = (pacing.value - cfg.region_high) / (1.0 - cfg.region_high);
    return 1.0 + (cap_ratio - 1.0) * progress;
}

Money compute_bid(const PacingRegion& region, Money base, double theta_star, double boost,
                  const CampaignConfig& cfg) {
    if (base < 0) throw std::invalid_argument("compute_bid: negative base bid");
    Money bid = 0;
    switch (region.region) {
        case Region::Safe:
            bid = static_cast<Money>(std::floor(theta_star * static_cast<double>(base)));
            break;
        case Region::Critical:
            bid = base;
            break;
        case Region::Danger:
            bid = static_cast<Money>(std::floor(boost * static_cast<double>(base)));
            break;
    }
    if (bid < 0) bid = 0;
    if (bid > cfg.bid_cap) bid = cfg.bid_cap;
    return bid;
}

}  // namespace pacer
