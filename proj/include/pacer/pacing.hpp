#pragma once

#include <span>
#include <vector>

#include "pacer/domain.hpp"

namespace pacer {

// Fraction of eligible incoming requests the campaign bids on in a slot.
struct PacingRate {
    double value = 0.0;
};

inline PacingRate clamp_rate(double value, const CampaignConfig& cfg) {
    if (value < cfg.min_pacing_rate) value = cfg.min_pacing_rate;
    if (value > 1.0) value = 1.0;
    return PacingRate{value};
}

// Per-slot click/conversion probability profile. Normalized on construction
// so the probabilities sum to 1.
class PerformancePdf {
public:
    explicit PerformancePdf(std::vector<double> weights);
    static PerformancePdf uniform(int slots);

    int size() const { return static_cast<int>(p_.size()); }
    double at(int slot) const { return p_.at(slot); }
    const std::vector<double>& probabilities() const { return p_; }

private:
    std::vector<double> p_;
};

// Ratios of current-slot observations to next-slot predictions, the two
// correction factors of the pacing-rate recursion.
struct RatioForecast {
    double reqs_ratio = 1.0;      // reqs(t) / predicted reqs(t+1)
    double win_rate_ratio = 1.0;  // win_rate(t) / predicted win_rate(t+1)
};

// Predicted absolute levels for one slot, with no-data markers.
struct LevelForecast {
    double requests = 0.0;
    bool requests_no_data = true;
    double bids = 0.0;
    bool bids_no_data = true;
    double win_rate = 0.0;
    bool win_rate_no_data = true;
};

// Planned budget for `next_slot`: remaining budget scaled by the slot's
// share of the remaining day length. Money division floors; the final slot
// receives the full remainder, so planned budgets always exhaust the budget.
Money uniform_next_budget(Money daily_budget, const SpendLedger& ledger, const SlotClock& clock,
                          int next_slot);

// Remaining budget weighted by p(next) * L(next) over the remaining
// performance mass. Falls back to the uniform schedule when every remaining
// slot has zero probability.
Money performance_next_budget(Money daily_budget, const SpendLedger& ledger,
                              const SlotClock& clock, const PerformancePdf& pdf, int next_slot);

// weight * performance + (1 - weight) * uniform, floored to micros.
Money blended_next_budget(Money uniform_budget, Money performance_budget, double weight);

// pacing_rate(t+1) = pacing_rate(t) * b(t+1)/s(t) * reqs ratio * win-rate
// ratio, clamped to [min_pacing_rate, 1]. A zero-spend slot leaves the
// recursion undefined, so the rate instead grows by cfg.rate_growth_factor.
PacingRate update_pacing_rate(PacingRate prev, Money next_budget, Money prev_spend,
                              const RatioForecast& forecast, const CampaignConfig& cfg);

// Predict request volume and win rate for `target_slot` (index within the
// day). `history` is the chronological sequence of closed slots starting at
// day 0 slot 0, possibly spanning several days of `slots_per_day` slots.
// With at least one completed prior day, predicts by same-slot-of-prior-day
// average; otherwise by a trailing 3-slot moving average of the current day.
LevelForecast forecast_levels(std::span<const SlotSummary> history, int slots_per_day,
                              int target_slot);

// Ratios for the recursion; any no-data side yields the neutral 1.0.
RatioForecast forecast_ratios(std::span<const SlotSummary> history, int slots_per_day,
                              int next_slot);

// Per-slot performance profile learned from history: p_t proportional to
// goal events per unit spend in slot-of-day t. Slots without events receive
// a small floor mass (1e-3 before normalization) so they keep being
// explored; a history with no events at all yields the uniform profile.
PerformancePdf learn_performance_pdf(std::span<const SlotSummary> history, int slots_per_day,
                                     GoalKind goal);

// Default performance profile when no history is available: two smooth
// bumps over the day. Synthetic stand-in, not derived from any data.
PerformancePdf synthetic_bimodal_pdf(int slots);

}  // namespace pacer
