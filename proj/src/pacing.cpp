#include "pacer/pacing.hpp"

#include <cmath>
#include <stdexcept>

namespace pacer {

PerformancePdf::PerformancePdf(std::vector<double> weights) : p_(std::move(weights)) {
    if (p_.empty()) throw std::invalid_argument("PerformancePdf: empty profile");
    double sum = 0.0;
    for (double w : p_) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("PerformancePdf: weights must be finite and >= 0");
        sum += w;
    }
    if (sum <= 0.0) throw std::invalid_argument("PerformancePdf: all-zero profile");
    for (double& w : p_) w /= sum;
}

PerformancePdf PerformancePdf::uniform(int slots) {
    return PerformancePdf(std::vector<double>(slots, 1.0));
}

namespace {

Money remaining_budget(Money daily_budget, const SpendLedger& ledger) {
    return daily_budget - ledger.total_spend();
}

void check_next_slot(const SlotClock& clock, int next_slot) {
    if (next_slot < 0 || next_slot >= clock.num_slots())
        throw std::out_of_range("next_budget: no such slot");
}

}  // namespace

Money uniform_next_budget(Money daily_budget, const SpendLedger& ledger, const SlotClock& clock,
                          int next_slot) {
    check_next_slot(clock, next_slot);
    const Money remaining = remaining_budget(daily_budget, ledger);
    if (remaining <= 0) return 0;
    const auto len = clock.length(next_slot);
    const auto total = clock.remaining_length_from(next_slot);
    const auto scaled = static_cast<__int128>(remaining) * len;
    return static_cast<Money>(scaled / total);
}

Money performance_next_budget(Money daily_budget, const SpendLedger& ledger,
                              const SlotClock& clock, const PerformancePdf& pdf, int next_slot) {
    check_next_slot(clock, next_slot);
    if (pdf.size() != clock.num_slots())
        throw std::invalid_argument("performance_next_budget: pdf length != slot count");
    const Money remaining = remaining_budget(daily_budget, ledger);
    if (remaining <= 0) return 0;
    long double mass = 0.0L;
    for (int m = next_slot; m < clock.num_slots(); ++m)
        mass += static_cast<long double>(pdf.at(m)) * static_cast<long double>(clock.length(m));
    if (mass <= 0.0L) return uniform_next_budget(daily_budget, ledger, clock, next_slot);
    const long double share = static_cast<long double>(pdf.at(next_slot)) *
                              static_cast<long double>(clock.length(next_slot)) / mass;
    auto b = static_cast<Money>(std::floor(static_cast<long double>(remaining) * share));
    if (b < 0) b = 0;
    if (b > remaining) b = remaining;
    return b;
}

Money blended_next_budget(Money uniform_budget, Money performance_budget, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0))
        throw std::invalid_argument("blended_next_budget: weight must be in [0,1]");
    const long double mix = weight * static_cast<long double>(performance_budget) +
                            (1.0L - weight) * static_cast<long double>(uniform_budget);
    return static_cast<Money>(std::floor(mix));
}

PacingRate update_pacing_rate(PacingRate prev, Money next_budget, Money prev_spend,
                              const RatioForecast& forecast, const CampaignConfig& cfg) {
    if (prev_spend <= 0) return clamp_rate(prev.value * cfg.rate_growth_factor, cfg);
    const double spend_factor =
        static_cast<double>(next_budget) / static_cast<double>(prev_spend);
    return clamp_rate(prev.value * spend_factor * forecast.reqs_ratio * forecast.win_rate_ratio,
                      cfg);
}

LevelForecast forecast_levels(std::span<const SlotSummary> history, int slots_per_day,
                              int target_slot) {
    LevelForecast out;
    if (slots_per_day <= 0 || target_slot < 0 || target_slot >= slots_per_day) return out;

    const auto n = static_cast<int>(history.size());
    const int full_days = n / slots_per_day;

    double req_sum = 0.0;
    double bid_sum = 0.0;
    int req_n = 0;
    double win_sum = 0.0;
    int win_n = 0;
    auto absorb = [&](const SlotSummary& s) {
        req_sum += static_cast<double>(s.requests);
        bid_sum += static_cast<double>(s.bids);
        ++req_n;
        if (!s.no_data) {
            win_sum += s.win_rate;
            ++win_n;
        }
    };
    if (full_days >= 1) {
        for (int d = 0; d < full_days; ++d) absorb(history[d * slots_per_day + target_slot]);
    } else {
        // No completed day yet: trailing moving average over up to the last
        // three closed slots.
        const int take = std::min(n, 3);
        for (int i = n - take; i < n; ++i) absorb(history[i]);
    }
    if (req_n > 0) {
        out.requests = req_sum / req_n;
        out.requests_no_data = !(out.requests > 0.0);
        out.bids = bid_sum / req_n;
        out.bids_no_data = !(out.bids > 0.0);
    }
    if (win_n > 0) {
        out.win_rate = win_sum / win_n;
        out.win_rate_no_data = !(out.win_rate > 0.0);
    }
    return out;
}

RatioForecast forecast_ratios(std::span<const SlotSummary> history, int slots_per_day,
                              int next_slot) {
    RatioForecast out;
    if (history.empty()) return out;
    const auto level = forecast_levels(history, slots_per_day, next_slot);
    const auto& current = history.back();

    if (!level.requests_no_data && current.requests > 0) {
        const double r = static_cast<double>(current.requests) / level.requests;
        if (std::isfinite(r) && r > 0.0) out.reqs_ratio = r;
    }
    if (!level.win_rate_no_data && !current.no_data && current.win_rate > 0.0) {
        const double r = current.win_rate / level.win_rate;
        if (std::isfinite(r) && r > 0.0) out.win_rate_ratio = r;
    }
    return out;
}

PerformancePdf learn_performance_pdf(std::span<const SlotSummary> history, int slots_per_day,
                                     GoalKind goal) {
    if (slots_per_day <= 0) throw std::invalid_argument("learn_performance_pdf: no slots");
    const EventKind kind = goal_event_kind(goal);
    std::vector<double> proxy(slots_per_day, 0.0);
    std::vector<std::int64_t> events(slots_per_day, 0);
    for (const auto& s : history) {
        const int slot = s.slot % slots_per_day;
        const std::int64_t n = kind == EventKind::Click ? s.clicks : s.conversions;
        events[slot] += n;
        proxy[slot] += static_cast<double>(n) /
                       static_cast<double>(std::max<Money>(s.spend, 1));
    }
    double total = 0.0;
    for (double p : proxy) total += p;
    if (total <= 0.0) return PerformancePdf::uniform(slots_per_day);

    // Event slots carry unit mass split by their rate proxy; event-free
    // slots get the 1e-3 floor before normalization.
    std::vector<double> weights(slots_per_day);
    for (int t = 0; t < slots_per_day; ++t)
        weights[t] = events[t] > 0 ? proxy[t] / total : 1e-3;
    return PerformancePdf(std::move(weights));
}

PerformancePdf synthetic_bimodal_pdf(int slots) {
    if (slots <= 0) throw std::invalid_argument("synthetic_bimodal_pdf: no slots");
    std::vector<double> w(slots);
    const double sigma = static_cast<double>(slots) / 12.0;
    const double c1 = 0.30 * slots;
    const double c2 = 0.75 * slots;
    for (int t = 0; t < slots; ++t) {
        auto bump = [&](double center, double weight) {
            const double z = (t - center) / sigma;
            return weight * std::exp(-0.5 * z * z);
        };
        w[t] = 0.05 + bump(c1, 0.9) + bump(c2, 1.1);
    }
    return PerformancePdf(std::move(w));
}

}  // namespace pacer
