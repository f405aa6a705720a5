#include "pacer/guards.hpp"

#include <algorithm>

namespace pacer {

GuardAction check_daily(Money total_spend, Money daily_budget) {
    return total_spend >= daily_budget ? GuardAction::StopCampaign : GuardAction::Continue;
}

GuardAction check_interval(Money slot_spend, Money planned, Money tolerance) {
    return slot_spend > planned + tolerance ? GuardAction::PauseUntilNextSlot
                                            : GuardAction::Continue;
}

GuardAction check_ecpm(Money cumulative_cost, std::int64_t cumulative_impressions, Money cap) {
    if (cumulative_impressions < 1 || cap == kNoEcpmCap) return GuardAction::Continue;
    // eCPM > M  <=>  1000 * cost > M * impressions, kept in integers.
    const auto lhs = static_cast<__int128>(cumulative_cost) * 1000;
    const auto rhs = static_cast<__int128>(cap) * cumulative_impressions;
    return lhs > rhs ? GuardAction::SuppressBid : GuardAction::Continue;
}

bool is_mature(const ColdStartPolicy& policy, const CampaignMaturity& maturity) {
    return maturity.impressions >= policy.maturity_impressions ||
           maturity.events >= policy.maturity_events;
}

namespace {

bool path_intersects(const FeaturePath& path, const std::vector<std::uint32_t>& ids) {
    for (auto id : path)
        if (std::find(ids.begin(), ids.end(), id) != ids.end()) return true;
    return false;
}

}  // namespace

ColdStartDecision cold_start_decide(const ColdStartPolicy& policy, const AdRequest& request,
                                    const CampaignMaturity& maturity, SplitMix64& stream) {
    ColdStartDecision d;
    if (is_mature(policy, maturity)) return d;

    if (path_intersects(request.publisher, policy.recommended_sites) ||
        path_intersects(request.audience, policy.recommended_segments)) {
        d.kind = ColdStartDecision::Kind::ExploreBid;
        d.price = static_cast<Money>(static_cast<double>(policy.exploration_bid) *
                                     policy.recommended_boost);
        return d;
    }

    // Exploration decays linearly as the campaign accrues data.
    const double imp_frac = policy.maturity_impressions > 0
                                ? static_cast<double>(maturity.impressions) /
                                      static_cast<double>(policy.maturity_impressions)
                                : 1.0;
    const double event_frac = policy.maturity_events > 0
                                  ? static_cast<double>(maturity.events) /
                                        static_cast<double>(policy.maturity_events)
                                  : 1.0;
    const double progress = std::min(1.0, std::max(imp_frac, event_frac));
    const double epsilon = policy.epsilon * (1.0 - progress);
    if (epsilon > 0.0 && uniform01(stream) < epsilon) {
        d.kind = ColdStartDecision::Kind::ExploreBid;
        d.price = policy.exploration_bid;
    } else {
        d.kind = ColdStartDecision::Kind::Skip;
    }
    return d;
}

}  // namespace pacer
