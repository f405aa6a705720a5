#pragma once

#include <cstdint>
#include <vector>

#include "pacer/domain.hpp"
#include "pacer/rng.hpp"

namespace pacer {

enum class GuardAction { Continue, PauseUntilNextSlot, StopCampaign, SuppressBid };

// Hard daily stop: once total spend reaches the daily budget the campaign
// is done for the day.
GuardAction check_daily(Money total_spend, Money daily_budget);

// Interval pause: strictly exceeding the slot plan plus tolerance pauses
// bidding until the next slot boundary.
GuardAction check_interval(Money slot_spend, Money planned, Money tolerance);

// eCPM cap: suppress bidding while realized cost per mille impressions
// exceeds the cap. Undefined before the first impression, so it continues.
GuardAction check_ecpm(Money cumulative_cost, std::int64_t cumulative_impressions, Money cap);

// Contextual epsilon-greedy exploration for campaigns without enough
// feedback to trust the regular model.
struct ColdStartPolicy {
    double epsilon = 0.0;
    std::vector<std::uint32_t> recommended_sites;
    std::vector<std::uint32_t> recommended_segments;
    std::int64_t maturity_impressions = 100'000;
    std::int64_t maturity_events = 50;
    Money exploration_bid = 0;
    double recommended_boost = 1.5;
};

struct CampaignMaturity {
    std::int64_t impressions = 0;
    std::int64_t events = 0;
};

struct ColdStartDecision {
    enum class Kind { DeferToModel, ExploreBid, Skip };
    Kind kind = Kind::DeferToModel;
    Money price = 0;
};

bool is_mature(const ColdStartPolicy& policy, const CampaignMaturity& maturity);

// Mature campaigns defer to the model. Immature requests inside a
// recommended publisher or audience group explore with a boosted bid;
// the rest explore with the default bid at a rate that decays linearly
// to zero as the campaign approaches maturity.
ColdStartDecision cold_start_decide(const ColdStartPolicy& policy, const AdRequest& request,
                                    const CampaignMaturity& maturity, SplitMix64& stream);

}  // namespace pacer
