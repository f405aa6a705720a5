#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pacer/money.hpp"

namespace pacer {

// ---------------------------------------------------------------------------
// Slot clock
// ---------------------------------------------------------------------------

// A day is a fixed sequence of slots with configurable lengths. Slot indices
// are 0-based; the clock only moves forward, one slot at a time.
class SlotClock {
public:
    // Equal-length split of the horizon; any remainder seconds are spread
    // over the leading slots so lengths always sum to the horizon exactly.
    explicit SlotClock(int num_slots, std::int64_t horizon_seconds = 86'400);
    explicit SlotClock(std::vector<std::int64_t> slot_lengths);

    int num_slots() const { return static_cast<int>(lengths_.size()); }
    int current_slot() const { return current_; }
    bool day_done() const { return current_ >= num_slots(); }
    std::int64_t length(int slot) const;
    // Sum of L(m) for m >= slot.
    std::int64_t remaining_length_from(int slot) const;
    std::int64_t horizon() const;
    void advance();

private:
    std::vector<std::int64_t> lengths_;
    int current_ = 0;
};

// ---------------------------------------------------------------------------
// Campaign configuration
// ---------------------------------------------------------------------------

enum class CampaignKind { FlatCpm, DynamicCpm };
enum class GoalKind { Cpc, Cpa, Ctr, Ar };
enum class PacingStrategy { Uniform, Performance, Blended };
enum class EventKind { Click, Conversion };

// Which feedback event the campaign's goal counts.
inline EventKind goal_event_kind(GoalKind goal) {
    return (goal == GoalKind::Cpc || goal == GoalKind::Ctr) ? EventKind::Click
                                                            : EventKind::Conversion;
}

struct CampaignConfig {
    std::string name = "campaign";
    CampaignKind kind = CampaignKind::FlatCpm;
    Money daily_budget = 0;            // B
    Money fixed_bid = 0;               // c*, flat campaigns only
    GoalKind goal = GoalKind::Ctr;
    Money goal_value = 0;              // G, dCPM campaigns only
    Money ecpm_cap = kNoEcpmCap;       // M, cost per mille impressions
    Money bid_cap = 0;                 // C, exchange bid price cap
    double region_low = 0.3;           // beta1
    double region_high = 0.8;          // beta2
    PacingStrategy strategy = PacingStrategy::Uniform;
    double blend_weight = 0.5;         // blended strategy: weight on performance
    Money interval_tolerance = 0;      // delta_t, scalar default
    std::vector<Money> interval_tolerance_per_slot;  // optional per-slot override
    Money daily_tolerance = 0;         // epsilon
    double shading_percentile = 0.02;
    double min_pacing_rate = 0.001;
    double rate_growth_factor = 2.0;   // zero-spend recovery multiplier
    int lookback_days = 1;             // d
    double critical_value = 1.96;      // gamma

    Money interval_tolerance_for(int slot) const;
    // Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

// ---------------------------------------------------------------------------
// Requests and auction outcomes
// ---------------------------------------------------------------------------

// One root-to-leaf path in a feature hierarchy, as integer node ids.
struct FeaturePath {
    std::array<std::uint32_t, 7> ids{};
    std::uint8_t depth = 0;

    void push(std::uint32_t id) { ids[depth++] = id; }
    const std::uint32_t* begin() const { return ids.data(); }
    const std::uint32_t* end() const { return ids.data() + depth; }
    std::size_t size() const { return depth; }
};

// One bidding opportunity as seen by decision code. The simulator's hidden
// true response probability deliberately lives outside this struct.
struct AdRequest {
    std::uint64_t id = 0;
    std::int32_t slot = 0;
    FeaturePath audience;
    FeaturePath publisher;
    FeaturePath advertiser;
};

struct AuctionOutcome {
    bool won = false;
    Money clearing_price = 0;  // second price paid; 0 when lost
    Money submitted_bid = 0;
};

// ---------------------------------------------------------------------------
// Spend ledger
// ---------------------------------------------------------------------------

struct SlotTotals {
    Money planned = 0;
    Money spend = 0;
    std::int64_t requests = 0;
    std::int64_t bids = 0;
    std::int64_t impressions = 0;
    std::int64_t clicks = 0;
    std::int64_t conversions = 0;
};

struct SlotSummary {
    int slot = 0;
    Money planned = 0;
    Money spend = 0;
    std::int64_t requests = 0;
    std::int64_t bids = 0;
    std::int64_t impressions = 0;
    std::int64_t clicks = 0;
    std::int64_t conversions = 0;
    double win_rate = 0.0;  // impressions / bids, 0 when bids == 0
    bool no_data = false;   // bids == 0 this slot
};

// Per-campaign spend and count ledger for one day. All sums are exact
// integer micros. Writes go to the open slot only; closing a slot freezes
// it and advances the campaign clock.
class SpendLedger {
public:
    explicit SpendLedger(int num_slots);

    int num_slots() const { return static_cast<int>(slots_.size()); }
    int open_slot() const { return open_; }
    bool day_done() const { return open_ >= num_slots(); }

    void set_planned(int slot, Money budget);
    void record_request(int slot);
    void record_auction(int slot, const AuctionOutcome& outcome);
    void record_event(int slot, EventKind kind);
    SlotSummary close_slot(SlotClock& clock);

    Money total_spend() const { return total_spend_; }
    std::int64_t total_impressions() const { return total_impressions_; }
    Money slot_spend(int slot) const;
    const SlotTotals& totals(int slot) const;

private:
    void check_open(int slot) const;

    std::vector<SlotTotals> slots_;
    Money total_spend_ = 0;
    std::int64_t total_impressions_ = 0;
    int open_ = 0;
};

}  // namespace pacer
