#include "pacer/domain.hpp"

#include <numeric>
#include <stdexcept>

namespace pacer {

SlotClock::SlotClock(int num_slots, std::int64_t horizon_seconds) {
    if (num_slots <= 0) throw std::invalid_argument("SlotClock: num_slots must be positive");
    if (horizon_seconds < num_slots)
        throw std::invalid_argument("SlotClock: horizon shorter than one second per slot");
    const std::int64_t base = horizon_seconds / num_slots;
    const std::int64_t extra = horizon_seconds % num_slots;
    lengths_.assign(num_slots, base);
    for (std::int64_t i = 0; i < extra; ++i) lengths_[i] += 1;
}

SlotClock::SlotClock(std::vector<std::int64_t> slot_lengths) : lengths_(std::move(slot_lengths)) {
    if (lengths_.empty()) throw std::invalid_argument("SlotClock: no slots");
    for (auto len : lengths_)
        if (len <= 0) throw std::invalid_argument("SlotClock: slot lengths must be positive");
}

std::int64_t SlotClock::length(int slot) const {
    if (slot < 0 || slot >= num_slots()) throw std::out_of_range("SlotClock: slot index");
    return lengths_[slot];
}

std::int64_t SlotClock::remaining_length_from(int slot) const {
    if (slot < 0 || slot >= num_slots()) throw std::out_of_range("SlotClock: slot index");
    return std::accumulate(lengths_.begin() + slot, lengths_.end(), std::int64_t{0});
}

std::int64_t SlotClock::horizon() const {
    return std::accumulate(lengths_.begin(), lengths_.end(), std::int64_t{0});
}

void SlotClock::advance() {
    if (day_done()) throw std::logic_error("SlotClock: advancing past the last slot");
    ++current_;
}

Money CampaignConfig::interval_tolerance_for(int slot) const {
    if (!interval_tolerance_per_slot.empty()) {
        if (slot < 0 || slot >= static_cast<int>(interval_tolerance_per_slot.size()))
            throw std::out_of_range("CampaignConfig: interval tolerance slot index");
        return interval_tolerance_per_slot[slot];
    }
    return interval_tolerance;
}

void CampaignConfig::validate() const {
    if (daily_budget < 0) throw std::invalid_argument(name + ": daily_budget must be >= 0");
    if (!(region_low >= 0.0 && region_low <= region_high && region_high <= 1.0))
        throw std::invalid_argument(name + ": need 0 <= beta1 <= beta2 <= 1");
    if (!(min_pacing_rate > 0.0 && min_pacing_rate <= 1.0))
        throw std::invalid_argument(name + ": need 0 < min_pacing_rate <= 1");
    if (kind == CampaignKind::FlatCpm) {
        if (fixed_bid <= 0) throw std::invalid_argument(name + ": flat campaign needs fixed_bid > 0");
        if (bid_cap < fixed_bid)
            throw std::invalid_argument(name + ": bid_cap must cover the fixed bid");
    } else {
        if (goal_value <= 0) throw std::invalid_argument(name + ": dCPM campaign needs goal_value > 0");
        if (bid_cap <= 0) throw std::invalid_argument(name + ": dCPM campaign needs bid_cap > 0");
    }
    if (!(blend_weight >= 0.0 && blend_weight <= 1.0))
        throw std::invalid_argument(name + ": blend_weight must be in [0,1]");
    if (!(shading_percentile > 0.0 && shading_percentile <= 1.0))
        throw std::invalid_argument(name + ": shading_percentile must be in (0,1]");
    if (rate_growth_factor <= 1.0)
        throw std::invalid_argument(name + ": growth_factor must exceed 1");
    if (lookback_days < 1) throw std::invalid_argument(name + ": lookback_days must be >= 1");
    if (critical_value <= 0.0) throw std::invalid_argument(name + ": critical_value must be > 0");
    if (interval_tolerance < 0 || daily_tolerance < 0)
        throw std::invalid_argument(name + ": tolerances must be >= 0");
    for (Money tol : interval_tolerance_per_slot)
        if (tol < 0) throw std::invalid_argument(name + ": tolerances must be >= 0");
}

SpendLedger::SpendLedger(int num_slots) {
    if (num_slots <= 0) throw std::invalid_argument("SpendLedger: num_slots must be positive");
    slots_.resize(num_slots);
}

void SpendLedger::check_open(int slot) const {
    if (slot != open_ || day_done())
        throw std::logic_error("SpendLedger: slot " + std::to_string(slot) + " is not open");
}

void SpendLedger::set_planned(int slot, Money budget) {
    if (slot < open_ || slot >= num_slots())
        throw std::logic_error("SpendLedger: cannot plan a closed slot");
    if (budget < 0) throw std::invalid_argument("SpendLedger: planned budget must be >= 0");
    slots_[slot].planned = budget;
}

void SpendLedger::record_request(int slot) {
    check_open(slot);
    ++slots_[slot].requests;
}

void SpendLedger::record_auction(int slot, const AuctionOutcome& outcome) {
    check_open(slot);
    if (outcome.submitted_bid < 0) throw std::invalid_argument("SpendLedger: negative bid");
    if (outcome.won) {
        if (outcome.clearing_price < 0 || outcome.clearing_price > outcome.submitted_bid)
            throw std::invalid_argument("SpendLedger: clearing price out of range");
    } else if (outcome.clearing_price != 0) {
        throw std::invalid_argument("SpendLedger: losing outcome must not pay");
    }
    auto& t = slots_[slot];
    ++t.bids;
    if (outcome.won) {
        ++t.impressions;
        ++total_impressions_;
        t.spend += outcome.clearing_price;
        total_spend_ += outcome.clearing_price;
    }
}

void SpendLedger::record_event(int slot, EventKind kind) {
    check_open(slot);
    if (kind == EventKind::Click) ++slots_[slot].clicks;
    else ++slots_[slot].conversions;
}

SlotSummary SpendLedger::close_slot(SlotClock& clock) {
    if (day_done()) throw std::logic_error("SpendLedger: no open slot to close");
    if (clock.current_slot() != open_)
        throw std::logic_error("SpendLedger: clock out of step with ledger");
    const auto& t = slots_[open_];
    SlotSummary s;
    s.slot = open_;
    s.planned = t.planned;
    s.spend = t.spend;
    s.requests = t.requests;
    s.bids = t.bids;
    s.impressions = t.impressions;
    s.clicks = t.clicks;
    s.conversions = t.conversions;
    s.no_data = t.bids == 0;
    s.win_rate = s.no_data ? 0.0
                           : static_cast<double>(t.impressions) / static_cast<double>(t.bids);
    ++open_;
    clock.advance();
    return s;
}

Money SpendLedger::slot_spend(int slot) const { return totals(slot).spend; }

const SlotTotals& SpendLedger::totals(int slot) const {
    if (slot < 0 || slot >= num_slots()) throw std::out_of_range("SpendLedger: slot index");
    return slots_[slot];
}

}  // namespace pacer
