#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <queue>
#include <map>
#include <string>
#include <vector>

#include "pacer/dcpm_bidding.hpp"
#include "pacer/domain.hpp"
#include "pacer/estimator.hpp"
#include "pacer/flat_selection.hpp"
#include "pacer/guards.hpp"
#include "pacer/pacing.hpp"
#include "pacer/rng.hpp"

namespace pacer {

// ---------------------------------------------------------------------------
// World primitives
// ---------------------------------------------------------------------------

struct TrafficProfile {
    std::int64_t base_volume = 0;
    std::vector<double> volume_multipliers;  // per slot
    std::vector<double> rate_means;          // per-slot mean true response rate
    double rate_sigma = 0.0;                 // lognormal dispersion of true rates
    int num_sites = 50;
    int num_segments = 16;
    int num_sections = 4;
    int num_buckets = 32;
    int num_creatives = 4;
    double site_quality_spread = 0.0;  // log-range of the per-site rate multiplier

    std::int64_t requests_in_slot(int slot) const;
    void validate(int slots) const;
};

// Highest competing bid, drawn log-normally per slot. Modeling only the
// maximum is enough for a second-price auction.
struct CompetitorModel {
    std::vector<double> log_location;  // per slot, log of micros
    std::vector<double> log_scale;     // per slot, > 0
    Money floor_price = 0;

    Money sample_highest_bid(int slot, SplitMix64& stream) const;
    // P(win) at this bid: the competing-bid CDF with continuity correction
    // for the integer rounding of sampled bids.
    double win_probability(int slot, Money bid) const;
    void validate(int slots) const;
};

struct GeneratedRequest {
    AdRequest request;
    double true_rate = 0.0;  // hidden from decision code
};

std::uint64_t make_request_id(int day, int slot, std::int64_t index);

// Deterministic slot traffic: identical (seed, day, slot) yields an
// identical request sequence regardless of anything else in the run.
std::vector<GeneratedRequest> generate_requests(int day, int slot, const TrafficProfile& profile,
                                                std::uint64_t seed);

// Second-price auction against one sampled competing bid. Ties lose; a win
// pays max(competing bid, floor).
AuctionOutcome run_auction(Money bid, const CompetitorModel& competitor, int slot,
                           SplitMix64& stream);

struct FeedbackEvent {
    std::uint64_t impression_id = 0;
    EventKind kind = EventKind::Click;
    std::int64_t deliver_at_global_slot = 0;  // day * slots_per_day + slot
};

// Event occurs with probability true_rate; delivery is delayed by a
// geometric number of slots with the given mean (0 = same slot).
std::optional<FeedbackEvent> sample_feedback(std::uint64_t impression_id,
                                             std::int64_t impression_global_slot,
                                             double true_rate, EventKind kind,
                                             double delay_mean_slots, SplitMix64& stream);

// ---------------------------------------------------------------------------
// Campaign wiring
// ---------------------------------------------------------------------------

struct WorldConfig {
    int slots_per_day = 96;
    std::vector<std::int64_t> slot_lengths_seconds;  // optional; default equal split of a day
    int days = 1;
    std::uint64_t seed = 0;
    TrafficProfile traffic;
    CompetitorModel competitor;
    double click_delay_mean_slots = 2.0;
    double conversion_delay_mean_slots = 8.0;

    int slots() const { return slots_per_day; }
    SlotClock make_clock() const;
    void validate() const;
};

enum class EstimatorKind { Hierarchical, NoisyOracle };

struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::NoisyOracle;
    double noise_sigma = 0.0;
    double calibration_bias = 1.0;
    std::int64_t prior_strength = 100;
};

// Threshold is the quality-filtered selection path; Random is the
// probability-matched baseline that bids on any request with probability
// equal to the pacing rate.
enum class SelectionMode { Threshold, Random };

struct CampaignSetup {
    CampaignConfig config;
    EstimatorConfig estimator;
    SelectionMode selection = SelectionMode::Threshold;
    std::optional<PerformancePdf> pdf;  // performance / blended strategies
    bool learn_pdf = false;             // refit the pdf from history at each day boundary
    double initial_win_rate_guess = 0.5;
    std::optional<ColdStartPolicy> cold_start;
};

struct GuardTrip {
    int day = 0;
    int slot = 0;
    std::string guard;  // daily_stop | interval_pause | ecpm_suppress
    Money observed = 0;
    Money limit = 0;
};

struct DecisionResult {
    bool bid = false;
    Money price = 0;
};

// All mutable per-campaign state: ledger, pacing rate, threshold band,
// bidding region, shading stats, estimator snapshot and pending delayed
// feedback. Campaigns are independent; each carries its own clock.
class CampaignRuntime {
public:
    CampaignRuntime(CampaignSetup setup, const WorldConfig& world);

    void start_day(int day);
    void begin_slot(int day, int slot);
    void process_request(const GeneratedRequest& generated);
    SlotSummary close_slot();

    // Decision path after guards: predict, then select / price.
    double predict(const GeneratedRequest& generated) const;
    DecisionResult decide(const AdRequest& request, double predicted_rate,
                          SplitMix64& select_stream) const;

    const CampaignConfig& config() const { return setup_.config; }
    const std::vector<SlotSummary>& history() const { return history_; }
    const std::vector<double>& rate_history() const { return rate_history_; }
    const std::vector<GuardTrip>& trips() const { return trips_; }
    PacingRate pacing_rate() const { return rate_; }
    ConfidenceBounds threshold_bounds() const { return bounds_; }
    const ThresholdStats& threshold_stats() const { return tstats_; }
    const DemandPlan& demand_plan() const { return plan_; }
    const PacingRegion& region() const { return region_; }
    bool stopped() const { return stopped_; }
    bool paused() const { return paused_; }
    const SpendLedger& ledger() const { return *ledger_; }
    const PerformancePdf* pdf() const { return pdf_ ? &*pdf_ : nullptr; }

    void dump_quality_histogram(std::ostream& out) const;
    void dump_theta_histogram(std::ostream& out) const;

private:
    struct PendingEvent {
        std::int64_t deliver_at = 0;
        EventKind kind = EventKind::Click;
        Money submitted = 0;
        Money clearing = 0;
        FeaturePath audience, publisher, advertiser;
        bool operator>(const PendingEvent& other) const { return deliver_at > other.deliver_at; }
    };

    bool flat_threshold() const {
        return setup_.config.kind == CampaignKind::FlatCpm &&
               setup_.selection == SelectionMode::Threshold;
    }
    void deliver_due_events(int slot);
    void submit_bid(const GeneratedRequest& generated, Money price);
    Money planned_budget_for(int slot) const;
    void plan_slot(int next_slot, const SlotSummary& closed);
    void refresh_threshold(int next_slot, Money next_budget);
    void refresh_region();
    void rebuild_trees();
    void record_trip(const char* guard, Money observed, Money limit);

    CampaignSetup setup_;
    const WorldConfig* world_;
    int slots_per_day_;

    int day_ = -1;
    std::optional<SlotClock> clock_;
    std::optional<SpendLedger> ledger_;
    PacingRate rate_{0.1};
    std::vector<double> rate_history_;
    std::vector<SlotSummary> history_;

    // Flat-CPM threshold machinery.
    ThresholdStats tstats_;
    ConfidenceBounds bounds_{0.0, 1.0};
    DemandPlan plan_;
    std::optional<QualityHistogram> current_hist_;
    std::vector<std::optional<QualityHistogram>> hist_ring_;  // [slot * d + day % d]
    std::optional<QualityHistogram> fallback_hist_;           // most recent folded slot

    // dCPM machinery.
    ShadingStats shading_;
    CostAverage cost_avg_;
    PacingRegion region_;
    double theta_star_ = 1.0;
    double rho_ = 1.0;
    bool targeting_limited_ = false;
    Money slot_clearing_sum_ = 0;
    std::int64_t slot_wins_ = 0;

    // Cross-day learning state.
    CampaignMaturity maturity_;
    std::priority_queue<PendingEvent, std::vector<PendingEvent>, std::greater<>> pending_;
    std::map<std::vector<std::uint32_t>, std::pair<std::int64_t, std::int64_t>> user_counts_,
        publisher_counts_, advertiser_counts_;
    HierarchyTree user_tree_, publisher_tree_, advertiser_tree_;
    std::optional<PerformancePdf> pdf_;

    bool stopped_ = false;
    bool paused_ = false;
    bool suppress_logged_ = false;
    std::vector<GuardTrip> trips_;
};

// Deterministic single-threaded world: shared traffic per slot, independent
// campaigns. One step processes the current slot for every campaign and
// returns their slot summaries.
class SimWorld {
public:
    SimWorld(WorldConfig config, std::vector<CampaignSetup> setups);
    SimWorld(const SimWorld&) = delete;
    SimWorld& operator=(const SimWorld&) = delete;

    std::vector<SlotSummary> step_slot();
    void run_to_completion();
    bool done() const;
    int day() const { return day_; }
    int slot() const { return slot_; }

    int campaign_count() const { return static_cast<int>(campaigns_.size()); }
    const CampaignRuntime& campaign(int i) const { return campaigns_.at(i); }
    CampaignRuntime& campaign(int i) { return campaigns_.at(i); }
    const WorldConfig& config() const { return cfg_; }

private:
    WorldConfig cfg_;
    std::vector<CampaignRuntime> campaigns_;
    int day_ = 0;
    int slot_ = 0;
};

}  // namespace pacer
