#include "pacer/exchange_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pacer {

// ---------------------------------------------------------------------------
// World primitives
// ---------------------------------------------------------------------------

std::int64_t TrafficProfile::requests_in_slot(int slot) const {
    const double mult = volume_multipliers.at(slot);
    return std::llround(static_cast<double>(base_volume) * mult);
}

void TrafficProfile::validate(int slots) const {
    if (base_volume < 0) throw std::invalid_argument("traffic: base_volume must be >= 0");
    if (static_cast<int>(volume_multipliers.size()) != slots)
        throw std::invalid_argument("traffic: need one volume multiplier per slot");
    if (static_cast<int>(rate_means.size()) != slots)
        throw std::invalid_argument("traffic: need one rate mean per slot");
    for (double m : volume_multipliers)
        if (!(m >= 0.0)) throw std::invalid_argument("traffic: multipliers must be >= 0");
    for (double r : rate_means)
        if (!(r >= 0.0 && r <= 1.0))
            throw std::invalid_argument("traffic: rate means must be in [0,1]");
    if (rate_sigma < 0.0) throw std::invalid_argument("traffic: rate_sigma must be >= 0");
    if (num_sites < 1 || num_segments < 1 || num_sections < 1 || num_buckets < 1 ||
        num_creatives < 1)
        throw std::invalid_argument("traffic: feature counts must be >= 1");
}

Money CompetitorModel::sample_highest_bid(int slot, SplitMix64& stream) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double z = normal(stream);
    const double bid = std::exp(log_location.at(slot) + log_scale.at(slot) * z);
    const auto rounded = std::llround(bid);
    return rounded > 0 ? rounded : 0;
}

double CompetitorModel::win_probability(int slot, Money bid) const {
    if (bid <= floor_price || bid < 1) return 0.0;
    // win  <=>  sampled bid <= bid - 1  <=>  exp(X) < bid - 0.5
    const double x =
        (std::log(static_cast<double>(bid) - 0.5) - log_location.at(slot)) / log_scale.at(slot);
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

void CompetitorModel::validate(int slots) const {
    if (static_cast<int>(log_location.size()) != slots ||
        static_cast<int>(log_scale.size()) != slots)
        throw std::invalid_argument("competitor: need per-slot location and scale");
    for (double s : log_scale)
        if (!(s > 0.0)) throw std::invalid_argument("competitor: scale must be > 0");
    if (floor_price < 0) throw std::invalid_argument("competitor: floor must be >= 0");
}

std::uint64_t make_request_id(int day, int slot, std::int64_t index) {
    return (static_cast<std::uint64_t>(day) << 48) | (static_cast<std::uint64_t>(slot) << 32) |
           static_cast<std::uint64_t>(index);
}

std::vector<GeneratedRequest> generate_requests(int day, int slot, const TrafficProfile& profile,
                                                std::uint64_t seed) {
    const std::int64_t count = profile.requests_in_slot(slot);
    std::vector<GeneratedRequest> out;
    out.reserve(count);

    // Per-site quality multipliers are fixed world structure for the run.
    std::vector<double> site_quality(profile.num_sites, 1.0);
    if (profile.site_quality_spread > 0.0) {
        for (int s = 0; s < profile.num_sites; ++s) {
            const double u = static_cast<double>(derive_seed(seed, "site_quality", s) >> 11) *
                             0x1.0p-53;
            site_quality[s] = std::exp(profile.site_quality_spread * (u - 0.5));
        }
    }

    auto rng = named_stream(seed, "traffic", static_cast<std::uint64_t>(day),
                            static_cast<std::uint64_t>(slot));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> site_dist(0, profile.num_sites - 1);
    std::uniform_int_distribution<int> section_dist(0, profile.num_sections - 1);
    std::uniform_int_distribution<int> segment_dist(0, profile.num_segments - 1);
    std::uniform_int_distribution<int> bucket_dist(0, profile.num_buckets - 1);
    std::uniform_int_distribution<int> creative_dist(0, profile.num_creatives - 1);

    const double mean = profile.rate_means.at(slot);
    const double sigma = profile.rate_sigma;
    // exp(sigma*z - sigma^2/2) has unit mean, so the slot mean is preserved.
    const double drift = -0.5 * sigma * sigma;

    for (std::int64_t i = 0; i < count; ++i) {
        GeneratedRequest g;
        g.request.id = make_request_id(day, slot, i);
        g.request.slot = slot;

        const int site = site_dist(rng);
        const int section = section_dist(rng);
        const int segment = segment_dist(rng);
        const int bucket = bucket_dist(rng);
        const int creative = creative_dist(rng);

        g.request.audience.push(static_cast<std::uint32_t>(segment));
        g.request.audience.push(static_cast<std::uint32_t>(bucket));

        g.request.publisher.push(static_cast<std::uint32_t>(site % 8));  // category
        g.request.publisher.push(static_cast<std::uint32_t>(site));
        g.request.publisher.push(static_cast<std::uint32_t>(section));

        g.request.advertiser.push(0);  // advertiser category
        g.request.advertiser.push(0);  // advertiser
        g.request.advertiser.push(0);  // insertion order
        g.request.advertiser.push(0);  // package
        g.request.advertiser.push(0);  // line item
        g.request.advertiser.push(static_cast<std::uint32_t>(creative / 2));  // ad
        g.request.advertiser.push(static_cast<std::uint32_t>(creative));

        double v = mean * site_quality[site];
        if (sigma > 0.0) v *= std::exp(sigma * normal(rng) + drift);
        g.true_rate = std::clamp(v, 0.0, 1.0);
        out.push_back(g);
    }
    return out;
}

AuctionOutcome run_auction(Money bid, const CompetitorModel& competitor, int slot,
                           SplitMix64& stream) {
    if (bid < 0) throw std::invalid_argument("run_auction: negative bid");
    const Money highest = competitor.sample_highest_bid(slot, stream);
    const Money reserve = std::max(highest, competitor.floor_price);
    AuctionOutcome outcome;
    outcome.submitted_bid = bid;
    if (bid > reserve) {
        outcome.won = true;
        outcome.clearing_price = reserve;
    }
    return outcome;
}

std::optional<FeedbackEvent> sample_feedback(std::uint64_t impression_id,
                                             std::int64_t impression_global_slot,
                                             double true_rate, EventKind kind,
                                             double delay_mean_slots, SplitMix64& stream) {
    if (!(true_rate >= 0.0 && true_rate <= 1.0))
        throw std::invalid_argument("sample_feedback: rate out of range");
    if (delay_mean_slots < 0.0)
        throw std::invalid_argument("sample_feedback: negative delay mean");
    if (uniform01(stream) >= true_rate) return std::nullopt;
    std::int64_t delay = 0;
    if (delay_mean_slots > 0.0) {
        std::geometric_distribution<std::int64_t> geo(1.0 / (1.0 + delay_mean_slots));
        delay = geo(stream);
    }
    return FeedbackEvent{impression_id, kind, impression_global_slot + delay};
}

// ---------------------------------------------------------------------------
// World configuration
// ---------------------------------------------------------------------------

SlotClock WorldConfig::make_clock() const {
    if (!slot_lengths_seconds.empty()) return SlotClock(slot_lengths_seconds);
    return SlotClock(slots_per_day);
}

void WorldConfig::validate() const {
    if (slots_per_day <= 0) throw std::invalid_argument("world: slots_per_day must be > 0");
    if (!slot_lengths_seconds.empty() &&
        static_cast<int>(slot_lengths_seconds.size()) != slots_per_day)
        throw std::invalid_argument("world: slot_lengths length != slots_per_day");
    if (days <= 0) throw std::invalid_argument("world: days must be > 0");
    if (click_delay_mean_slots < 0.0 || conversion_delay_mean_slots < 0.0)
        throw std::invalid_argument("world: delay means must be >= 0");
    traffic.validate(slots_per_day);
    competitor.validate(slots_per_day);
    make_clock();  // validates custom lengths
}

// ---------------------------------------------------------------------------
// CampaignRuntime
// ---------------------------------------------------------------------------

CampaignRuntime::CampaignRuntime(CampaignSetup setup, const WorldConfig& world)
    : setup_(std::move(setup)),
      world_(&world),
      slots_per_day_(world.slots()),
      shading_(setup_.config.shading_percentile),
      cost_avg_(world.slots()) {
    setup_.config.validate();
    tstats_.lookback_days = setup_.config.lookback_days;
    tstats_.critical_value = setup_.config.critical_value;
    if (flat_threshold()) {
        current_hist_ = QualityHistogram::log_linear();
        hist_ring_.resize(static_cast<std::size_t>(slots_per_day_) *
                          setup_.config.lookback_days);
    }
    const auto strategy = setup_.config.strategy;
    if (strategy != PacingStrategy::Uniform) {
        if (setup_.pdf) {
            if (setup_.pdf->size() != slots_per_day_)
                throw std::invalid_argument(setup_.config.name + ": pdf length != slot count");
            pdf_ = setup_.pdf;
        } else {
            pdf_ = synthetic_bimodal_pdf(slots_per_day_);
        }
    }
}

Money CampaignRuntime::planned_budget_for(int slot) const {
    const Money budget = setup_.config.daily_budget;
    switch (setup_.config.strategy) {
        case PacingStrategy::Uniform:
            return uniform_next_budget(budget, *ledger_, *clock_, slot);
        case PacingStrategy::Performance:
            return performance_next_budget(budget, *ledger_, *clock_, *pdf_, slot);
        case PacingStrategy::Blended: {
            const Money u = uniform_next_budget(budget, *ledger_, *clock_, slot);
            const Money p = performance_next_budget(budget, *ledger_, *clock_, *pdf_, slot);
            return blended_next_budget(u, p, setup_.config.blend_weight);
        }
    }
    return 0;
}

void CampaignRuntime::start_day(int day) {
    const bool first_day = day_ < 0;
    day_ = day;
    clock_.emplace(world_->make_clock());
    ledger_.emplace(slots_per_day_);
    stopped_ = false;
    paused_ = false;
    suppress_logged_ = false;

    if (!first_day) {
        if (setup_.estimator.kind == EstimatorKind::Hierarchical) rebuild_trees();
        if (setup_.learn_pdf && setup_.config.strategy != PacingStrategy::Uniform)
            pdf_ = learn_performance_pdf(history_, slots_per_day_, setup_.config.goal);
    }

    const Money first_budget = planned_budget_for(0);
    ledger_->set_planned(0, first_budget);

    if (first_day) {
        // Initial rate from expected first-slot volume when the campaign has
        // a known price point, otherwise a conservative default.
        double initial = 0.1;
        if (setup_.config.kind == CampaignKind::FlatCpm) {
            const double expected_reqs =
                static_cast<double>(world_->traffic.requests_in_slot(0));
            const double per_request = static_cast<double>(setup_.config.fixed_bid) *
                                       setup_.initial_win_rate_guess * expected_reqs;
            if (per_request > 0.0)
                initial = static_cast<double>(first_budget) / per_request;
        }
        rate_ = clamp_rate(initial, setup_.config);
    } else {
        const auto& last = history_.back();
        const auto forecast = forecast_ratios(history_, slots_per_day_, 0);
        rate_ = update_pacing_rate(rate_, first_budget, last.spend, forecast, setup_.config);
        if (flat_threshold()) refresh_threshold(0, first_budget);
        if (setup_.config.kind == CampaignKind::DynamicCpm) refresh_region();
    }
}

void CampaignRuntime::begin_slot(int day, int slot) {
    if (day != day_ || ledger_->open_slot() != slot)
        throw std::logic_error("CampaignRuntime: slot out of step");
    deliver_due_events(slot);
}

void CampaignRuntime::deliver_due_events(int slot) {
    const std::int64_t global = static_cast<std::int64_t>(day_) * slots_per_day_ + slot;
    while (!pending_.empty() && pending_.top().deliver_at <= global) {
        const PendingEvent ev = pending_.top();
        pending_.pop();
        ledger_->record_event(slot, ev.kind);
        ++maturity_.events;
        if (setup_.config.kind == CampaignKind::DynamicCpm)
            shading_.record_win(AuctionOutcome{true, ev.clearing, ev.submitted}, true);
        if (setup_.estimator.kind == EstimatorKind::Hierarchical) {
            auto bump = [](auto& counts, const FeaturePath& path) {
                std::vector<std::uint32_t> key(path.begin(), path.end());
                counts[key].second += 1;
            };
            bump(user_counts_, ev.audience);
            bump(publisher_counts_, ev.publisher);
            bump(advertiser_counts_, ev.advertiser);
        }
    }
}

double CampaignRuntime::predict(const GeneratedRequest& generated) const {
    if (setup_.estimator.kind == EstimatorKind::NoisyOracle) {
        auto stream = named_stream(world_->seed, "estimate", generated.request.id);
        return noisy_oracle_predict(generated.true_rate, setup_.estimator.noise_sigma,
                                    setup_.estimator.calibration_bias, stream);
    }
    return predict_rate(user_tree_, publisher_tree_, advertiser_tree_, generated.request);
}

DecisionResult CampaignRuntime::decide(const AdRequest&, double predicted_rate,
                                       SplitMix64& select_stream) const {
    DecisionResult result;
    if (setup_.config.kind == CampaignKind::FlatCpm) {
        FlatDecision d;
        if (setup_.selection == SelectionMode::Random) {
            d.kind = FlatDecision::Kind::Probabilistic;
            d.probability = rate_.value;
        } else {
            d = decide_flat(predicted_rate, bounds_, rate_, setup_.config.fixed_bid);
        }
        switch (d.kind) {
            case FlatDecision::Kind::Bid:
                result = {true, d.price};
                break;
            case FlatDecision::Kind::Probabilistic:
                if (uniform01(select_stream) < d.probability)
                    result = {true, setup_.config.fixed_bid};
                break;
            case FlatDecision::Kind::Drop:
                break;
        }
    } else {
        // The pacing rate gates bid frequency; the region logic prices it.
        if (uniform01(select_stream) < rate_.value) {
            const Money base = base_bid(predicted_rate, setup_.config.goal_value);
            const Money bid = compute_bid(region_, base, theta_star_, rho_, setup_.config);
            if (bid > 0) result = {true, bid};
        }
    }
    return result;
}

void CampaignRuntime::record_trip(const char* guard, Money observed, Money limit) {
    trips_.push_back(GuardTrip{day_, ledger_->open_slot(), guard, observed, limit});
}

void CampaignRuntime::process_request(const GeneratedRequest& generated) {
    const int slot = ledger_->open_slot();
    ledger_->record_request(slot);

    // The quality histogram tracks every eligible request of the slot, not
    // just the ones that survive the guards.
    double predicted = -1.0;
    if (flat_threshold()) {
        predicted = predict(generated);
        current_hist_->add(predicted);
    }

    if (stopped_) return;
    if (check_daily(ledger_->total_spend(), setup_.config.daily_budget) ==
        GuardAction::StopCampaign) {
        stopped_ = true;
        record_trip("daily_stop", ledger_->total_spend(), setup_.config.daily_budget);
        return;
    }
    if (paused_) return;
    const Money planned = ledger_->totals(slot).planned;
    const Money tolerance = setup_.config.interval_tolerance_for(slot);
    if (check_interval(ledger_->slot_spend(slot), planned, tolerance) ==
        GuardAction::PauseUntilNextSlot) {
        paused_ = true;
        record_trip("interval_pause", ledger_->slot_spend(slot), planned + tolerance);
        return;
    }
    if (check_ecpm(ledger_->total_spend(), ledger_->total_impressions(),
                   setup_.config.ecpm_cap) == GuardAction::SuppressBid) {
        if (!suppress_logged_) {
            record_trip("ecpm_suppress", ledger_->total_spend(), setup_.config.ecpm_cap);
            suppress_logged_ = true;
        }
        return;
    }

    if (setup_.cold_start && !is_mature(*setup_.cold_start, maturity_)) {
        auto stream = named_stream(world_->seed, "explore", generated.request.id);
        const auto cold = cold_start_decide(*setup_.cold_start, generated.request, maturity_,
                                            stream);
        if (cold.kind == ColdStartDecision::Kind::ExploreBid) {
            const Money price = std::min(cold.price, setup_.config.bid_cap);
            if (price > 0) submit_bid(generated, price);
        }
        return;
    }

    if (predicted < 0.0) predicted = predict(generated);
    auto select_stream = named_stream(world_->seed, "select", generated.request.id);
    const auto decision = decide(generated.request, predicted, select_stream);
    if (decision.bid) submit_bid(generated, decision.price);
}

void CampaignRuntime::submit_bid(const GeneratedRequest& generated, Money price) {
    const int slot = ledger_->open_slot();
    auto auction_stream = named_stream(world_->seed, "auction", generated.request.id);
    const auto outcome = run_auction(price, world_->competitor, slot, auction_stream);
    ledger_->record_auction(slot, outcome);
    if (!outcome.won) return;

    ++maturity_.impressions;
    slot_clearing_sum_ += outcome.clearing_price;
    ++slot_wins_;

    if (setup_.estimator.kind == EstimatorKind::Hierarchical) {
        auto bump = [](auto& counts, const FeaturePath& path) {
            std::vector<std::uint32_t> key(path.begin(), path.end());
            counts[key].first += 1;
        };
        bump(user_counts_, generated.request.audience);
        bump(publisher_counts_, generated.request.publisher);
        bump(advertiser_counts_, generated.request.advertiser);
    }

    const EventKind kind = goal_event_kind(setup_.config.goal);
    const double delay_mean = kind == EventKind::Click ? world_->click_delay_mean_slots
                                                       : world_->conversion_delay_mean_slots;
    const std::int64_t global = static_cast<std::int64_t>(day_) * slots_per_day_ + slot;
    auto fb_stream = named_stream(world_->seed, "feedback", generated.request.id);
    const auto event = sample_feedback(generated.request.id, global, generated.true_rate, kind,
                                       delay_mean, fb_stream);
    if (event) {
        PendingEvent pe;
        pe.deliver_at = event->deliver_at_global_slot;
        pe.kind = event->kind;
        pe.submitted = outcome.submitted_bid;
        pe.clearing = outcome.clearing_price;
        pe.audience = generated.request.audience;
        pe.publisher = generated.request.publisher;
        pe.advertiser = generated.request.advertiser;
        pending_.push(pe);
    }
}

SlotSummary CampaignRuntime::close_slot() {
    const int slot = ledger_->open_slot();
    deliver_due_events(slot);  // zero-delay events land in their own slot

    if (flat_threshold()) {
        auto& ring_entry =
            hist_ring_[static_cast<std::size_t>(slot) * setup_.config.lookback_days +
                       day_ % setup_.config.lookback_days];
        ring_entry = *current_hist_;
        fallback_hist_ = *current_hist_;
        current_hist_->clear();
    }

    const SlotSummary summary = ledger_->close_slot(*clock_);
    history_.push_back(summary);
    rate_history_.push_back(rate_.value);

    if (setup_.config.kind == CampaignKind::DynamicCpm) {
        if (slot_wins_ > 0)
            cost_avg_.update_slot(slot_clearing_sum_ / slot_wins_, slot_wins_);
        // Rate pinned at 1.0 for a whole slot while spending under half the
        // plan points at targeting, not price.
        targeting_limited_ =
            rate_.value >= 1.0 && summary.spend * 2 < summary.planned;
    }
    slot_clearing_sum_ = 0;
    slot_wins_ = 0;
    paused_ = false;
    suppress_logged_ = false;

    if (slot + 1 < slots_per_day_) plan_slot(slot + 1, summary);
    return summary;
}

void CampaignRuntime::plan_slot(int next_slot, const SlotSummary& closed) {
    const Money next_budget = planned_budget_for(next_slot);
    ledger_->set_planned(next_slot, next_budget);
    const auto forecast = forecast_ratios(history_, slots_per_day_, next_slot);
    rate_ = update_pacing_rate(rate_, next_budget, closed.spend, forecast, setup_.config);
    if (flat_threshold()) refresh_threshold(next_slot, next_budget);
    if (setup_.config.kind == CampaignKind::DynamicCpm) refresh_region();
}

void CampaignRuntime::refresh_threshold(int next_slot, Money next_budget) {
    const auto level = forecast_levels(history_, slots_per_day_, next_slot);
    const double win_forecast =
        level.win_rate_no_data ? 1.0 : std::clamp(level.win_rate, 0.01, 1.0);
    // Size demand with the realized bid/request portion (that is what the
    // spend proportionality calls the pacing rate). The enacted gate
    // probability stands in until a slot has been observed.
    double pacing_for_sizing = rate_.value;
    if (!level.bids_no_data && !level.requests_no_data) {
        const double realized = level.bids / level.requests;
        if (realized > 0.0 && std::isfinite(realized))
            pacing_for_sizing = std::clamp(realized, setup_.config.min_pacing_rate, 1.0);
    }
    plan_ = required_requests(next_budget, setup_.config.fixed_bid, win_forecast,
                              PacingRate{pacing_for_sizing});

    // Window over the last d days of predicted-rate histograms for this
    // slot-of-day; before any same-slot history exists, the most recent
    // closed slot stands in.
    QualityHistogram window = QualityHistogram::log_linear();
    const int d = setup_.config.lookback_days;
    for (int j = 0; j < d; ++j) {
        const auto& entry = hist_ring_[static_cast<std::size_t>(next_slot) * d + j];
        if (entry) window.add_counts(*entry);
    }
    if (window.total_count() == 0 && fallback_hist_) window.add_counts(*fallback_hist_);
    if (window.total_count() == 0) return;  // nothing observed yet; band stays wide open

    // A saturated demand plan clamps the solve to a bin-edge sentinel
    // (accept-everything or accept-nothing). Those are valid decisions for
    // the slot but not observations of the threshold distribution, so they
    // stay out of the Gaussian stats.
    if (plan_.requests == 0 || plan_.requests >= window.total_count()) return;

    const double tau = solve_threshold(window, plan_.requests);
    tstats_.update(tau);
    // A confidence band needs a few observations before it means anything;
    // until then every request stays in the probabilistic middle.
    if (tstats_.count >= 3) bounds_ = confidence_bounds(tstats_);
}

void CampaignRuntime::refresh_region() {
    region_ = classify_region(rate_, setup_.config, targeting_limited_);
    theta_star_ = shading_.theta_star();
    rho_ = 1.0;
    if (region_.region == Region::Danger && cost_avg_.has_data() &&
        setup_.config.bid_cap >= cost_avg_.value())
        rho_ = boost_factor(rate_, setup_.config, cost_avg_.value());
}

void CampaignRuntime::rebuild_trees() {
    auto rebuild = [&](const auto& counts) {
        HierarchyTree tree;
        for (const auto& [path, c] : counts) tree.add_counts(path, c.first, c.second);
        tree.aggregate_raw_rates();
        tree.smooth_rates(setup_.estimator.prior_strength);
        return tree;
    };
    user_tree_ = rebuild(user_counts_);
    publisher_tree_ = rebuild(publisher_counts_);
    advertiser_tree_ = rebuild(advertiser_counts_);
}

void CampaignRuntime::dump_quality_histogram(std::ostream& out) const {
    if (fallback_hist_) {
        fallback_hist_->dump_csv(out);
    } else {
        QualityHistogram::log_linear().dump_csv(out);
    }
}

void CampaignRuntime::dump_theta_histogram(std::ostream& out) const { shading_.dump_csv(out); }

// ---------------------------------------------------------------------------
// SimWorld
// ---------------------------------------------------------------------------

SimWorld::SimWorld(WorldConfig config, std::vector<CampaignSetup> setups)
    : cfg_(std::move(config)) {
    cfg_.validate();
    if (setups.empty()) throw std::invalid_argument("SimWorld: no campaigns");
    campaigns_.reserve(setups.size());
    for (auto& s : setups) campaigns_.emplace_back(std::move(s), cfg_);
}

bool SimWorld::done() const { return day_ >= cfg_.days; }

std::vector<SlotSummary> SimWorld::step_slot() {
    if (done()) throw std::logic_error("SimWorld: simulation finished");
    if (slot_ == 0)
        for (auto& c : campaigns_) c.start_day(day_);

    const auto requests = generate_requests(day_, slot_, cfg_.traffic, cfg_.seed);
    std::vector<SlotSummary> summaries;
    summaries.reserve(campaigns_.size());
    for (auto& c : campaigns_) {
        c.begin_slot(day_, slot_);
        for (const auto& g : requests) c.process_request(g);
        summaries.push_back(c.close_slot());
    }

    ++slot_;
    if (slot_ >= cfg_.slots()) {
        slot_ = 0;
        ++day_;
    }
    return summaries;
}

void SimWorld::run_to_completion() {
    while (!done()) step_slot();
}

}  // namespace pacer
