#include "pacer/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pacer {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

PacingError pacing_error(std::span<const Money> actual, std::span<const Money> ideal,
                         Money daily_budget) {
    if (actual.size() != ideal.size())
        throw std::invalid_argument("pacing_error: series length mismatch");
    if (actual.empty()) return {};
    std::int64_t sum_abs = 0;
    for (std::size_t i = 0; i < actual.size(); ++i)
        sum_abs += std::llabs(actual[i] - ideal[i]);
    PacingError e;
    e.mean_abs = sum_abs / static_cast<std::int64_t>(actual.size());
    e.pct_of_budget = daily_budget > 0
                          ? static_cast<double>(sum_abs) /
                                (static_cast<double>(actual.size()) *
                                 static_cast<double>(daily_budget))
                          : 0.0;
    return e;
}

RunMetrics compute_metrics(std::span<const SlotRow> rows, const CampaignConfig& cfg) {
    RunMetrics m;
    std::vector<Money> actual, ideal;
    actual.reserve(rows.size());
    ideal.reserve(rows.size());
    for (const auto& r : rows) {
        m.total_spend += r.spend;
        m.requests += r.requests;
        m.bids += r.bids;
        m.impressions += r.impressions;
        m.clicks += r.clicks;
        m.conversions += r.conversions;
        actual.push_back(r.spend);
        ideal.push_back(r.planned);
    }
    const auto spend = static_cast<double>(m.total_spend);
    if (m.impressions > 0) {
        m.ecpm_micros = 1000.0 * spend / static_cast<double>(m.impressions);
        m.ctr = static_cast<double>(m.clicks) / static_cast<double>(m.impressions);
        m.ar = static_cast<double>(m.conversions) / static_cast<double>(m.impressions);
    }
    if (m.clicks > 0) m.ecpc_micros = spend / static_cast<double>(m.clicks);
    if (m.conversions > 0) m.ecpa_micros = spend / static_cast<double>(m.conversions);

    const auto err = pacing_error(actual, ideal, cfg.daily_budget);
    m.pacing_error_mean = err.mean_abs;
    m.pacing_error_pct = err.pct_of_budget;

    // On target when every simulated day lands within the daily tolerance.
    m.on_target = !rows.empty();
    Money day_spend = 0;
    int day = rows.empty() ? 0 : rows.front().day;
    auto check_day = [&](Money total) {
        if (std::llabs(total - cfg.daily_budget) > cfg.daily_tolerance) m.on_target = false;
    };
    for (const auto& r : rows) {
        if (r.day != day) {
            check_day(day_spend);
            day = r.day;
            day_spend = 0;
        }
        day_spend += r.spend;
    }
    if (!rows.empty()) check_day(day_spend);
    return m;
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

void require_keys(const json& obj, const char* context,
                  std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw std::invalid_argument(std::string(context) + ": expected object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (key == k) {
                known = true;
                break;
            }
        if (!known)
            throw std::invalid_argument(std::string(context) + ": unknown key '" + key + "'");
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    return obj.at(key).get<T>();
}

std::vector<double> per_slot_values(const json& obj, const char* scalar_key,
                                    const char* array_key, int slots, double fallback) {
    if (obj.contains(array_key)) {
        auto v = obj.at(array_key).get<std::vector<double>>();
        if (static_cast<int>(v.size()) != slots)
            throw std::invalid_argument(std::string(array_key) + ": length != slots_per_day");
        return v;
    }
    const double value = get_or(obj, scalar_key, fallback);
    return std::vector<double>(slots, value);
}

TrafficProfile parse_traffic(const json& world, int slots) {
    TrafficProfile t;
    t.base_volume = get_or<std::int64_t>(world, "base_volume", 0);
    t.volume_multipliers =
        per_slot_values(world, "volume_multiplier", "volume_multipliers", slots, 1.0);
    t.rate_means = per_slot_values(world, "rate_mean", "rate_means", slots, 0.0);
    t.rate_sigma = get_or(world, "rate_sigma", 0.0);
    t.num_sites = get_or(world, "sites", 50);
    t.num_segments = get_or(world, "segments", 16);
    t.num_sections = get_or(world, "sections", 4);
    t.num_buckets = get_or(world, "buckets", 32);
    t.num_creatives = get_or(world, "creatives", 4);
    t.site_quality_spread = get_or(world, "site_quality_spread", 0.0);
    return t;
}

CompetitorModel parse_competitor(const json& comp, int slots) {
    require_keys(comp, "world.competitor",
                 {"median_bid_micros", "median_bid_micros_per_slot", "log_scale",
                  "log_scale_per_slot", "floor_micros"});
    CompetitorModel c;
    auto medians =
        per_slot_values(comp, "median_bid_micros", "median_bid_micros_per_slot", slots, 0.0);
    c.log_location.reserve(slots);
    for (double m : medians) {
        if (!(m > 0.0))
            throw std::invalid_argument("competitor: median_bid_micros must be > 0");
        c.log_location.push_back(std::log(m));
    }
    c.log_scale = per_slot_values(comp, "log_scale", "log_scale_per_slot", slots, 0.4);
    c.floor_price = get_or<Money>(comp, "floor_micros", 0);
    return c;
}

WorldConfig parse_world(const json& world) {
    require_keys(world, "world",
                 {"slots_per_day", "slot_lengths_seconds", "days", "seed", "base_volume",
                  "volume_multiplier", "volume_multipliers", "rate_mean", "rate_means",
                  "rate_sigma", "sites", "segments", "sections", "buckets", "creatives",
                  "site_quality_spread", "competitor", "click_delay_mean_slots",
                  "conversion_delay_mean_slots"});
    WorldConfig w;
    w.slots_per_day = get_or(world, "slots_per_day", 96);
    if (world.contains("slot_lengths_seconds"))
        w.slot_lengths_seconds = world.at("slot_lengths_seconds").get<std::vector<std::int64_t>>();
    w.days = get_or(world, "days", 1);
    w.seed = get_or<std::uint64_t>(world, "seed", 0);
    w.traffic = parse_traffic(world, w.slots_per_day);
    if (!world.contains("competitor"))
        throw std::invalid_argument("world: missing competitor section");
    w.competitor = parse_competitor(world.at("competitor"), w.slots_per_day);
    w.click_delay_mean_slots = get_or(world, "click_delay_mean_slots", 2.0);
    w.conversion_delay_mean_slots = get_or(world, "conversion_delay_mean_slots", 8.0);
    return w;
}

GoalKind parse_goal(const std::string& s) {
    if (s == "cpc") return GoalKind::Cpc;
    if (s == "cpa") return GoalKind::Cpa;
    if (s == "ctr") return GoalKind::Ctr;
    if (s == "ar") return GoalKind::Ar;
    throw std::invalid_argument("campaign: unknown goal '" + s + "'");
}

CampaignSetup parse_campaign(const json& c, const WorldConfig& world) {
    require_keys(c, "campaign",
                 {"name", "kind", "daily_budget_micros", "fixed_bid_micros", "goal",
                  "goal_value_micros", "ecpm_cap_micros", "bid_cap_micros", "beta1", "beta2",
                  "strategy", "blend_weight", "performance_pdf", "learn_performance_pdf",
                  "interval_tolerance_micros", "interval_tolerance_micros_per_slot",
                  "daily_tolerance_micros", "shading_percentile", "min_pacing_rate",
                  "growth_factor", "lookback_days", "critical_value", "selection", "estimator",
                  "initial_win_rate_guess", "cold_start"});
    CampaignSetup s;
    auto& cfg = s.config;
    cfg.name = get_or<std::string>(c, "name", "campaign");

    const auto kind = get_or<std::string>(c, "kind", "flat_cpm");
    if (kind == "flat_cpm") cfg.kind = CampaignKind::FlatCpm;
    else if (kind == "dynamic_cpm") cfg.kind = CampaignKind::DynamicCpm;
    else throw std::invalid_argument("campaign: unknown kind '" + kind + "'");

    cfg.daily_budget = get_or<Money>(c, "daily_budget_micros", 0);
    cfg.fixed_bid = get_or<Money>(c, "fixed_bid_micros", 0);
    cfg.goal = parse_goal(get_or<std::string>(c, "goal", "ctr"));
    cfg.goal_value = get_or<Money>(c, "goal_value_micros", 0);
    if (c.contains("ecpm_cap_micros")) cfg.ecpm_cap = c.at("ecpm_cap_micros").get<Money>();
    cfg.bid_cap = get_or<Money>(c, "bid_cap_micros", 0);
    cfg.region_low = get_or(c, "beta1", 0.3);
    cfg.region_high = get_or(c, "beta2", 0.8);

    const auto strategy = get_or<std::string>(c, "strategy", "uniform");
    if (strategy == "uniform") cfg.strategy = PacingStrategy::Uniform;
    else if (strategy == "performance") cfg.strategy = PacingStrategy::Performance;
    else if (strategy == "blended") cfg.strategy = PacingStrategy::Blended;
    else throw std::invalid_argument("campaign: unknown strategy '" + strategy + "'");
    cfg.blend_weight = get_or(c, "blend_weight", 0.5);

    cfg.interval_tolerance = get_or<Money>(c, "interval_tolerance_micros", 0);
    if (c.contains("interval_tolerance_micros_per_slot"))
        cfg.interval_tolerance_per_slot =
            c.at("interval_tolerance_micros_per_slot").get<std::vector<Money>>();
    cfg.daily_tolerance = get_or<Money>(c, "daily_tolerance_micros", 0);
    cfg.shading_percentile = get_or(c, "shading_percentile", 0.02);
    cfg.min_pacing_rate = get_or(c, "min_pacing_rate", 0.001);
    cfg.rate_growth_factor = get_or(c, "growth_factor", 2.0);
    cfg.lookback_days = get_or(c, "lookback_days", 1);
    cfg.critical_value = get_or(c, "critical_value", 1.96);

    if (c.contains("performance_pdf"))
        s.pdf = PerformancePdf(c.at("performance_pdf").get<std::vector<double>>());
    s.learn_pdf = get_or(c, "learn_performance_pdf", false);
    s.initial_win_rate_guess = get_or(c, "initial_win_rate_guess", 0.5);

    const auto selection = get_or<std::string>(c, "selection", "threshold");
    if (selection == "threshold") s.selection = SelectionMode::Threshold;
    else if (selection == "random") s.selection = SelectionMode::Random;
    else throw std::invalid_argument("campaign: unknown selection '" + selection + "'");

    if (c.contains("estimator")) {
        const auto& e = c.at("estimator");
        require_keys(e, "campaign.estimator", {"kind", "sigma", "bias", "prior_strength"});
        const auto ekind = get_or<std::string>(e, "kind", "noisy_oracle");
        if (ekind == "noisy_oracle") s.estimator.kind = EstimatorKind::NoisyOracle;
        else if (ekind == "hierarchical") s.estimator.kind = EstimatorKind::Hierarchical;
        else throw std::invalid_argument("estimator: unknown kind '" + ekind + "'");
        s.estimator.noise_sigma = get_or(e, "sigma", 0.0);
        s.estimator.calibration_bias = get_or(e, "bias", 1.0);
        s.estimator.prior_strength = get_or<std::int64_t>(e, "prior_strength", 100);
    }

    if (c.contains("cold_start")) {
        const auto& cs = c.at("cold_start");
        require_keys(cs, "campaign.cold_start",
                     {"epsilon", "recommended_sites", "recommended_segments",
                      "exploration_bid_micros", "maturity_impressions", "maturity_events",
                      "recommended_boost"});
        ColdStartPolicy p;
        p.epsilon = get_or(cs, "epsilon", 0.0);
        if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0))
            throw std::invalid_argument("cold_start: epsilon must be in [0,1]");
        p.recommended_sites =
            get_or<std::vector<std::uint32_t>>(cs, "recommended_sites", {});
        p.recommended_segments =
            get_or<std::vector<std::uint32_t>>(cs, "recommended_segments", {});
        p.exploration_bid = get_or<Money>(cs, "exploration_bid_micros", 0);
        p.maturity_impressions = get_or<std::int64_t>(cs, "maturity_impressions", 100'000);
        p.maturity_events = get_or<std::int64_t>(cs, "maturity_events", 50);
        p.recommended_boost = get_or(cs, "recommended_boost", 1.5);
        s.cold_start = p;
    }

    cfg.validate();
    if (s.pdf && s.pdf->size() != world.slots())
        throw std::invalid_argument(cfg.name + ": performance_pdf length != slots_per_day");
    return s;
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& doc) {
    require_keys(doc, "config", {"world", "campaigns"});
    if (!doc.contains("world") || !doc.contains("campaigns"))
        throw std::invalid_argument("config: need 'world' and 'campaigns'");
    ExperimentConfig cfg;
    cfg.world = parse_world(doc.at("world"));
    cfg.world.validate();
    if (!doc.at("campaigns").is_array() || doc.at("campaigns").empty())
        throw std::invalid_argument("config: 'campaigns' must be a non-empty array");
    for (const auto& c : doc.at("campaigns"))
        cfg.campaigns.push_back(parse_campaign(c, cfg.world));
    cfg.raw = doc;
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return parse_experiment_config(doc);
}

std::string config_hash_hex(const json& doc) {
    const std::string s = doc.dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

namespace {

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

json optional_to_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

std::string slot_series_csv(const RunReport& report, int day) {
    std::ostringstream out;
    out << "slot,ideal_spend_micros,actual_spend_micros,pacing_rate,win_rate,requests,bids,"
           "impressions,clicks,conversions\n";
    for (const auto& r : report.rows) {
        if (r.day != day) continue;
        out << r.slot << ',' << r.planned << ',' << r.spend << ',' << fixed6(r.pacing_rate) << ','
            << fixed6(r.win_rate) << ',' << r.requests << ',' << r.bids << ',' << r.impressions
            << ',' << r.clicks << ',' << r.conversions << '\n';
    }
    return out.str();
}

json report_to_json(const RunReport& report) {
    json metrics{
        {"total_spend_micros", report.metrics.total_spend},
        {"requests", report.metrics.requests},
        {"bids", report.metrics.bids},
        {"impressions", report.metrics.impressions},
        {"clicks", report.metrics.clicks},
        {"conversions", report.metrics.conversions},
        {"ecpm_micros", optional_to_json(report.metrics.ecpm_micros)},
        {"ecpc_micros", optional_to_json(report.metrics.ecpc_micros)},
        {"ecpa_micros", optional_to_json(report.metrics.ecpa_micros)},
        {"ctr", optional_to_json(report.metrics.ctr)},
        {"ar", optional_to_json(report.metrics.ar)},
        {"pacing_error_mean_micros", report.metrics.pacing_error_mean},
        {"pacing_error_pct_of_budget", report.metrics.pacing_error_pct},
        {"on_target", report.metrics.on_target},
    };
    json trips = json::array();
    for (const auto& t : report.trips)
        trips.push_back(json{{"day", t.day},
                             {"slot", t.slot},
                             {"guard", t.guard},
                             {"observed_micros", t.observed},
                             {"limit_micros", t.limit}});
    return json{{"campaign", report.campaign},
                {"seed", report.seed},
                {"config_hash", report.config_hash},
                {"days", report.days},
                {"slots_per_day", report.slots_per_day},
                {"metrics", metrics},
                {"guard_trips", trips}};
}

// ---------------------------------------------------------------------------
// Running experiments
// ---------------------------------------------------------------------------

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
}

}  // namespace

std::vector<RunReport> run_experiment(const ExperimentConfig& config,
                                      const std::string& out_dir) {
    SimWorld world(config.world, config.campaigns);
    world.run_to_completion();

    const std::string hash = config_hash_hex(config.raw);
    std::vector<RunReport> reports;
    for (int i = 0; i < world.campaign_count(); ++i) {
        const auto& rt = world.campaign(i);
        RunReport rep;
        rep.campaign = rt.config().name;
        rep.seed = config.world.seed;
        rep.config_hash = hash;
        rep.days = config.world.days;
        rep.slots_per_day = config.world.slots();
        const auto& hist = rt.history();
        const auto& rates = rt.rate_history();
        rep.rows.reserve(hist.size());
        for (std::size_t k = 0; k < hist.size(); ++k) {
            const auto& s = hist[k];
            SlotRow row;
            row.day = static_cast<int>(k) / rep.slots_per_day;
            row.slot = s.slot;
            row.planned = s.planned;
            row.spend = s.spend;
            row.pacing_rate = rates[k];
            row.win_rate = s.win_rate;
            row.requests = s.requests;
            row.bids = s.bids;
            row.impressions = s.impressions;
            row.clicks = s.clicks;
            row.conversions = s.conversions;
            rep.rows.push_back(row);
        }
        rep.metrics = compute_metrics(rep.rows, rt.config());
        rep.trips = rt.trips();
        reports.push_back(std::move(rep));
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        for (int i = 0; i < world.campaign_count(); ++i) {
            const auto& rep = reports[i];
            const auto& rt = world.campaign(i);
            for (int d = 0; d < rep.days; ++d) {
                const std::string name = rep.days == 1
                                             ? rep.campaign + ".csv"
                                             : rep.campaign + "_day" + std::to_string(d) + ".csv";
                write_file(dir / name, slot_series_csv(rep, d));
            }
            write_file(dir / (rep.campaign + ".json"), report_to_json(rep).dump(2) + "\n");
            if (rt.config().kind == CampaignKind::FlatCpm) {
                std::ostringstream h;
                rt.dump_quality_histogram(h);
                write_file(dir / (rep.campaign + "_quality_histogram.csv"), h.str());
            } else {
                std::ostringstream h;
                rt.dump_theta_histogram(h);
                write_file(dir / (rep.campaign + "_theta_histogram.csv"), h.str());
            }
        }
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Strategy comparison
// ---------------------------------------------------------------------------

namespace {

std::optional<double> cost_lift(const std::optional<double>& base,
                                const std::optional<double>& cand) {
    if (!base || !cand || *base <= 0.0) return std::nullopt;
    return (*base - *cand) / *base;
}

std::optional<double> rate_lift(const std::optional<double>& base,
                                const std::optional<double>& cand) {
    if (!base || !cand || *base <= 0.0) return std::nullopt;
    return (*cand - *base) / *base;
}

}  // namespace

Comparison compare_strategies(const std::vector<ExperimentConfig>& configs,
                              const std::string& out_dir) {
    if (configs.size() < 2)
        throw std::invalid_argument("compare_strategies: need at least two configs");
    for (std::size_t i = 1; i < configs.size(); ++i)
        if (configs[i].raw.at("world") != configs[0].raw.at("world"))
            throw std::invalid_argument("compare_strategies: configs do not share the world");

    Comparison cmp;
    for (const auto& config : configs) {
        auto reports = run_experiment(config, out_dir);
        for (const auto& rep : reports) {
            ComparisonRow row;
            row.name = rep.campaign;
            row.metrics = rep.metrics;
            cmp.rows.push_back(std::move(row));
        }
    }
    const auto& base = cmp.rows.front().metrics;
    for (std::size_t i = 0; i < cmp.rows.size(); ++i) {
        auto& row = cmp.rows[i];
        row.ctr_lift = rate_lift(base.ctr, row.metrics.ctr);
        row.ar_lift = rate_lift(base.ar, row.metrics.ar);
        row.ecpm_lift = cost_lift(base.ecpm_micros, row.metrics.ecpm_micros);
        row.ecpc_lift = cost_lift(base.ecpc_micros, row.metrics.ecpc_micros);
        row.ecpa_lift = cost_lift(base.ecpa_micros, row.metrics.ecpa_micros);
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(std::filesystem::path(out_dir) / "comparison.json",
                   comparison_to_json(cmp).dump(2) + "\n");
        write_file(std::filesystem::path(out_dir) / "comparison.txt", comparison_table(cmp));
    }
    return cmp;
}

json comparison_to_json(const Comparison& comparison) {
    json rows = json::array();
    for (const auto& r : comparison.rows) {
        rows.push_back(json{{"name", r.name},
                            {"total_spend_micros", r.metrics.total_spend},
                            {"impressions", r.metrics.impressions},
                            {"clicks", r.metrics.clicks},
                            {"conversions", r.metrics.conversions},
                            {"ctr", optional_to_json(r.metrics.ctr)},
                            {"ar", optional_to_json(r.metrics.ar)},
                            {"ecpm_micros", optional_to_json(r.metrics.ecpm_micros)},
                            {"ecpc_micros", optional_to_json(r.metrics.ecpc_micros)},
                            {"ecpa_micros", optional_to_json(r.metrics.ecpa_micros)},
                            {"ctr_lift", optional_to_json(r.ctr_lift)},
                            {"ar_lift", optional_to_json(r.ar_lift)},
                            {"ecpm_lift", optional_to_json(r.ecpm_lift)},
                            {"ecpc_lift", optional_to_json(r.ecpc_lift)},
                            {"ecpa_lift", optional_to_json(r.ecpa_lift)}});
    }
    return json{{"baseline", comparison.rows.front().name}, {"rows", rows}};
}

std::string comparison_table(const Comparison& comparison) {
    std::ostringstream out;
    auto fmt_opt = [](const std::optional<double>& v, double scale) {
        if (!v) return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", *v * scale);
        return std::string(buf);
    };
    out << "name,spend,impressions,ctr,ar,ecpc_micros,ecpa_micros,ctr_lift_pct,ar_lift_pct,"
           "ecpc_lift_pct,ecpa_lift_pct\n";
    for (const auto& r : comparison.rows) {
        out << r.name << ',' << format_money(r.metrics.total_spend) << ','
            << r.metrics.impressions << ',' << fmt_opt(r.metrics.ctr, 1.0) << ','
            << fmt_opt(r.metrics.ar, 1.0) << ',' << fmt_opt(r.metrics.ecpc_micros, 1.0) << ','
            << fmt_opt(r.metrics.ecpa_micros, 1.0) << ',' << fmt_opt(r.ctr_lift, 100.0) << ','
            << fmt_opt(r.ar_lift, 100.0) << ',' << fmt_opt(r.ecpc_lift, 100.0) << ','
            << fmt_opt(r.ecpa_lift, 100.0) << '\n';
    }
    return out.str();
}

}  // namespace pacer
