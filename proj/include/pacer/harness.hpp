#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pacer/exchange_sim.hpp"

namespace pacer {

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct SlotRow {
    int day = 0;
    int slot = 0;
    Money planned = 0;
    Money spend = 0;
    double pacing_rate = 0.0;
    double win_rate = 0.0;
    std::int64_t requests = 0;
    std::int64_t bids = 0;
    std::int64_t impressions = 0;
    std::int64_t clicks = 0;
    std::int64_t conversions = 0;
};

struct RunMetrics {
    Money total_spend = 0;
    std::int64_t requests = 0;
    std::int64_t bids = 0;
    std::int64_t impressions = 0;
    std::int64_t clicks = 0;
    std::int64_t conversions = 0;
    std::optional<double> ecpm_micros;  // 1000 * spend / impressions
    std::optional<double> ecpc_micros;  // spend / clicks
    std::optional<double> ecpa_micros;  // spend / conversions
    std::optional<double> ctr;
    std::optional<double> ar;
    Money pacing_error_mean = 0;        // mean |spend - planned| per slot
    double pacing_error_pct = 0.0;      // as a fraction of the daily budget
    bool on_target = false;             // every day within daily_tolerance of budget
};

struct RunReport {
    std::string campaign;
    std::uint64_t seed = 0;
    std::string config_hash;
    int days = 0;
    int slots_per_day = 0;
    std::vector<SlotRow> rows;  // days * slots_per_day rows
    RunMetrics metrics;
    std::vector<GuardTrip> trips;
};

struct PacingError {
    Money mean_abs = 0;
    double pct_of_budget = 0.0;
};

// Mean per-slot |actual - ideal|, absolute and as a fraction of the budget.
PacingError pacing_error(std::span<const Money> actual, std::span<const Money> ideal,
                         Money daily_budget);

// Scalar metrics recomputed from the per-slot series.
RunMetrics compute_metrics(std::span<const SlotRow> rows, const CampaignConfig& cfg);

// ---------------------------------------------------------------------------
// Experiment configuration (JSON file)
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    WorldConfig world;
    std::vector<CampaignSetup> campaigns;
    nlohmann::json raw;  // canonical parsed config, for hashing and comparison
};

ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::string& path);
std::string config_hash_hex(const nlohmann::json& doc);

// ---------------------------------------------------------------------------
// Running and comparing
// ---------------------------------------------------------------------------

// Execute the configured world; returns one report per campaign. When
// out_dir is nonempty, writes per-day CSV series, a JSON report per
// campaign, and final histogram snapshots there.
std::vector<RunReport> run_experiment(const ExperimentConfig& config,
                                      const std::string& out_dir = {});

std::string slot_series_csv(const RunReport& report, int day);
nlohmann::json report_to_json(const RunReport& report);

struct ComparisonRow {
    std::string name;
    RunMetrics metrics;
    // Lift vs the baseline row: positive is better. Cost metrics use
    // (baseline - candidate) / baseline, rate metrics (candidate - baseline)
    // / baseline.
    std::optional<double> ctr_lift, ar_lift, ecpm_lift, ecpc_lift, ecpa_lift;
};

struct Comparison {
    std::vector<ComparisonRow> rows;  // rows[0] is the baseline
};

// Run every config over the identical world (same seed, same traffic) and
// tabulate metrics plus lift vs the first config. Configs must share the
// world section verbatim.
Comparison compare_strategies(const std::vector<ExperimentConfig>& configs,
                              const std::string& out_dir = {});

nlohmann::json comparison_to_json(const Comparison& comparison);
std::string comparison_table(const Comparison& comparison);

}  // namespace pacer
