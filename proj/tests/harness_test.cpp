#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pacer/harness.hpp"

using namespace pacer;
using nlohmann::json;

namespace {

json base_config(std::uint64_t seed = 5) {
    return json{
        {"world",
         {{"slots_per_day", 8},
          {"days", 1},
          {"seed", seed},
          {"base_volume", 1500},
          {"rate_mean", 0.01},
          {"rate_sigma", 0.5},
          {"sites", 20},
          {"site_quality_spread", 0.5},
          {"competitor", {{"median_bid_micros", 1500.0}, {"log_scale", 0.4}}},
          {"click_delay_mean_slots", 1.0},
          {"conversion_delay_mean_slots", 2.0}}},
        {"campaigns",
         json::array(
             {{{"name", "flat"},
               {"kind", "flat_cpm"},
               {"daily_budget_micros", 12'000'000},
               {"fixed_bid_micros", 2'000},
               {"bid_cap_micros", 4'000},
               {"goal", "ctr"},
               {"interval_tolerance_micros", 150'000},
               {"daily_tolerance_micros", 600'000},
               {"estimator", {{"kind", "noisy_oracle"}, {"sigma", 0.3}, {"bias", 1.0}}}}})}};
}

}  // namespace

TEST_CASE("config parsing accepts the documented schema") {
    auto cfg = parse_experiment_config(base_config());
    CHECK(cfg.world.slots() == 8);
    CHECK(cfg.world.traffic.base_volume == 1500);
    CHECK(cfg.campaigns.size() == 1);
    CHECK(cfg.campaigns[0].config.fixed_bid == 2'000);
    CHECK(cfg.campaigns[0].estimator.noise_sigma == doctest::Approx(0.3));
}

TEST_CASE("config parsing rejects unknown keys and bad values") {
    auto doc = base_config();
    doc["world"]["typo_key"] = 1;
    CHECK_THROWS_WITH_AS(parse_experiment_config(doc), "world: unknown key 'typo_key'",
                         std::invalid_argument);

    doc = base_config();
    doc["campaigns"][0]["selection"] = "sometimes";
    CHECK_THROWS_AS(parse_experiment_config(doc), std::invalid_argument);

    doc = base_config();
    doc["campaigns"][0]["fixed_bid_micros"] = 0;
    CHECK_THROWS_AS(parse_experiment_config(doc), std::invalid_argument);

    doc = base_config();
    doc["campaigns"] = json::array();
    CHECK_THROWS_AS(parse_experiment_config(doc), std::invalid_argument);

    doc = base_config();
    doc["world"].erase("competitor");
    CHECK_THROWS_AS(parse_experiment_config(doc), std::invalid_argument);
}

TEST_CASE("pacing error") {
    std::vector<Money> ideal{10, 10, 10, 10};
    SUBCASE("identical series have zero error") {
        auto e = pacing_error(ideal, ideal, 100);
        CHECK(e.mean_abs == 0);
        CHECK(e.pct_of_budget == 0.0);
    }
    SUBCASE("constant offset") {
        // 0.5 offset per slot against a budget of 100.
        std::vector<Money> actual{10'500'000, 10'500'000, 10'500'000, 10'500'000};
        std::vector<Money> plan{10'000'000, 10'000'000, 10'000'000, 10'000'000};
        auto e = pacing_error(actual, plan, 100'000'000);
        CHECK(e.mean_abs == 500'000);
        CHECK(e.pct_of_budget == doctest::Approx(0.005));
    }
    SUBCASE("length mismatch is an error") {
        std::vector<Money> actual{1, 2};
        CHECK_THROWS_AS(pacing_error(actual, ideal, 100), std::invalid_argument);
    }
}

TEST_CASE("run_experiment produces a consistent report") {
    auto cfg = parse_experiment_config(base_config());
    auto reports = run_experiment(cfg);
    REQUIRE(reports.size() == 1);
    const auto& rep = reports[0];
    CHECK(rep.rows.size() == 8);
    CHECK(rep.campaign == "flat");

    // Scalar metrics must be recomputable from the series, exactly.
    auto again = compute_metrics(rep.rows, cfg.campaigns[0].config);
    CHECK(again.total_spend == rep.metrics.total_spend);
    CHECK(again.impressions == rep.metrics.impressions);
    CHECK(again.clicks == rep.metrics.clicks);
    CHECK(again.pacing_error_mean == rep.metrics.pacing_error_mean);
    CHECK(again.pacing_error_pct == rep.metrics.pacing_error_pct);

    Money spend = 0;
    for (const auto& r : rep.rows) spend += r.spend;
    CHECK(spend == rep.metrics.total_spend);
    CHECK(rep.metrics.total_spend <= cfg.campaigns[0].config.daily_budget +
                                         cfg.campaigns[0].config.bid_cap);
}

TEST_CASE("zero-budget campaign spends nothing") {
    auto doc = base_config();
    doc["campaigns"][0]["daily_budget_micros"] = 0;
    auto cfg = parse_experiment_config(doc);
    auto reports = run_experiment(cfg);
    for (const auto& r : reports[0].rows) {
        CHECK(r.spend == 0);
        CHECK(r.impressions == 0);
    }
    CHECK(reports[0].metrics.total_spend == 0);
}

TEST_CASE("csv round trip reproduces the series") {
    auto cfg = parse_experiment_config(base_config());
    auto reports = run_experiment(cfg);
    const auto csv = slot_series_csv(reports[0], 0);

    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "slot,ideal_spend_micros,actual_spend_micros,pacing_rate,win_rate,requests,bids,"
          "impressions,clicks,conversions");
    int row = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        REQUIRE(fields.size() == 10);
        const auto& r = reports[0].rows[row];
        CHECK(std::stoi(fields[0]) == r.slot);
        CHECK(std::stoll(fields[1]) == r.planned);
        CHECK(std::stoll(fields[2]) == r.spend);
        CHECK(std::stoll(fields[5]) == r.requests);
        CHECK(std::stoll(fields[6]) == r.bids);
        CHECK(std::stoll(fields[7]) == r.impressions);
        CHECK(std::stoll(fields[8]) == r.clicks);
        CHECK(std::stoll(fields[9]) == r.conversions);
        ++row;
    }
    CHECK(row == 8);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
    auto cfg = parse_experiment_config(base_config());
    auto a = run_experiment(cfg);
    auto b = run_experiment(cfg);
    CHECK(slot_series_csv(a[0], 0) == slot_series_csv(b[0], 0));
    CHECK(report_to_json(a[0]).dump() == report_to_json(b[0]).dump());
    CHECK(config_hash_hex(cfg.raw) == config_hash_hex(cfg.raw));
}

TEST_CASE("compare_strategies") {
    auto baseline = base_config();
    auto candidate = base_config();
    candidate["campaigns"][0]["name"] = "flat2";

    SUBCASE("identical configs produce zero lift") {
        auto cmp = compare_strategies(
            {parse_experiment_config(baseline), parse_experiment_config(candidate)});
        REQUIRE(cmp.rows.size() == 2);
        if (cmp.rows[1].ctr_lift) CHECK(*cmp.rows[1].ctr_lift == doctest::Approx(0.0));
        if (cmp.rows[1].ecpc_lift) CHECK(*cmp.rows[1].ecpc_lift == doctest::Approx(0.0));
        CHECK(cmp.rows[0].metrics.total_spend == cmp.rows[1].metrics.total_spend);
    }
    SUBCASE("swapping configs flips the lift sign") {
        auto c2 = base_config();
        c2["campaigns"][0]["name"] = "rand";
        c2["campaigns"][0]["selection"] = "random";
        auto ab = compare_strategies(
            {parse_experiment_config(baseline), parse_experiment_config(c2)});
        auto ba = compare_strategies(
            {parse_experiment_config(c2), parse_experiment_config(baseline)});
        REQUIRE(ab.rows.size() == 2);
        REQUIRE(ba.rows.size() == 2);
        if (ab.rows[1].ctr_lift && ba.rows[1].ctr_lift && *ab.rows[1].ctr_lift != 0.0) {
            CHECK(std::signbit(*ab.rows[1].ctr_lift) != std::signbit(*ba.rows[1].ctr_lift));
        }
    }
    SUBCASE("different worlds are rejected") {
        auto other = base_config(6);  // different seed -> different world
        CHECK_THROWS_AS(compare_strategies({parse_experiment_config(baseline),
                                            parse_experiment_config(other)}),
                        std::invalid_argument);
    }
    SUBCASE("fewer than two configs is an error") {
        CHECK_THROWS_AS(compare_strategies({parse_experiment_config(baseline)}),
                        std::invalid_argument);
    }
}

TEST_CASE("run_experiment writes output files") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "pacer_harness_test_out";
    fs::remove_all(dir);
    auto cfg = parse_experiment_config(base_config());
    run_experiment(cfg, dir.string());
    CHECK(fs::exists(dir / "flat.csv"));
    CHECK(fs::exists(dir / "flat.json"));
    CHECK(fs::exists(dir / "flat_quality_histogram.csv"));

    std::ifstream in(dir / "flat.json");
    json doc;
    in >> doc;
    CHECK(doc.at("campaign") == "flat");
    CHECK(doc.at("config_hash") == config_hash_hex(cfg.raw));
    CHECK(doc.at("metrics").contains("pacing_error_pct_of_budget"));
    fs::remove_all(dir);
}

TEST_CASE("perfect estimator calibration: eCPA tracks G times the pay ratio") {
    // Constant true rate, perfect oracle, critical region, clearing prices
    // pinned just below the bid via the floor: eCPA must approach
    // G * (paid / bid).
    const double rate = 0.02;
    const Money goal = 1'000'000;  // $1 per action
    const Money base = static_cast<Money>(rate * goal);  // 20'000 micros

    json doc{{"world",
              {{"slots_per_day", 8},
               {"days", 1},
               {"seed", 17},
               {"base_volume", 4'000},
               {"rate_mean", rate},
               {"rate_sigma", 0.0},
               {"competitor",
                {{"median_bid_micros", 100.0},
                 {"log_scale", 0.2},
                 {"floor_micros", base - 1}}},
               {"conversion_delay_mean_slots", 0.0}}},
             {"campaigns",
              json::array({{{"name", "dcpm"},
                            {"kind", "dynamic_cpm"},
                            {"daily_budget_micros", 400'000'000},
                            {"goal", "cpa"},
                            {"goal_value_micros", goal},
                            {"bid_cap_micros", 100'000},
                            {"beta1", 0.0},   // never Safe
                            {"beta2", 1.0},   // never Danger
                            {"min_pacing_rate", 1.0},
                            {"interval_tolerance_micros", 400'000'000},
                            {"daily_tolerance_micros", 400'000'000},
                            {"estimator", {{"kind", "noisy_oracle"}, {"sigma", 0.0}}}}})}};
    auto cfg = parse_experiment_config(doc);
    auto reports = run_experiment(cfg);
    const auto& m = reports[0].metrics;
    REQUIRE(m.conversions > 300);
    REQUIRE(m.ecpa_micros.has_value());
    const double pay_ratio = static_cast<double>(base - 1) / static_cast<double>(base);
    CHECK(*m.ecpa_micros ==
          doctest::Approx(static_cast<double>(goal) * pay_ratio).epsilon(0.15));
}

TEST_CASE("multi-day run with the hierarchical estimator and learned pdf") {
    json doc = base_config(23);
    doc["world"]["days"] = 3;
    doc["campaigns"][0]["estimator"] = {{"kind", "hierarchical"}, {"prior_strength", 100}};
    doc["campaigns"][0]["strategy"] = "blended";
    doc["campaigns"][0]["blend_weight"] = 0.5;
    doc["campaigns"][0]["learn_performance_pdf"] = true;
    auto cfg = parse_experiment_config(doc);
    auto reports = run_experiment(cfg);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].rows.size() == 24);
    // Budget resets daily; each day respects the cap plus one clearing price.
    for (int d = 0; d < 3; ++d) {
        Money day_spend = 0;
        for (const auto& r : reports[0].rows)
            if (r.day == d) day_spend += r.spend;
        CHECK(day_spend <= cfg.campaigns[0].config.daily_budget +
                               cfg.campaigns[0].config.bid_cap);
    }
    // Determinism holds across the full multi-day path.
    auto again = run_experiment(cfg);
    CHECK(report_to_json(again[0]).dump() == report_to_json(reports[0]).dump());
}

TEST_CASE("cold start campaign explores recommended sites first") {
    json doc = base_config(29);
    doc["campaigns"][0]["cold_start"] = {{"epsilon", 0.05},
                                         {"recommended_sites", {3, 4}},
                                         {"exploration_bid_micros", 1'500},
                                         {"maturity_impressions", 1'000'000},
                                         {"maturity_events", 1'000'000}};
    auto cfg = parse_experiment_config(doc);
    auto reports = run_experiment(cfg);
    // Immature all day: every bid is exploration, and spend stays guarded.
    CHECK(reports[0].metrics.bids > 0);
    CHECK(reports[0].metrics.total_spend <= cfg.campaigns[0].config.daily_budget +
                                                cfg.campaigns[0].config.bid_cap);
}
