// Command-line front end: run simulations, compare strategies over a shared
// world, and print stored run reports.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "pacer/harness.hpp"

namespace {

void print_report_summary(const pacer::RunReport& rep) {
    const auto& m = rep.metrics;
    auto opt = [](const std::optional<double>& v) {
        return v ? std::to_string(*v) : std::string("-");
    };
    std::cout << rep.campaign << " (seed " << rep.seed << ", " << rep.days << " day"
              << (rep.days == 1 ? "" : "s") << ")\n"
              << "  spend          " << pacer::format_money(m.total_spend) << "\n"
              << "  requests       " << m.requests << "\n"
              << "  bids           " << m.bids << "\n"
              << "  impressions    " << m.impressions << "\n"
              << "  clicks         " << m.clicks << "\n"
              << "  conversions    " << m.conversions << "\n"
              << "  ctr            " << opt(m.ctr) << "\n"
              << "  ar             " << opt(m.ar) << "\n"
              << "  ecpm_micros    " << opt(m.ecpm_micros) << "\n"
              << "  ecpc_micros    " << opt(m.ecpc_micros) << "\n"
              << "  ecpa_micros    " << opt(m.ecpa_micros) << "\n"
              << "  pacing_error   " << pacer::format_money(m.pacing_error_mean) << " per slot ("
              << m.pacing_error_pct * 100.0 << "% of budget)\n"
              << "  on_target      " << (m.on_target ? "yes" : "no") << "\n"
              << "  guard_trips    " << rep.trips.size() << "\n";
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 const std::optional<std::uint64_t>& seed) {
    auto config = pacer::load_experiment_config(config_path);
    if (seed) {
        config.world.seed = *seed;
        config.raw["world"]["seed"] = *seed;
    }
    const auto reports = pacer::run_experiment(config, out_dir);
    for (const auto& rep : reports) print_report_summary(rep);
    if (!out_dir.empty()) std::cout << "wrote " << out_dir << "\n";
    return 0;
}

int cmd_compare(const std::vector<std::string>& config_paths, const std::string& out_dir) {
    std::vector<pacer::ExperimentConfig> configs;
    for (const auto& p : config_paths) configs.push_back(pacer::load_experiment_config(p));
    const auto cmp = pacer::compare_strategies(configs, out_dir);
    std::cout << pacer::comparison_table(cmp);
    if (!out_dir.empty()) std::cout << "wrote " << out_dir << "\n";
    return 0;
}

int cmd_report(const std::string& run_dir) {
    namespace fs = std::filesystem;
    bool found = false;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(run_dir))
        if (entry.path().extension() == ".json" && entry.path().filename() != "comparison.json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        std::ifstream in(path);
        nlohmann::json doc;
        in >> doc;
        if (!doc.contains("metrics")) continue;
        found = true;
        const auto& m = doc.at("metrics");
        auto opt = [&](const char* key) {
            return m.at(key).is_null() ? std::string("-") : m.at(key).dump();
        };
        std::cout << doc.at("campaign").get<std::string>() << "\n"
                  << "  spend_micros   " << m.at("total_spend_micros") << "\n"
                  << "  impressions    " << m.at("impressions") << "\n"
                  << "  clicks         " << m.at("clicks") << "\n"
                  << "  conversions    " << m.at("conversions") << "\n"
                  << "  ctr            " << opt("ctr") << "\n"
                  << "  ar             " << opt("ar") << "\n"
                  << "  ecpm_micros    " << opt("ecpm_micros") << "\n"
                  << "  ecpc_micros    " << opt("ecpc_micros") << "\n"
                  << "  ecpa_micros    " << opt("ecpa_micros") << "\n"
                  << "  pacing_error   " << m.at("pacing_error_mean_micros") << " micros/slot\n"
                  << "  on_target      " << m.at("on_target") << "\n";
    }
    if (!found) {
        std::cerr << "no run reports found in " << run_dir << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Budget pacing and bid optimization simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, run_dir;
    std::vector<std::string> config_paths;
    std::optional<std::uint64_t> seed;

    auto* simulate = app.add_subcommand("simulate", "Run one experiment config");
    simulate->add_option("--config", config_path, "Experiment config JSON")->required();
    simulate->add_option("--out", out_dir, "Output directory for CSV/JSON reports");
    simulate->add_option("--seed", seed, "Override the world seed");

    auto* compare = app.add_subcommand("compare", "Run several configs over one shared world");
    compare->add_option("--configs", config_paths, "Config JSONs (first is the baseline)")
        ->required()
        ->expected(-2);
    compare->add_option("--out", out_dir, "Output directory");

    auto* report = app.add_subcommand("report", "Print metrics of a stored run");
    report->add_option("--run", run_dir, "Run output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(config_path, out_dir, seed);
        if (compare->parsed()) return cmd_compare(config_paths, out_dir);
        if (report->parsed()) return cmd_report(run_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
