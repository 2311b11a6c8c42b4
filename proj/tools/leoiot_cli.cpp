// Scenario-driven front end: every subcommand reads the same scenario
// structure (defaults, optionally overridden by --scenario and flags), runs
// one experiment family, and writes tables plus plot-data CSVs and a
// manifest under the output directory.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "leoiot/scenario.hpp"

namespace {

using leoiot::scenario::RunReport;
using leoiot::scenario::Scenario;

struct CommonArgs {
    std::string scenario_path;
    std::string out_dir;
    bool has_seed = false;
    std::uint64_t seed = 0;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario_path, "Scenario JSON file");
    cmd->add_option("--out", args.out_dir, "Output directory (default from the scenario)");
    cmd->add_option("--seed", args.seed, "Master seed override")->each([&](const std::string&) {
        args.has_seed = true;
    });
    cmd->add_option("--threads", args.threads, "Worker threads for Monte-Carlo runs")
        ->check(CLI::Range(1, 256));
}

Scenario make_scenario(const CommonArgs& args) {
    Scenario s;
    if (!args.scenario_path.empty()) s = Scenario::load(args.scenario_path);
    if (args.has_seed) s.seed = args.seed;
    if (!args.out_dir.empty()) s.out_dir = args.out_dir;
    return s;
}

void print_report(const std::string& name, const Scenario& s, const RunReport& report) {
    for (const auto& line : report.summary) std::cout << line << '\n';
    std::cout << name << ": wrote " << report.files.size() << " files to " << s.out_dir << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LEO NB-IoT transmission-reduction simulator and analysis toolkit"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* generate = app.add_subcommand("generate", "Write synthetic device CSVs");
    add_common(generate, args);
    int gen_devices = 0;
    double gen_days = 0;
    generate->add_option("--devices", gen_devices, "Number of synthetic devices");
    generate->add_option("--days", gen_days, "Duration in days");

    auto* preprocess = app.add_subcommand("preprocess", "Resample, gap-fill and smooth a device CSV");
    add_common(preprocess, args);
    std::string input_csv;
    preprocess->add_option("--input", input_csv, "Device CSV to preprocess");

    auto* modes = app.add_subcommand("modes", "Transmission modes: reduction, RMSE, simultaneity");
    add_common(modes, args);
    std::string only_mode;
    modes->add_option("--mode", only_mode, "Run a single mode (M0..M3)");

    auto* traffic = app.add_subcommand("traffic", "Inter-transmission gap distribution and Poisson check");
    add_common(traffic, args);

    auto* collision = app.add_subcommand("collision", "NPRACH collision probability vs offered load");
    add_common(collision, args);
    long trials = 0;
    collision->add_option("--trials", trials, "Monte-Carlo trials per load point");

    auto* budget = app.add_subcommand("linkbudget", "Uplink SNR table for the Set-1/Set-4 presets");
    add_common(budget, args);

    auto* visibility = app.add_subcommand("visibility", "Pass duration vs max elevation curves");
    add_common(visibility, args);
    double altitude = 0;
    visibility->add_option("--altitude", altitude, "Orbit altitude in km");

    auto* effective = app.add_subcommand("effective-data", "Server-side effective data vs visibility");
    add_common(effective, args);
    double rate_bps = 0;
    effective->add_option("--rate", rate_bps, "Aggregate uplink rate in bit/s");

    auto* lifetime = app.add_subcommand("lifetime", "Battery lifetime grid per mode and inter-pass gap");
    add_common(lifetime, args);
    double battery = 0;
    lifetime->add_option("--battery", battery, "Battery capacity in mWh");

    auto* full = app.add_subcommand("report", "Run every experiment into one output directory");
    add_common(full, args);

    CLI11_PARSE(app, argc, argv);

    try {
        Scenario s = make_scenario(args);
        RunReport report;
        std::string name;
        if (*generate) {
            if (gen_devices > 0) s.synthetic.n_devices = gen_devices;
            if (gen_days > 0) s.synthetic.duration_s = static_cast<std::int64_t>(gen_days * 86400.0);
            name = "generate";
            report = run_generate(s);
        } else if (*preprocess) {
            if (!input_csv.empty()) s.input_csv = input_csv;
            name = "preprocess";
            report = run_preprocess(s);
        } else if (*modes) {
            if (!only_mode.empty()) s.modes = {leoiot::shewhart::parse_mode(only_mode)};
            name = "modes";
            report = run_modes(s);
        } else if (*traffic) {
            name = "traffic";
            report = run_traffic(s);
        } else if (*collision) {
            if (trials > 0) s.collision_trials = trials;
            name = "collision";
            report = run_collision(s, args.threads);
        } else if (*budget) {
            name = "linkbudget";
            report = run_linkbudget(s);
        } else if (*visibility) {
            if (altitude > 0) s.geometry.altitude_km = altitude;
            name = "visibility";
            report = run_visibility(s);
        } else if (*effective) {
            if (rate_bps > 0) s.aggregate_rate_bps = rate_bps;
            name = "effective-data";
            report = run_effective_data(s);
        } else if (*lifetime) {
            if (battery > 0) s.battery_mwh = battery;
            name = "lifetime";
            report = run_lifetime(s);
        } else {
            name = "report";
            report = run_report(s, args.threads);
        }
        print_report(name, s, report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
