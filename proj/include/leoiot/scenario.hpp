#ifndef LEOIOT_SCENARIO_HPP
#define LEOIOT_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "leoiot/access.hpp"
#include "leoiot/energy.hpp"
#include "leoiot/linkbudget.hpp"
#include "leoiot/orbit.hpp"
#include "leoiot/shewhart.hpp"
#include "leoiot/timeseries.hpp"

namespace leoiot::scenario {

inline constexpr const char* kVersion = "0.1.0";

/// Per-mode defaults used by the effective-data and lifetime grids when they
/// run without measured logs.
struct ModeDefaults {
    std::string name;
    double reduction_fraction;
    int payload_bytes;
};

/// One named experiment configuration. Everything that influences an output
/// byte lives here; (scenario, seed) fully determines every emitted file.
struct Scenario {
    std::uint64_t seed = 42;
    std::string out_dir = "out";

    // data source: a device CSV, or the synthetic generator when empty
    std::string input_csv;
    timeseries::SyntheticConfig synthetic;
    int moving_average_window = 5;
    double sparse_month_max_missing = 0.70;

    shewhart::Threshold thresholds;
    std::vector<shewhart::Mode> modes = {shewhart::Mode::M0, shewhart::Mode::M1,
                                         shewhart::Mode::M2, shewhart::Mode::M3};

    std::string ml_model = "ols";  // ols | tree | forest
    int ml_max_depth = 10;
    int ml_min_samples_split = 5;
    int ml_estimators = 100;
    double ml_train_fraction = 0.8;

    orbit::OrbitGeometry geometry;
    orbit::PassSpec pass;
    std::vector<double> visibility_altitudes_km = {500, 600, 800, 1200};
    std::vector<double> visibility_mask_deg = {0, 30};

    std::string radio_set = "Set-4";

    access::RachConfig rach;
    std::vector<int> collision_grid = {1, 2, 5, 10, 25, 42, 57, 100, 200, 400, 800, 1600};
    long collision_trials = 20000;
    double target_p_coll = 0.4;

    double aggregate_rate_bps = access::kDefaultAggregateRateBps;
    std::vector<double> effective_visibility_s = {30, 60, 120, 180, 240, 300, 360, 420, 480, 540, 600};

    energy::PowerProfile power;
    double energy_visibility_s = 300;
    double energy_sensing_period_s = 30;
    double battery_mwh = 5000;
    double overhead_mws = 0;
    int gnss_per_pass = 1;
    std::vector<double> inter_pass_hours = {2, 6, 12, 24};

    // reported reductions for the parameterized grids
    std::vector<ModeDefaults> mode_defaults = {{"baseline", 0.0, 200},
                                               {"M1", 0.8716, 200},
                                               {"M2-200B", 0.8833, 200},
                                               {"M2-50B", 0.8833, 50},
                                               {"M3-200B", 0.9654, 200},
                                               {"M3-50B", 0.9654, 50}};

    std::string breakpoints_path;  // empty -> built-in CPCB table

    void validate() const;
    std::string to_canonical_json() const;
    std::uint64_t config_hash() const;

    /// Parses a scenario file, reporting unknown or invalid fields with their
    /// JSON path.
    static Scenario load(const std::string& path);
    static Scenario from_json_text(const std::string& text, const std::string& origin);
};

struct RunReport {
    std::vector<std::string> files;   // relative paths written
    std::vector<std::string> summary; // human-readable result lines
};

RunReport run_generate(const Scenario& s);
RunReport run_preprocess(const Scenario& s);
RunReport run_modes(const Scenario& s);
RunReport run_traffic(const Scenario& s);
RunReport run_collision(const Scenario& s, int threads = 1);
RunReport run_linkbudget(const Scenario& s);
RunReport run_visibility(const Scenario& s);
RunReport run_effective_data(const Scenario& s);
RunReport run_lifetime(const Scenario& s);
RunReport run_report(const Scenario& s, int threads = 1);

}  // namespace leoiot::scenario

#endif
