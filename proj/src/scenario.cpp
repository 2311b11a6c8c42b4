#include "leoiot/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "leoiot/rng.hpp"

namespace leoiot::scenario {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error("scenario: " + path + ": " + what);
}

// Typed field reader; leaves `out` at its default when the key is absent.
template <typename T>
void read_field(const json& obj, const char* key, T& out, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception& e) {
        fail(path + "." + key, e.what());
    }
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(path + "." + it.key(), "unknown field");
    }
}

json synthetic_to_json(const timeseries::SyntheticConfig& c) {
    return json{{"n_devices", c.n_devices},
                {"duration_s", c.duration_s},
                {"cadence_s", c.cadence_s},
                {"start_time", c.start_time},
                {"temp_mean_c", c.temp_mean_c},
                {"temp_amplitude_c", c.temp_amplitude_c},
                {"temp_noise_sd", c.temp_noise_sd},
                {"rh_mean_pct", c.rh_mean_pct},
                {"rh_amplitude_pct", c.rh_amplitude_pct},
                {"rh_noise_sd", c.rh_noise_sd},
                {"pm10_baseline", c.pm10_baseline},
                {"pm10_reversion", c.pm10_reversion},
                {"pm10_noise_sd", c.pm10_noise_sd},
                {"burst_rate_per_day", c.burst_rate_per_day},
                {"burst_magnitude", c.burst_magnitude},
                {"pm25_fraction", c.pm25_fraction},
                {"pm25_noise_sd", c.pm25_noise_sd}};
}

void synthetic_from_json(const json& j, timeseries::SyntheticConfig& c, const std::string& path) {
    check_keys(j,
               {"n_devices", "duration_s", "cadence_s", "start_time", "temp_mean_c",
                "temp_amplitude_c", "temp_noise_sd", "rh_mean_pct", "rh_amplitude_pct",
                "rh_noise_sd", "pm10_baseline", "pm10_reversion", "pm10_noise_sd",
                "burst_rate_per_day", "burst_magnitude", "pm25_fraction", "pm25_noise_sd"},
               path);
    read_field(j, "n_devices", c.n_devices, path);
    read_field(j, "duration_s", c.duration_s, path);
    read_field(j, "cadence_s", c.cadence_s, path);
    read_field(j, "start_time", c.start_time, path);
    read_field(j, "temp_mean_c", c.temp_mean_c, path);
    read_field(j, "temp_amplitude_c", c.temp_amplitude_c, path);
    read_field(j, "temp_noise_sd", c.temp_noise_sd, path);
    read_field(j, "rh_mean_pct", c.rh_mean_pct, path);
    read_field(j, "rh_amplitude_pct", c.rh_amplitude_pct, path);
    read_field(j, "rh_noise_sd", c.rh_noise_sd, path);
    read_field(j, "pm10_baseline", c.pm10_baseline, path);
    read_field(j, "pm10_reversion", c.pm10_reversion, path);
    read_field(j, "pm10_noise_sd", c.pm10_noise_sd, path);
    read_field(j, "burst_rate_per_day", c.burst_rate_per_day, path);
    read_field(j, "burst_magnitude", c.burst_magnitude, path);
    read_field(j, "pm25_fraction", c.pm25_fraction, path);
    read_field(j, "pm25_noise_sd", c.pm25_noise_sd, path);
    try {
        c.validate();
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

}  // namespace

void Scenario::validate() const {
    synthetic.validate();
    thresholds.validate();
    geometry.validate();
    pass.validate();
    rach.validate();
    power.validate();
    if (moving_average_window < 1)
        throw std::invalid_argument("scenario: moving_average_window must be >= 1");
    if (!(sparse_month_max_missing >= 0.0 && sparse_month_max_missing <= 1.0))
        throw std::invalid_argument("scenario: sparse_month_max_missing must be in [0, 1]");
    if (modes.empty()) throw std::invalid_argument("scenario: modes list is empty");
    if (ml_model != "ols" && ml_model != "tree" && ml_model != "forest")
        throw std::invalid_argument("scenario: ml_model must be ols, tree or forest");
    if (ml_max_depth < 0 || ml_min_samples_split < 2 || ml_estimators < 1)
        throw std::invalid_argument("scenario: invalid ML hyperparameters");
    if (!(ml_train_fraction > 0.0 && ml_train_fraction < 1.0))
        throw std::invalid_argument("scenario: ml_train_fraction must be in (0, 1)");
    linkbudget::parse_param_set(radio_set);
    if (collision_trials < 1) throw std::invalid_argument("scenario: collision_trials must be >= 1");
    for (int n : collision_grid)
        if (n < 0) throw std::invalid_argument("scenario: collision_grid entries must be >= 0");
    if (!(target_p_coll > 0.0 && target_p_coll < 1.0))
        throw std::invalid_argument("scenario: target_p_coll must be in (0, 1)");
    if (!(aggregate_rate_bps > 0)) throw std::invalid_argument("scenario: aggregate rate must be > 0");
    for (double v : effective_visibility_s)
        if (!(v >= 0)) throw std::invalid_argument("scenario: visibility grid must be >= 0 s");
    if (!(energy_visibility_s > 0 && energy_sensing_period_s > 0))
        throw std::invalid_argument("scenario: energy visibility and sensing period must be > 0");
    if (!(battery_mwh > 0)) throw std::invalid_argument("scenario: battery capacity must be > 0");
    if (overhead_mws < 0) throw std::invalid_argument("scenario: overhead must be >= 0");
    if (gnss_per_pass < 0) throw std::invalid_argument("scenario: gnss_per_pass must be >= 0");
    for (double h : inter_pass_hours)
        if (!(h * 3600.0 > energy_visibility_s))
            throw std::invalid_argument("scenario: inter-pass durations must exceed the visibility window");
    for (const ModeDefaults& m : mode_defaults) {
        if (!(m.reduction_fraction >= 0.0 && m.reduction_fraction < 1.0))
            throw std::invalid_argument("scenario: mode reduction fractions must be in [0, 1)");
        if (m.payload_bytes != 50 && m.payload_bytes != 200)
            throw std::invalid_argument("scenario: mode payloads must be 50 or 200 bytes");
    }
}

std::string Scenario::to_canonical_json() const {
    json j;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["input_csv"] = input_csv;
    j["synthetic"] = synthetic_to_json(synthetic);
    j["moving_average_window"] = moving_average_window;
    j["sparse_month_max_missing"] = sparse_month_max_missing;
    j["thresholds"] = {{"temp", thresholds.temp},
                       {"rh", thresholds.rh},
                       {"pm25", thresholds.pm25},
                       {"pm10", thresholds.pm10},
                       {"aqi", thresholds.aqi}};
    std::vector<std::string> mode_names;
    for (auto m : modes) mode_names.push_back(shewhart::to_string(m));
    j["modes"] = mode_names;
    j["ml"] = {{"model", ml_model},
               {"max_depth", ml_max_depth},
               {"min_samples_split", ml_min_samples_split},
               {"n_estimators", ml_estimators},
               {"train_fraction", ml_train_fraction}};
    j["orbit"] = {{"altitude_km", geometry.altitude_km},
                  {"inclination_deg", geometry.inclination_deg},
                  {"earth_radius_km", geometry.earth_radius_km},
                  {"mu_km3_s2", geometry.mu_km3_s2},
                  {"earth_rot_rad_s", geometry.earth_rot_rad_s},
                  {"mask_angle_deg", pass.mask_angle_deg},
                  {"max_elevation_deg", pass.max_elevation_deg},
                  {"curve_altitudes_km", visibility_altitudes_km},
                  {"curve_mask_deg", visibility_mask_deg}};
    j["radio_set"] = radio_set;
    j["rach"] = {{"subcarriers", rach.subcarriers},
                 {"rao_period_ms", rach.rao_period_ms},
                 {"p_bo", rach.p_bo},
                 {"backoff_exponent", rach.backoff_exponent},
                 {"backoff_unit", rach.backoff_unit == access::RachConfig::BackoffUnit::Ms ? "ms" : "s"},
                 {"grid", collision_grid},
                 {"trials", collision_trials},
                 {"target_p_coll", target_p_coll}};
    j["effective_data"] = {{"aggregate_rate_bps", aggregate_rate_bps},
                           {"visibility_s", effective_visibility_s}};
    j["energy"] = {{"rx_ms", power.rx.duration_ms},
                   {"rx_mw", power.rx.power_mw},
                   {"tx50_ms", power.tx_50b.duration_ms},
                   {"tx200_ms", power.tx_200b.duration_ms},
                   {"tx_mw", power.tx_50b.power_mw},
                   {"idle_ms", power.idle.duration_ms},
                   {"idle_mw", power.idle.power_mw},
                   {"gnss_ms", power.gnss.duration_ms},
                   {"gnss_mw", power.gnss.power_mw},
                   {"sleep_mw", power.sleep_power_mw},
                   {"visibility_s", energy_visibility_s},
                   {"sensing_period_s", energy_sensing_period_s},
                   {"battery_mwh", battery_mwh},
                   {"overhead_mws", overhead_mws},
                   {"gnss_per_pass", gnss_per_pass},
                   {"inter_pass_hours", inter_pass_hours}};
    json defs = json::array();
    for (const ModeDefaults& m : mode_defaults)
        defs.push_back({{"name", m.name},
                        {"reduction", m.reduction_fraction},
                        {"payload_bytes", m.payload_bytes}});
    j["mode_defaults"] = defs;
    j["breakpoints_path"] = breakpoints_path;
    return j.dump(2);
}

std::uint64_t Scenario::config_hash() const { return rng::fnv1a64(to_canonical_json()); }

Scenario Scenario::from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error("scenario: cannot parse '" + origin + "': " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("scenario: '" + origin + "' must hold a JSON object");

    Scenario s;
    const std::string root = origin;
    check_keys(j,
               {"seed", "out_dir", "input_csv", "synthetic", "moving_average_window",
                "sparse_month_max_missing", "thresholds", "modes", "ml", "orbit", "radio_set",
                "rach", "effective_data", "energy", "mode_defaults", "breakpoints_path"},
               root);
    read_field(j, "seed", s.seed, root);
    read_field(j, "out_dir", s.out_dir, root);
    read_field(j, "input_csv", s.input_csv, root);
    read_field(j, "moving_average_window", s.moving_average_window, root);
    read_field(j, "sparse_month_max_missing", s.sparse_month_max_missing, root);
    read_field(j, "radio_set", s.radio_set, root);
    read_field(j, "breakpoints_path", s.breakpoints_path, root);

    if (j.contains("synthetic")) synthetic_from_json(j["synthetic"], s.synthetic, root + ".synthetic");

    if (j.contains("thresholds")) {
        const json& t = j["thresholds"];
        const std::string path = root + ".thresholds";
        check_keys(t, {"temp", "rh", "pm25", "pm10", "aqi"}, path);
        read_field(t, "temp", s.thresholds.temp, path);
        read_field(t, "rh", s.thresholds.rh, path);
        read_field(t, "pm25", s.thresholds.pm25, path);
        read_field(t, "pm10", s.thresholds.pm10, path);
        read_field(t, "aqi", s.thresholds.aqi, path);
    }

    if (j.contains("modes")) {
        s.modes.clear();
        const std::string path = root + ".modes";
        if (!j["modes"].is_array()) fail(path, "must be an array of mode names");
        for (const auto& m : j["modes"]) {
            if (!m.is_string()) fail(path, "must be an array of mode names");
            try {
                s.modes.push_back(shewhart::parse_mode(m.get<std::string>()));
            } catch (const std::exception& e) {
                fail(path, e.what());
            }
        }
    }

    if (j.contains("ml")) {
        const json& t = j["ml"];
        const std::string path = root + ".ml";
        check_keys(t, {"model", "max_depth", "min_samples_split", "n_estimators", "train_fraction"}, path);
        read_field(t, "model", s.ml_model, path);
        read_field(t, "max_depth", s.ml_max_depth, path);
        read_field(t, "min_samples_split", s.ml_min_samples_split, path);
        read_field(t, "n_estimators", s.ml_estimators, path);
        read_field(t, "train_fraction", s.ml_train_fraction, path);
    }

    if (j.contains("orbit")) {
        const json& t = j["orbit"];
        const std::string path = root + ".orbit";
        check_keys(t,
                   {"altitude_km", "inclination_deg", "earth_radius_km", "mu_km3_s2",
                    "earth_rot_rad_s", "mask_angle_deg", "max_elevation_deg", "curve_altitudes_km",
                    "curve_mask_deg"},
                   path);
        read_field(t, "altitude_km", s.geometry.altitude_km, path);
        read_field(t, "inclination_deg", s.geometry.inclination_deg, path);
        read_field(t, "earth_radius_km", s.geometry.earth_radius_km, path);
        read_field(t, "mu_km3_s2", s.geometry.mu_km3_s2, path);
        read_field(t, "earth_rot_rad_s", s.geometry.earth_rot_rad_s, path);
        read_field(t, "mask_angle_deg", s.pass.mask_angle_deg, path);
        read_field(t, "max_elevation_deg", s.pass.max_elevation_deg, path);
        read_field(t, "curve_altitudes_km", s.visibility_altitudes_km, path);
        read_field(t, "curve_mask_deg", s.visibility_mask_deg, path);
    }

    if (j.contains("rach")) {
        const json& t = j["rach"];
        const std::string path = root + ".rach";
        check_keys(t,
                   {"subcarriers", "rao_period_ms", "p_bo", "backoff_exponent", "backoff_unit",
                    "grid", "trials", "target_p_coll"},
                   path);
        read_field(t, "subcarriers", s.rach.subcarriers, path);
        read_field(t, "rao_period_ms", s.rach.rao_period_ms, path);
        read_field(t, "p_bo", s.rach.p_bo, path);
        read_field(t, "backoff_exponent", s.rach.backoff_exponent, path);
        std::string unit = s.rach.backoff_unit == access::RachConfig::BackoffUnit::Ms ? "ms" : "s";
        read_field(t, "backoff_unit", unit, path);
        if (unit == "ms")
            s.rach.backoff_unit = access::RachConfig::BackoffUnit::Ms;
        else if (unit == "s" || unit == "sec")
            s.rach.backoff_unit = access::RachConfig::BackoffUnit::Sec;
        else
            fail(path + ".backoff_unit", "must be 'ms' or 's'");
        read_field(t, "grid", s.collision_grid, path);
        read_field(t, "trials", s.collision_trials, path);
        read_field(t, "target_p_coll", s.target_p_coll, path);
    }

    if (j.contains("effective_data")) {
        const json& t = j["effective_data"];
        const std::string path = root + ".effective_data";
        check_keys(t, {"aggregate_rate_bps", "visibility_s"}, path);
        read_field(t, "aggregate_rate_bps", s.aggregate_rate_bps, path);
        read_field(t, "visibility_s", s.effective_visibility_s, path);
    }

    if (j.contains("energy")) {
        const json& t = j["energy"];
        const std::string path = root + ".energy";
        check_keys(t,
                   {"rx_ms", "rx_mw", "tx50_ms", "tx200_ms", "tx_mw", "idle_ms", "idle_mw",
                    "gnss_ms", "gnss_mw", "sleep_mw", "visibility_s", "sensing_period_s",
                    "battery_mwh", "overhead_mws", "gnss_per_pass", "inter_pass_hours"},
                   path);
        read_field(t, "rx_ms", s.power.rx.duration_ms, path);
        read_field(t, "rx_mw", s.power.rx.power_mw, path);
        read_field(t, "tx50_ms", s.power.tx_50b.duration_ms, path);
        read_field(t, "tx200_ms", s.power.tx_200b.duration_ms, path);
        double tx_mw = s.power.tx_50b.power_mw;
        read_field(t, "tx_mw", tx_mw, path);
        s.power.tx_50b.power_mw = tx_mw;
        s.power.tx_200b.power_mw = tx_mw;
        read_field(t, "idle_ms", s.power.idle.duration_ms, path);
        read_field(t, "idle_mw", s.power.idle.power_mw, path);
        read_field(t, "gnss_ms", s.power.gnss.duration_ms, path);
        read_field(t, "gnss_mw", s.power.gnss.power_mw, path);
        read_field(t, "sleep_mw", s.power.sleep_power_mw, path);
        read_field(t, "visibility_s", s.energy_visibility_s, path);
        read_field(t, "sensing_period_s", s.energy_sensing_period_s, path);
        read_field(t, "battery_mwh", s.battery_mwh, path);
        read_field(t, "overhead_mws", s.overhead_mws, path);
        read_field(t, "gnss_per_pass", s.gnss_per_pass, path);
        read_field(t, "inter_pass_hours", s.inter_pass_hours, path);
    }

    if (j.contains("mode_defaults")) {
        const std::string path = root + ".mode_defaults";
        if (!j["mode_defaults"].is_array()) fail(path, "must be an array");
        s.mode_defaults.clear();
        for (const auto& m : j["mode_defaults"]) {
            check_keys(m, {"name", "reduction", "payload_bytes"}, path);
            ModeDefaults d{"", 0.0, 200};
            read_field(m, "name", d.name, path);
            read_field(m, "reduction", d.reduction_fraction, path);
            read_field(m, "payload_bytes", d.payload_bytes, path);
            if (d.name.empty()) fail(path, "mode entry needs a name");
            s.mode_defaults.push_back(std::move(d));
        }
    }

    try {
        s.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("scenario: ") + origin + ": " + e.what());
    }
    return s;
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scenario: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), path);
}

}  // namespace leoiot::scenario
