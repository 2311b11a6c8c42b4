#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "leoiot/mlpredict.hpp"
#include "leoiot/report.hpp"
#include "leoiot/rng.hpp"
#include "leoiot/scenario.hpp"
#include "leoiot/traffic.hpp"

namespace leoiot::scenario {

namespace {

using report::fmt_f;
using report::fmt_g;
using report::OutputDir;
using report::TableWriter;

std::string sanitize(std::string name) {
    for (char& c : name)
        if (c == '/' || c == '\\' || c == ' ' || c == ':') c = '_';
    return name;
}

airquality::BreakpointTable load_table(const Scenario& s) {
    if (s.breakpoints_path.empty()) return airquality::BreakpointTable::cpcb_default();
    return airquality::BreakpointTable::load(s.breakpoints_path);
}

std::uint64_t synthetic_seed(const Scenario& s) {
    return rng::derive_seed(rng::derive_seed(s.seed, "timeseries.synthetic"), s.synthetic.seed);
}

std::vector<timeseries::SensorSeries> generate_devices(const Scenario& s) {
    timeseries::SyntheticConfig cfg = s.synthetic;
    cfg.seed = synthetic_seed(s);
    return timeseries::generate_synthetic(cfg);
}

struct PreprocessStats {
    std::size_t raw_records = 0;
    std::size_t row_errors = 0;
    std::vector<timeseries::RowError> first_errors;
    std::size_t devices_in = 0;
    std::size_t device_months_kept = 0;
};

/// The full ingest pipeline: grid at the sensing cadence, drop sparse
/// device-months, interpolate, smooth.
std::vector<timeseries::SensorSeries> preprocess_csv(const Scenario& s, PreprocessStats* stats) {
    const timeseries::IngestResult ingest = timeseries::ingest_csv(s.input_csv);
    std::map<std::string, std::vector<timeseries::RawRecord>> by_device;
    for (const auto& r : ingest.records) by_device[r.device_id].push_back(r);

    std::vector<timeseries::SensorSeries> gridded;
    for (const auto& [id, records] : by_device)
        gridded.push_back(timeseries::resample(records, s.synthetic.cadence_s));

    std::vector<timeseries::SensorSeries> months =
        timeseries::discard_sparse_months(gridded, s.sparse_month_max_missing);
    std::vector<timeseries::SensorSeries> out;
    for (timeseries::SensorSeries& m : months) {
        timeseries::interpolate_missing(m);
        out.push_back(timeseries::moving_average(m, s.moving_average_window));
    }
    if (stats) {
        stats->raw_records = ingest.records.size();
        stats->row_errors = ingest.row_errors.size();
        stats->first_errors.assign(ingest.row_errors.begin(),
                                   ingest.row_errors.begin() +
                                       std::min<std::size_t>(ingest.row_errors.size(), 20));
        stats->devices_in = by_device.size();
        stats->device_months_kept = out.size();
    }
    return out;
}

std::vector<timeseries::SensorSeries> device_series(const Scenario& s) {
    if (!s.input_csv.empty()) return preprocess_csv(s, nullptr);
    std::vector<timeseries::SensorSeries> devices = generate_devices(s);
    for (auto& d : devices) d = timeseries::moving_average(d, s.moving_average_window);
    return devices;
}

struct DevicePredictor {
    mlpredict::Predictor model;
    mlpredict::FitReport report;
};

DevicePredictor fit_device_predictor(const Scenario& s, const timeseries::SensorSeries& series,
                                     std::uint64_t seed) {
    std::vector<double> x(series.size()), y(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        x[i] = series.samples[i].pm10;
        y[i] = series.samples[i].pm25;
    }
    const std::size_t split = std::max<std::size_t>(
        2, static_cast<std::size_t>(static_cast<double>(series.size()) * s.ml_train_fraction));
    if (split >= series.size())
        throw std::runtime_error("ml: series too short for a train/validation split on device " +
                                 series.device_id);
    const std::span<const double> xt(x.data(), split), yt(y.data(), split);
    const std::span<const double> xv(x.data() + split, x.size() - split);
    const std::span<const double> yv(y.data() + split, y.size() - split);

    DevicePredictor out;
    if (s.ml_model == "ols") {
        out.model = mlpredict::Predictor(mlpredict::fit_ols(xt, yt));
    } else if (s.ml_model == "tree") {
        out.model = mlpredict::Predictor(
            mlpredict::fit_tree(xt, yt, s.ml_max_depth, s.ml_min_samples_split));
    } else {
        out.model = mlpredict::Predictor(mlpredict::fit_forest(
            xt, yt, s.ml_estimators, s.ml_max_depth, s.ml_min_samples_split, seed));
    }
    out.report = mlpredict::evaluate(out.model.fn(), xv, yv);
    return out;
}

struct ModesData {
    std::vector<timeseries::SensorSeries> devices;
    std::vector<DevicePredictor> predictors;                       // per device
    std::map<shewhart::Mode, std::vector<shewhart::ModeResult>> results;  // per mode, per device
};

ModesData run_all_modes(const Scenario& s) {
    ModesData data;
    data.devices = device_series(s);
    if (data.devices.empty()) throw std::runtime_error("modes: no device series to process");
    const airquality::BreakpointTable table = load_table(s);
    const std::uint64_t ml_seed = rng::derive_seed(s.seed, "mlpredict");

    data.predictors.reserve(data.devices.size());
    for (std::size_t d = 0; d < data.devices.size(); ++d)
        data.predictors.push_back(
            fit_device_predictor(s, data.devices[d], rng::derive_seed(ml_seed, d)));

    for (shewhart::Mode mode : s.modes) {
        auto& per_device = data.results[mode];
        per_device.reserve(data.devices.size());
        for (std::size_t d = 0; d < data.devices.size(); ++d)
            per_device.push_back(shewhart::run_mode(data.devices[d], mode, s.thresholds,
                                                    data.predictors[d].model.fn(), table));
    }
    return data;
}

std::string events_csv(const std::vector<shewhart::ModeResult>& results) {
    std::string out = "device_id,slot,temp,rh,pm25,pm10,payload_bytes\n";
    for (const auto& r : results) {
        for (const shewhart::Event& e : r.log.events) {
            out += r.log.device_id + ',' + std::to_string(e.slot);
            for (int f = 0; f < timeseries::kFieldCount; ++f) {
                out += ',';
                if (e.sent[static_cast<std::size_t>(f)])
                    out += fmt_f(e.values[static_cast<std::size_t>(f)], 6);
            }
            out += ',' + std::to_string(e.payload_bytes) + '\n';
        }
    }
    return out;
}

RunReport finish(const Scenario& s, OutputDir& out, std::vector<std::string> summary) {
    out.write_manifest(s.config_hash(), s.seed, kVersion);
    RunReport r;
    for (const auto& f : out.files()) r.files.push_back(f.name);
    r.summary = std::move(summary);
    return r;
}

std::vector<std::string> do_linkbudget(const Scenario& s, OutputDir& out) {
    const auto rows = linkbudget::table3_report(s.geometry);
    TableWriter table({"Set", "Elev[deg]", "Beam", "BW[kHz]", "Slant[km]", "FSPL[dB]", "SNR[dB]"});
    std::string csv =
        "set,elevation_deg,beam,bandwidth_hz,slant_range_km,eirp_dbw,g_over_t_db,boltzmann_db,"
        "fspl_db,atmospheric_db,shadow_db,scintillation_db,polarization_db,additional_db,"
        "bandwidth_db,snr_db\n";
    std::vector<std::string> summary;
    for (const auto& r : rows) {
        const auto& b = r.breakdown;
        table.add_row({linkbudget::to_string(r.set), fmt_f(r.elevation_deg, 0),
                       r.beam_edge ? "edge" : "centre", fmt_f(r.bandwidth_hz / 1000.0, 2),
                       fmt_f(r.slant_range_km, 1), fmt_f(-b.fspl_db, 2), fmt_f(b.snr_db, 2)});
        csv += linkbudget::to_string(r.set) + ',' + fmt_f(r.elevation_deg, 0) + ',' +
               (r.beam_edge ? "edge" : "centre") + ',' + fmt_g(r.bandwidth_hz) + ',' +
               fmt_f(r.slant_range_km, 3) + ',' + fmt_f(b.eirp_dbw, 2) + ',' +
               fmt_f(b.g_over_t_db, 2) + ',' + fmt_f(b.boltzmann_db, 2) + ',' + fmt_f(b.fspl_db, 4) +
               ',' + fmt_f(b.atmospheric_db, 2) + ',' + fmt_f(b.shadow_db, 2) + ',' +
               fmt_f(b.scintillation_db, 2) + ',' + fmt_f(b.polarization_db, 2) + ',' +
               fmt_f(b.additional_db, 2) + ',' + fmt_f(b.bandwidth_db, 4) + ',' +
               fmt_f(b.snr_db, 4) + '\n';
        summary.push_back("SNR " + linkbudget::to_string(r.set) + " " + fmt_f(r.elevation_deg, 0) +
                          "deg " + fmt_f(r.bandwidth_hz / 1000.0, 2) + "kHz = " +
                          fmt_f(b.snr_db, 2) + " dB");
    }
    out.write("linkbudget_table.txt", table.str());
    out.write("linkbudget.csv", csv);
    return summary;
}

std::vector<std::string> do_visibility(const Scenario& s, OutputDir& out) {
    std::string csv = "altitude_km,mask_deg,theta_max_deg,duration_s\n";
    for (double alt : s.visibility_altitudes_km) {
        orbit::OrbitGeometry g = s.geometry;
        g.altitude_km = alt;
        for (double mask : s.visibility_mask_deg) {
            const int start = static_cast<int>(std::ceil(std::max(mask, 1.0)));
            for (int theta = start; theta <= 90; ++theta) {
                const double tau = orbit::visibility_duration_s({mask, static_cast<double>(theta)}, g);
                csv += fmt_f(alt, 0) + ',' + fmt_f(mask, 0) + ',' + std::to_string(theta) + ',' +
                       fmt_f(tau, 3) + '\n';
            }
        }
    }
    out.write("visibility_curves.csv", csv);

    const double tau_mask = orbit::visibility_duration_s(s.pass, s.geometry);
    const double tau_zero = orbit::visibility_duration_s({0.0, s.pass.max_elevation_deg}, s.geometry);
    std::vector<std::string> summary = {
        "visibility mask=" + fmt_f(s.pass.mask_angle_deg, 0) + "deg: " + fmt_f(tau_mask, 1) + " s",
        "visibility mask=0deg: " + fmt_f(tau_zero, 1) + " s (" + fmt_f(tau_zero / 60.0, 1) + " min)"};
    TableWriter table({"mask[deg]", "max_elev[deg]", "duration[s]"});
    table.add_row({fmt_f(s.pass.mask_angle_deg, 0), fmt_f(s.pass.max_elevation_deg, 0), fmt_f(tau_mask, 1)});
    table.add_row({"0", fmt_f(s.pass.max_elevation_deg, 0), fmt_f(tau_zero, 1)});
    out.write("visibility_summary.txt", table.str());
    return summary;
}

std::vector<std::string> do_collision(const Scenario& s, OutputDir& out, int threads) {
    const std::uint64_t base_seed = rng::derive_seed(s.seed, "access.rach");
    std::string csv =
        "n_offered,p_coll_analytic,p_coll_analytic_exact,p_coll_sim,p_coll_ci,"
        "first_attempt_exact,first_attempt_sim,first_attempt_ci\n";
    for (int n : s.collision_grid) {
        const auto analytic = access::analytic_stats(n, s.rach, false);
        const auto exact = access::analytic_stats(n, s.rach, true);
        const auto sim = access::simulate_rach(n, s.rach, s.collision_trials,
                                               rng::derive_seed(base_seed, static_cast<std::uint64_t>(n)),
                                               threads);
        csv += std::to_string(n) + ',' + fmt_f(analytic.p_coll, 6) + ',' + fmt_f(exact.p_coll, 6) +
               ',' + fmt_f(sim.p_coll, 6) + ',' + fmt_f(sim.ci_half_width, 6) + ',' +
               fmt_f(exact.first_attempt_rate, 6) + ',' + fmt_f(sim.first_attempt_rate, 6) + ',' +
               fmt_f(sim.first_ci_half_width, 6) + '\n';
    }
    out.write("collision_vs_load.csv", csv);

    const int cap = access::capacity_at_target(s.target_p_coll, s.rach, false);
    const int cap_exact = access::capacity_at_target(s.target_p_coll, s.rach, true);
    std::vector<std::string> summary;
    summary.push_back("capacity at P_coll<=" + fmt_f(s.target_p_coll, 2) + ": " +
                      std::to_string(cap) + " simultaneous nodes (exact model " +
                      std::to_string(cap_exact) + ", p_bo=" + fmt_f(s.rach.p_bo, 2) + ")");
    TableWriter table({"mode", "reduction", "network capacity"});
    table.add_row({"baseline", "0.0000", std::to_string(cap)});
    for (const ModeDefaults& m : s.mode_defaults) {
        if (m.reduction_fraction <= 0.0) continue;
        const double scaled = cap / (1.0 - m.reduction_fraction);
        table.add_row({m.name, fmt_f(m.reduction_fraction, 4), fmt_f(scaled, 0)});
        summary.push_back(m.name + " network capacity ~ " + fmt_f(scaled, 0) + " devices");
    }
    out.write("collision_summary.txt", table.str());
    return summary;
}

std::vector<std::string> do_modes(const Scenario& s, OutputDir& out, ModesData& data) {
    data = run_all_modes(s);

    TableWriter table({"Mode", "Events", "Reduction[%]", "SimulTx", "RMSE temp", "RMSE rh",
                       "RMSE pm25", "RMSE pm10", "RMSE aqi"});
    std::vector<std::string> summary;
    for (shewhart::Mode mode : s.modes) {
        const auto& results = data.results[mode];
        std::size_t events = 0, slots = 0;
        for (const auto& r : results) {
            events += r.log.events.size();
            slots += static_cast<std::size_t>(r.log.total_slots);
        }
        const double reduction = 100.0 * (1.0 - static_cast<double>(events) / static_cast<double>(slots));
        std::vector<shewhart::TransmissionLog> logs;
        for (const auto& r : results) logs.push_back(r.log);
        const double simul = shewhart::simultaneous_transmitters(logs);

        std::array<std::string, timeseries::kFieldCount> rmse_cells;
        for (int f = 0; f < timeseries::kFieldCount; ++f) {
            if (!results.front().recon.has[static_cast<std::size_t>(f)]) {
                rmse_cells[static_cast<std::size_t>(f)] = "-";
                continue;
            }
            double acc = 0;
            for (std::size_t d = 0; d < results.size(); ++d)
                acc += shewhart::server_rmse(data.devices[d], results[d].recon, f);
            rmse_cells[static_cast<std::size_t>(f)] = fmt_f(acc / static_cast<double>(results.size()), 4);
        }
        // server AQI error vs the AQI of the sensed values
        const airquality::BreakpointTable tbl = load_table(s);
        double aqi_acc = 0;
        for (std::size_t d = 0; d < results.size(); ++d) {
            const auto& dev = data.devices[d];
            const auto& recon = results[d].recon;
            double sq = 0;
            for (std::size_t i = 0; i < dev.size(); ++i) {
                const double truth = airquality::aqi(dev.samples[i].pm25, dev.samples[i].pm10, tbl).aqi;
                const double e = truth - recon.server_aqi[i];
                sq += e * e;
            }
            aqi_acc += std::sqrt(sq / static_cast<double>(dev.size()));
        }

        table.add_row({shewhart::to_string(mode), std::to_string(events), fmt_f(reduction, 2),
                       fmt_f(simul, 3), rmse_cells[0], rmse_cells[1], rmse_cells[2], rmse_cells[3],
                       fmt_f(aqi_acc / static_cast<double>(results.size()), 4)});
        summary.push_back(shewhart::to_string(mode) + ": reduction " + fmt_f(reduction, 2) +
                          "%, simultaneous " + fmt_f(simul, 3));

        out.write("events_" + shewhart::to_string(mode) + ".csv", events_csv(results));
    }
    out.write("modes_summary.txt", table.str());

    TableWriter ml({"device", "model", "val RMSE", "val R2"});
    double rmse_mean = 0, r2_mean = 0;
    for (std::size_t d = 0; d < data.devices.size(); ++d) {
        const auto& p = data.predictors[d];
        ml.add_row({data.devices[d].device_id, p.model.kind(), fmt_f(p.report.rmse, 4),
                    p.report.r2_valid ? fmt_f(p.report.r_squared, 4) : "n/a"});
        rmse_mean += p.report.rmse;
        r2_mean += p.report.r2_valid ? p.report.r_squared : 0.0;
    }
    const double nd = static_cast<double>(data.devices.size());
    ml.add_row({"mean", s.ml_model, fmt_f(rmse_mean / nd, 4), fmt_f(r2_mean / nd, 4)});
    out.write("ml_summary.txt", ml.str());
    summary.push_back("ml " + s.ml_model + ": mean val RMSE " + fmt_f(rmse_mean / nd, 4) +
                      ", mean val R2 " + fmt_f(r2_mean / nd, 4));
    return summary;
}

std::vector<std::string> do_traffic(const Scenario& s, OutputDir& out, const ModesData& data) {
    TableWriter table({"Mode", "gaps", "mean[s]", "lambda[1/s]", "KS", "reject@5%"});
    std::vector<std::string> summary;
    for (shewhart::Mode mode : s.modes) {
        std::vector<shewhart::TransmissionLog> logs;
        for (const auto& r : data.results.at(mode)) logs.push_back(r.log);
        const traffic::InterArrivalSet set = traffic::pool_inter_arrivals(logs);
        if (set.gaps_s.empty()) {
            table.add_row({shewhart::to_string(mode), "0", "-", "-", "-", "-"});
            continue;
        }
        const traffic::ExpFit fit = traffic::fit_exponential(set.gaps_s);
        const double mean = 1.0 / fit.lambda;
        table.add_row({shewhart::to_string(mode), std::to_string(set.gaps_s.size()), fmt_f(mean, 2),
                       fmt_f(fit.lambda, 6), fmt_f(fit.ks_statistic, 4),
                       fit.reject_at_5pct ? "yes" : "no"});
        summary.push_back(shewhart::to_string(mode) + ": KS " + fmt_f(fit.ks_statistic, 4) +
                          (fit.reject_at_5pct ? " (rejects exponential)" : " (compatible with exponential)"));

        const auto rows = traffic::pdf_export(set.gaps_s, static_cast<double>(s.synthetic.cadence_s));
        std::string csv = "gap_s,density,exp_density\n";
        for (const auto& r : rows)
            csv += fmt_f(r.bin_center, 3) + ',' + fmt_g(r.density) + ',' + fmt_g(r.exp_density) + '\n';
        out.write("traffic_pdf_" + shewhart::to_string(mode) + ".csv", csv);
    }
    out.write("traffic_summary.txt", table.str());
    return summary;
}

std::vector<std::string> do_effective_data(const Scenario& s, OutputDir& out) {
    std::string csv = "mode,visibility_s,effective_bytes\n";
    std::vector<std::string> summary;
    for (const ModeDefaults& m : s.mode_defaults) {
        for (double v : s.effective_visibility_s) {
            const double bytes = access::effective_data_bytes(v, s.aggregate_rate_bps, m.reduction_fraction);
            csv += m.name + ',' + fmt_f(v, 1) + ',' + fmt_f(bytes, 1) + '\n';
        }
        const double at60 = access::effective_data_bytes(60.0, s.aggregate_rate_bps, m.reduction_fraction);
        summary.push_back(m.name + ": " + fmt_f(at60 / 1e6, 3) + " MB effective in 60 s");
    }
    out.write("effective_data.csv", csv);
    return summary;
}

std::vector<std::string> do_lifetime(const Scenario& s, OutputDir& out) {
    energy::DutyCycle base;
    base.visibility_s = s.energy_visibility_s;
    base.sensing_period_s = s.energy_sensing_period_s;
    base.gnss_per_pass = s.gnss_per_pass;
    base.overhead_mws = s.overhead_mws;
    base.inter_pass_s = s.inter_pass_hours.front() * 3600.0;

    std::vector<energy::ModeSpec> specs;
    for (const ModeDefaults& m : s.mode_defaults)
        specs.push_back({m.name, m.reduction_fraction, m.payload_bytes});
    const auto grid = energy::lifetime_grid(specs, s.inter_pass_hours, s.power, base, s.battery_mwh);

    std::vector<std::string> headers = {"inter-pass[h]"};
    for (const auto& e : grid) headers.push_back(e.mode);
    TableWriter table(headers);
    for (std::size_t h = 0; h < s.inter_pass_hours.size(); ++h) {
        std::vector<std::string> row = {fmt_f(s.inter_pass_hours[h], 0)};
        for (const auto& e : grid) row.push_back(fmt_f(e.lifetime_years[h], 2));
        table.add_row(row);
    }
    out.write("lifetime_grid.txt", table.str());

    std::string csv = "mode,reduction,payload_bytes,inter_pass_h,lifetime_years\n";
    for (const auto& e : grid)
        for (std::size_t h = 0; h < s.inter_pass_hours.size(); ++h)
            csv += e.mode + ',' + fmt_f(e.reduction_fraction, 4) + ',' +
                   std::to_string(e.payload_bytes) + ',' + fmt_f(s.inter_pass_hours[h], 2) + ',' +
                   fmt_f(e.lifetime_years[h], 4) + '\n';
    out.write("lifetime_grid.csv", csv);

    std::string breakdown = "mode,payload_bytes,events_per_pass,gnss_mws,events_mws,overhead_mws,"
                            "sleep_mws,total_mws,avg_power_mw\n";
    std::vector<std::string> summary;
    for (const auto& e : grid) {
        energy::DutyCycle duty = base;
        duty.payload_bytes = e.payload_bytes;
        duty.tx_events_per_pass = energy::events_per_pass_from_reduction(
            e.reduction_fraction, duty.visibility_s, duty.sensing_period_s);
        const auto est = energy::lifetime(duty, s.power, s.battery_mwh);
        breakdown += e.mode + ',' + std::to_string(e.payload_bytes) + ',' +
                     fmt_f(duty.tx_events_per_pass, 4) + ',' + fmt_f(est.per_cycle.gnss_mws, 4) +
                     ',' + fmt_f(est.per_cycle.events_mws, 4) + ',' +
                     fmt_f(est.per_cycle.overhead_mws, 4) + ',' + fmt_f(est.per_cycle.sleep_mws, 4) +
                     ',' + fmt_f(est.per_cycle.total_mws, 4) + ',' + fmt_f(est.avg_power_mw, 6) + '\n';
        summary.push_back(e.mode + ": " + fmt_f(e.lifetime_years.front(), 2) + " y at " +
                          fmt_f(s.inter_pass_hours.front(), 0) + " h inter-pass");
    }
    out.write("energy_breakdown.csv", breakdown);
    return summary;
}

}  // namespace

RunReport run_generate(const Scenario& s) {
    s.validate();
    OutputDir out(s.out_dir);
    const auto devices = generate_devices(s);
    std::vector<std::string> summary;
    for (const auto& d : devices) {
        std::string csv = "device_id,created_at,PM10,PM2.5,RH,Temp\n";
        char buf[160];
        for (std::size_t i = 0; i < d.size(); ++i) {
            const auto& smp = d.samples[i];
            std::snprintf(buf, sizeof buf, "%s,%s,%.3f,%.3f,%.3f,%.3f\n", d.device_id.c_str(),
                          timeseries::format_timestamp(d.time_at(i)).c_str(), smp.pm10, smp.pm25,
                          smp.rh, smp.temp);
            csv += buf;
        }
        out.write("generated/" + sanitize(d.device_id) + ".csv", csv);
    }
    summary.push_back("generated " + std::to_string(devices.size()) + " devices x " +
                      std::to_string(devices.empty() ? 0 : devices.front().size()) + " samples");
    return finish(s, out, std::move(summary));
}

RunReport run_preprocess(const Scenario& s) {
    s.validate();
    if (s.input_csv.empty())
        throw std::runtime_error("preprocess: scenario has no input_csv to preprocess");
    OutputDir out(s.out_dir);
    PreprocessStats stats;
    const auto series = preprocess_csv(s, &stats);

    for (const auto& m : series) {
        std::string csv = "device_id,created_at,PM10,PM2.5,RH,Temp\n";
        char buf[160];
        for (std::size_t i = 0; i < m.size(); ++i) {
            const auto& smp = m.samples[i];
            std::snprintf(buf, sizeof buf, "%s,%s,%.3f,%.3f,%.3f,%.3f\n", m.device_id.c_str(),
                          timeseries::format_timestamp(m.time_at(i)).c_str(), smp.pm10, smp.pm25,
                          smp.rh, smp.temp);
            csv += buf;
        }
        out.write("preprocessed/" + sanitize(m.device_id) + ".csv", csv);
    }

    std::string txt;
    txt += "raw_records " + std::to_string(stats.raw_records) + "\n";
    txt += "row_errors " + std::to_string(stats.row_errors) + "\n";
    for (const auto& e : stats.first_errors)
        txt += "  line " + std::to_string(e.line) + ": " + e.message + "\n";
    txt += "devices " + std::to_string(stats.devices_in) + "\n";
    txt += "device_months_kept " + std::to_string(stats.device_months_kept) + "\n";
    out.write("preprocess_summary.txt", txt);

    std::vector<std::string> summary = {
        std::to_string(stats.raw_records) + " records, " + std::to_string(stats.row_errors) +
        " bad rows, " + std::to_string(stats.device_months_kept) + " device-months kept"};
    return finish(s, out, std::move(summary));
}

RunReport run_modes(const Scenario& s) {
    s.validate();
    OutputDir out(s.out_dir);
    ModesData data;
    auto summary = do_modes(s, out, data);
    return finish(s, out, std::move(summary));
}

RunReport run_traffic(const Scenario& s) {
    s.validate();
    OutputDir out(s.out_dir);
    ModesData data = run_all_modes(s);
    auto summary = do_traffic(s, out, data);
    return finish(s, out, std::move(summary));
}

RunReport run_collision(const Scenario& s, int threads) {
    s.validate();
    OutputDir out(s.out_dir);
    auto summary = do_collision(s, out, threads);
    return finish(s, out, std::move(summary));
}

RunReport run_linkbudget(const Scenario& s) {
    s.validate();
    OutputDir out(s.out_dir);
    auto summary = do_linkbudget(s, out);
    return finish(s, out, std::move(summary));
}

RunReport run_visibility(const Scenario& s) {
    s.validate();
    OutputDir out(s.out_dir);
    auto summary = do_visibility(s, out);
    return finish(s, out, std::move(summary));
}

RunReport run_effective_data(const Scenario& s) {
    s.validate();
    OutputDir out(s.out_dir);
    auto summary = do_effective_data(s, out);
    return finish(s, out, std::move(summary));
}

RunReport run_lifetime(const Scenario& s) {
    s.validate();
    OutputDir out(s.out_dir);
    auto summary = do_lifetime(s, out);
    return finish(s, out, std::move(summary));
}

RunReport run_report(const Scenario& s, int threads) {
    s.validate();
    OutputDir out(s.out_dir);
    std::vector<std::string> summary;
    auto append = [&summary](const std::string& tag, std::vector<std::string> lines) {
        for (auto& l : lines) summary.push_back("[" + tag + "] " + l);
    };
    append("linkbudget", do_linkbudget(s, out));
    append("visibility", do_visibility(s, out));
    append("collision", do_collision(s, out, threads));
    ModesData data;
    append("modes", do_modes(s, out, data));
    append("traffic", do_traffic(s, out, data));
    append("effective-data", do_effective_data(s, out));
    append("lifetime", do_lifetime(s, out));
    return finish(s, out, std::move(summary));
}

}  // namespace leoiot::scenario
