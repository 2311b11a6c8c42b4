#include "leoiot/shewhart.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace leoiot::shewhart {

using timeseries::kFieldCount;
using timeseries::kPm10;
using timeseries::kPm25;
using timeseries::kRh;
using timeseries::kTemp;

double Threshold::field(int f) const {
    switch (f) {
        case kTemp: return temp;
        case kRh: return rh;
        case kPm25: return pm25;
        default: return pm10;
    }
}

void Threshold::validate() const {
    const double vals[] = {temp, rh, pm25, pm10, aqi};
    for (double v : vals)
        if (!(v > 0.0)) throw std::invalid_argument("shewhart: thresholds must be > 0");
}

Detector::Detector(double threshold) : threshold_(threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("shewhart: threshold must be > 0");
}

bool Detector::should_transmit(double x) const {
    if (!std::isfinite(x)) throw std::invalid_argument("shewhart: non-finite sample");
    return !initialized_ || std::abs(x - last_) > threshold_;
}

void Detector::commit(double x) {
    last_ = x;
    initialized_ = true;
}

bool Detector::step(double x) {
    const bool transmit = should_transmit(x);
    if (transmit) commit(x);
    return transmit;
}

Mode parse_mode(const std::string& name) {
    if (name == "M0" || name == "m0") return Mode::M0;
    if (name == "M1" || name == "m1") return Mode::M1;
    if (name == "M2" || name == "m2") return Mode::M2;
    if (name == "M3" || name == "m3") return Mode::M3;
    throw std::invalid_argument("shewhart: unknown mode '" + name + "'");
}

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::M0: return "M0";
        case Mode::M1: return "M1";
        case Mode::M2: return "M2";
        default: return "M3";
    }
}

namespace {

Event all_fields_event(int slot, const timeseries::Sample& s) {
    Event e;
    e.slot = slot;
    e.values = {s.temp, s.rh, s.pm25, s.pm10};
    e.sent = {true, true, true, true};
    e.payload_bytes = kFullPayloadBytes;
    return e;
}

Event pm10_event(int slot, double pm10) {
    Event e;
    e.slot = slot;
    e.values = {0, 0, 0, pm10};
    e.sent = {false, false, false, true};
    e.payload_bytes = kReducedPayloadBytes;
    return e;
}

}  // namespace

ModeResult run_mode(const timeseries::SensorSeries& series, Mode mode, const Threshold& thresholds,
                    const PredictFn& predictor, const airquality::BreakpointTable& table) {
    thresholds.validate();
    if (series.size() == 0) throw std::invalid_argument("shewhart: empty series");
    if (!series.complete()) throw std::invalid_argument("shewhart: series must be preprocessed");
    if ((mode == Mode::M2 || mode == Mode::M3) && !predictor)
        throw std::invalid_argument("shewhart: " + to_string(mode) + " needs a PM2.5 predictor");

    const std::size_t n = series.size();
    ModeResult out;
    out.log.device_id = series.device_id;
    out.log.mode = mode;
    out.log.total_slots = static_cast<int>(n);
    out.log.cadence_s = series.cadence_s;
    out.recon.device_id = series.device_id;
    out.recon.start_time = series.start_time;
    out.recon.cadence_s = series.cadence_s;
    out.recon.values.resize(n);
    out.recon.server_aqi.resize(n);

    switch (mode) {
        case Mode::M0: {
            out.recon.has = {true, true, true, true};
            for (std::size_t i = 0; i < n; ++i) {
                out.log.events.push_back(all_fields_event(static_cast<int>(i), series.samples[i]));
                out.recon.values[i] = series.samples[i];
                out.recon.server_aqi[i] =
                    airquality::aqi(series.samples[i].pm25, series.samples[i].pm10, table).aqi;
            }
            break;
        }
        case Mode::M1: {
            out.recon.has = {true, true, true, true};
            timeseries::Sample held{};
            bool initialized = false;
            for (std::size_t i = 0; i < n; ++i) {
                const timeseries::Sample& s = series.samples[i];
                bool trigger = !initialized;
                for (int f = 0; f < kFieldCount && !trigger; ++f)
                    trigger = std::abs(s.get(f) - held.get(f)) > thresholds.field(f);
                if (trigger) {
                    held = s;  // one trigger refreshes every reference
                    initialized = true;
                    out.log.events.push_back(all_fields_event(static_cast<int>(i), s));
                }
                out.recon.values[i] = held;
                out.recon.server_aqi[i] = airquality::aqi(held.pm25, held.pm10, table).aqi;
            }
            break;
        }
        case Mode::M2: {
            out.recon.has = {false, false, true, true};
            Detector det(thresholds.pm10);
            double held = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (det.step(series.samples[i].pm10)) {
                    held = series.samples[i].pm10;
                    out.log.events.push_back(pm10_event(static_cast<int>(i), held));
                }
                const double predicted = predictor(held);
                out.recon.values[i].pm10 = held;
                out.recon.values[i].pm25 = predicted;
                out.recon.server_aqi[i] = airquality::aqi(std::max(predicted, 0.0), held, table).aqi;
            }
            break;
        }
        case Mode::M3: {
            out.recon.has = {false, false, true, true};
            Detector det(thresholds.aqi);
            double held = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const timeseries::Sample& s = series.samples[i];
                const double node_aqi = airquality::aqi(s.pm25, s.pm10, table).aqi;
                if (det.step(node_aqi)) {
                    held = s.pm10;
                    out.log.events.push_back(pm10_event(static_cast<int>(i), held));
                }
                const double predicted = predictor(held);
                out.recon.values[i].pm10 = held;
                out.recon.values[i].pm25 = predicted;
                out.recon.server_aqi[i] = airquality::aqi(std::max(predicted, 0.0), held, table).aqi;
            }
            break;
        }
    }
    return out;
}

double reduction_pct(const TransmissionLog& log) {
    if (log.total_slots <= 0) throw std::invalid_argument("shewhart: log has no slots");
    return 100.0 * (1.0 - static_cast<double>(log.events.size()) / log.total_slots);
}

double server_rmse(const timeseries::SensorSeries& truth, const ReconstructedSeries& recon,
                   int field) {
    if (truth.size() != recon.values.size() || truth.start_time != recon.start_time ||
        truth.cadence_s != recon.cadence_s)
        throw std::invalid_argument("shewhart: truth/reconstruction grids differ");
    if (field < 0 || field >= kFieldCount || !recon.has[static_cast<std::size_t>(field)])
        throw std::invalid_argument("shewhart: field not reconstructed by this mode");
    double acc = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double e = truth.samples[i].get(field) - recon.values[i].get(field);
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(truth.size()));
}

double simultaneous_transmitters(const std::vector<TransmissionLog>& logs) {
    if (logs.empty()) throw std::invalid_argument("shewhart: no logs");
    const int slots = logs.front().total_slots;
    for (const TransmissionLog& log : logs)
        if (log.total_slots != slots)
            throw std::invalid_argument("shewhart: logs do not share a slot grid");
    if (slots <= 0) throw std::invalid_argument("shewhart: log has no slots");
    std::size_t events = 0;
    for (const TransmissionLog& log : logs) events += log.events.size();
    return static_cast<double>(events) / static_cast<double>(slots);
}

void write_log_csv(const std::string& path, const TransmissionLog& log) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("shewhart: cannot write '" + path + "'");
    out << "device_id,mode,total_slots,cadence_s\n";
    out << log.device_id << ',' << to_string(log.mode) << ',' << log.total_slots << ','
        << log.cadence_s << '\n';
    out << "slot,temp,rh,pm25,pm10,payload_bytes\n";
    char buf[40];
    for (const Event& e : log.events) {
        out << e.slot;
        for (int f = 0; f < kFieldCount; ++f) {
            out << ',';
            if (e.sent[static_cast<std::size_t>(f)]) {
                std::snprintf(buf, sizeof buf, "%.6f", e.values[static_cast<std::size_t>(f)]);
                out << buf;
            }
        }
        out << ',' << e.payload_bytes << '\n';
    }
}

TransmissionLog read_log_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("shewhart: cannot open '" + path + "'");
    std::string line;
    TransmissionLog log;
    if (!std::getline(in, line) || line != "device_id,mode,total_slots,cadence_s")
        throw std::runtime_error("shewhart: bad log header in '" + path + "'");
    if (!std::getline(in, line)) throw std::runtime_error("shewhart: truncated log '" + path + "'");
    {
        std::istringstream ss(line);
        std::string id, mode, slots, cadence;
        if (!std::getline(ss, id, ',') || !std::getline(ss, mode, ',') ||
            !std::getline(ss, slots, ',') || !std::getline(ss, cadence, ','))
            throw std::runtime_error("shewhart: bad log metadata in '" + path + "'");
        log.device_id = id;
        log.mode = parse_mode(mode);
        log.total_slots = std::stoi(slots);
        log.cadence_s = std::stoi(cadence);
    }
    if (!std::getline(in, line) || line != "slot,temp,rh,pm25,pm10,payload_bytes")
        throw std::runtime_error("shewhart: bad event header in '" + path + "'");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        Event e{};
        if (!std::getline(ss, cell, ',')) throw std::runtime_error("shewhart: bad event row");
        e.slot = std::stoi(cell);
        for (int f = 0; f < kFieldCount; ++f) {
            if (!std::getline(ss, cell, ',')) throw std::runtime_error("shewhart: bad event row");
            if (!cell.empty()) {
                e.values[static_cast<std::size_t>(f)] = std::stod(cell);
                e.sent[static_cast<std::size_t>(f)] = true;
            }
        }
        if (!std::getline(ss, cell)) throw std::runtime_error("shewhart: bad event row");
        e.payload_bytes = std::stoi(cell);
        log.events.push_back(e);
    }
    return log;
}

}  // namespace leoiot::shewhart
