#ifndef LEOIOT_SHEWHART_HPP
#define LEOIOT_SHEWHART_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "leoiot/airquality.hpp"
#include "leoiot/timeseries.hpp"

namespace leoiot::shewhart {

inline constexpr int kFullPayloadBytes = 200;     // all-parameter uplink
inline constexpr int kReducedPayloadBytes = 50;   // PM10-only uplink

struct Threshold {
    double temp = 0.5;  // deg C
    double rh = 5.0;    // %
    double pm25 = 5.0;  // ug/m3
    double pm10 = 5.0;  // ug/m3
    double aqi = 15.0;  // index points
    double field(int f) const;
    void validate() const;  // all strictly positive
};

/// Send-on-delta detector: transmit when |x - last transmitted| exceeds the
/// threshold strictly. The first sample always transmits so the receiver can
/// bootstrap its held value.
class Detector {
public:
    explicit Detector(double threshold);

    bool should_transmit(double x) const;
    void commit(double x);  // record x as the new reference
    bool step(double x);    // should_transmit + commit on trigger

    double last_transmitted() const { return last_; }
    bool initialized() const { return initialized_; }

private:
    double threshold_;
    double last_ = 0;
    bool initialized_ = false;
};

enum class Mode { M0, M1, M2, M3 };

Mode parse_mode(const std::string& name);  // "M0".."M3"
std::string to_string(Mode mode);

struct Event {
    int slot;
    std::array<double, timeseries::kFieldCount> values;  // meaningful where sent[] is true
    std::array<bool, timeseries::kFieldCount> sent;
    int payload_bytes;
};

struct TransmissionLog {
    std::string device_id;
    Mode mode = Mode::M0;
    int total_slots = 0;
    int cadence_s = 30;
    std::vector<Event> events;
};

/// Server-side view on the same grid as the source series. Fields the mode
/// never conveys stay unavailable (`has[f] == false`).
struct ReconstructedSeries {
    std::string device_id;
    std::int64_t start_time = 0;
    int cadence_s = 30;
    std::array<bool, timeseries::kFieldCount> has{};
    std::vector<timeseries::Sample> values;
    std::vector<double> server_aqi;  // AQI the server computes each slot
};

using PredictFn = std::function<double(double)>;  // pm25 from pm10

struct ModeResult {
    TransmissionLog log;
    ReconstructedSeries recon;
};

/// Runs one transmission mode over a preprocessed series.
///  M0 transmits every slot (all four parameters, 200 B).
///  M1 tracks all four parameters; any trigger sends all four and resets
///     every reference (200 B).
///  M2 tracks PM10 and sends PM10 only (50 B); the server predicts PM2.5.
///  M3 tracks node-side AQI and sends PM10 only (50 B); the server predicts
///     PM2.5 and recomputes AQI. Server AQI uses predicted PM2.5, so its
///     error is not bounded by the AQI threshold alone.
/// Reconstruction holds the last received value; predicted fields follow the
/// held PM10.
ModeResult run_mode(const timeseries::SensorSeries& series, Mode mode, const Threshold& thresholds,
                    const PredictFn& predictor, const airquality::BreakpointTable& table);

/// 100 * (1 - events / total slots).
double reduction_pct(const TransmissionLog& log);

/// RMSE between the sensed series and the reconstruction for one field.
double server_rmse(const timeseries::SensorSeries& truth, const ReconstructedSeries& recon,
                   int field);

/// Mean number of devices transmitting per slot across a fleet of logs
/// sharing one sensing grid.
double simultaneous_transmitters(const std::vector<TransmissionLog>& logs);

/// Columnar event file: device_id,slot,temp,rh,pm25,pm10,payload_bytes with
/// empty cells for values the event did not carry.
void write_log_csv(const std::string& path, const TransmissionLog& log);
TransmissionLog read_log_csv(const std::string& path);

}  // namespace leoiot::shewhart

#endif
