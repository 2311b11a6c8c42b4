#ifndef LEOIOT_TIMESERIES_HPP
#define LEOIOT_TIMESERIES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace leoiot::timeseries {

/// Sensed parameters, in sample order. Concentrations are stored in ug/m3
/// (the source figures label PM in ppm; the field list says ug/m3 — the
/// latter is used and the label travels with the CSV header).
enum Field : int { kTemp = 0, kRh = 1, kPm25 = 2, kPm10 = 3 };
inline constexpr int kFieldCount = 4;
inline constexpr std::array<const char*, kFieldCount> kFieldNames = {"temp", "rh", "pm25", "pm10"};

/// One uploaded row in the device schema; absent cells stay unset.
struct RawRecord {
    std::string device_id;
    std::int64_t created_at = 0;  // UTC seconds
    std::optional<double> pm10;
    std::optional<double> pm25;
    std::optional<double> rh;
    std::optional<double> temp;
};

struct RowError {
    int line;  // 1-based line number in the file
    std::string message;
};

struct IngestResult {
    std::vector<RawRecord> records;
    std::vector<RowError> row_errors;  // malformed rows, counted not dropped silently
};

struct Sample {
    double temp = 0, rh = 0, pm25 = 0, pm10 = 0;
    double get(int field) const;
    void set(int field, double v);
};

/// Uniformly gridded per-device series. `present` records which fields were
/// observed before gap-filling; after preprocessing every flag is true.
struct SensorSeries {
    std::string device_id;
    std::int64_t start_time = 0;  // UTC seconds of slot 0
    int cadence_s = 30;
    std::vector<Sample> samples;
    std::vector<std::array<bool, kFieldCount>> present;

    std::size_t size() const { return samples.size(); }
    std::int64_t time_at(std::size_t i) const { return start_time + static_cast<std::int64_t>(i) * cadence_s; }
    bool complete() const;
};

/// Parses `yyyy-MM-dd HH:mm:ss Z` (zone as +HHMM/-HHMM) to UTC seconds.
std::int64_t parse_timestamp(const std::string& text);
std::string format_timestamp(std::int64_t utc_seconds);  // zone +0000

/// Reads the 6-column device CSV (`device_id,created_at,PM10,PM2.5,RH,Temp`).
/// Throws on a missing file or wrong header; malformed data rows are
/// reported per line in the result instead.
IngestResult ingest_csv(const std::string& path);

void write_csv(const std::string& path, const SensorSeries& series);

/// Snaps records onto a uniform grid (nearest slot) without filling gaps.
SensorSeries resample(const std::vector<RawRecord>& records, int cadence_s);

/// Fills missing slots by linear interpolation between the nearest present
/// neighbours; leading/trailing gaps take the nearest value. Throws if a
/// field has no present value at all.
void interpolate_missing(SensorSeries& series);

SensorSeries resample_and_interpolate(const std::vector<RawRecord>& records, int cadence_s);

/// Trailing (causal) moving average; the first window-1 outputs are prefix
/// means. window must be >= 1.
SensorSeries moving_average(const SensorSeries& series, int window);

/// Splits each series into UTC calendar months, drops months whose missing
/// cell fraction exceeds max_missing, and emits each survivor as an
/// independent virtual device (`id/yyyy-MM`).
std::vector<SensorSeries> discard_sparse_months(const std::vector<SensorSeries>& series_set,
                                                double max_missing = 0.70);

struct SyntheticConfig {
    int n_devices = 8;
    std::int64_t duration_s = 7LL * 86400;
    int cadence_s = 30;
    std::int64_t start_time = 1669852800;  // 2022-12-01 00:00:00 UTC
    std::uint64_t seed = 1;

    double temp_mean_c = 16.0;
    double temp_amplitude_c = 5.0;
    double temp_noise_sd = 0.05;
    double rh_mean_pct = 60.0;
    double rh_amplitude_pct = 15.0;
    double rh_noise_sd = 0.5;
    double pm10_baseline = 200.0;
    double pm10_reversion = 0.02;       // per-sample pull toward the baseline
    double pm10_noise_sd = 2.0;
    double burst_rate_per_day = 4.0;    // mean positive PM10 bursts per day
    double burst_magnitude = 80.0;      // mean burst height, exponentially distributed
    double pm25_fraction = 0.45;        // pm25 ~= fraction * pm10
    double pm25_noise_sd = 2.0;

    void validate() const;
};

/// Day-cycle sinusoids plus noise for temp/RH, a mean-reverting burst
/// process for PM10, and pm25 = fraction * pm10 + noise clamped at zero.
/// Bit-reproducible for a fixed (seed, config).
std::vector<SensorSeries> generate_synthetic(const SyntheticConfig& config);

}  // namespace leoiot::timeseries

#endif
