#include "leoiot/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "leoiot/rng.hpp"

namespace leoiot::timeseries {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr char kCsvHeader[] = "device_id,created_at,PM10,PM2.5,RH,Temp";

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

int days_in_month(int y, int m) {
    static const int n[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0)) return 29;
    return n[m - 1];
}

bool parse_int(const char* s, int len, int& out) {
    out = 0;
    for (int i = 0; i < len; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        out = out * 10 + (s[i] - '0');
    }
    return true;
}

bool parse_double_strict(const std::string& text, double& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

}  // namespace

double Sample::get(int field) const {
    switch (field) {
        case kTemp: return temp;
        case kRh: return rh;
        case kPm25: return pm25;
        default: return pm10;
    }
}

void Sample::set(int field, double v) {
    switch (field) {
        case kTemp: temp = v; break;
        case kRh: rh = v; break;
        case kPm25: pm25 = v; break;
        default: pm10 = v; break;
    }
}

bool SensorSeries::complete() const {
    for (const auto& p : present)
        for (bool b : p)
            if (!b) return false;
    return true;
}

std::int64_t parse_timestamp(const std::string& text) {
    // yyyy-MM-dd HH:mm:ss +HHMM
    const std::string s = trim(text);
    if (s.size() != 25 || s[4] != '-' || s[7] != '-' || s[10] != ' ' || s[13] != ':' ||
        s[16] != ':' || s[19] != ' ' || (s[20] != '+' && s[20] != '-'))
        throw std::invalid_argument("timestamp '" + text + "' does not match yyyy-MM-dd HH:mm:ss Z");
    int y, mo, d, h, mi, sec, zh, zm;
    if (!parse_int(s.data(), 4, y) || !parse_int(s.data() + 5, 2, mo) ||
        !parse_int(s.data() + 8, 2, d) || !parse_int(s.data() + 11, 2, h) ||
        !parse_int(s.data() + 14, 2, mi) || !parse_int(s.data() + 17, 2, sec) ||
        !parse_int(s.data() + 21, 2, zh) || !parse_int(s.data() + 23, 2, zm))
        throw std::invalid_argument("timestamp '" + text + "' has non-numeric fields");
    if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) || h > 23 || mi > 59 || sec > 60 ||
        zh > 23 || zm > 59)
        throw std::invalid_argument("timestamp '" + text + "' field out of range");
    const std::int64_t local = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + sec;
    const std::int64_t offset = (s[20] == '-' ? -1 : 1) * (zh * 3600 + zm * 60);
    return local - offset;
}

std::string format_timestamp(std::int64_t utc_seconds) {
    const std::int64_t days = floordiv(utc_seconds, 86400);
    int y, m, d;
    civil_from_days(days, y, m, d);
    const int sod = static_cast<int>(utc_seconds - days * 86400);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d:%02d +0000", y, m, d, sod / 3600,
                  (sod / 60) % 60, sod % 60);
    return buf;
}

IngestResult ingest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("timeseries: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("timeseries: '" + path + "' is empty");
    if (!line.empty() && line.substr(0, 3) == "\xef\xbb\xbf") line.erase(0, 3);
    if (trim(line) != kCsvHeader)
        throw std::runtime_error("timeseries: '" + path + "' header mismatch, expected '" +
                                 kCsvHeader + "'");
    IngestResult result;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = trim(line);
        if (row.empty()) continue;
        const auto cells = split_csv_line(row);
        if (cells.size() != 6) {
            result.row_errors.push_back({lineno, "expected 6 columns, got " + std::to_string(cells.size())});
            continue;
        }
        RawRecord rec;
        rec.device_id = trim(cells[0]);
        try {
            rec.created_at = parse_timestamp(cells[1]);
        } catch (const std::exception& e) {
            result.row_errors.push_back({lineno, e.what()});
            continue;
        }
        struct Cell {
            int index;
            std::optional<double> RawRecord::* member;
            const char* name;
            double lo, hi;
        };
        static const Cell kCells[] = {
            {2, &RawRecord::pm10, "PM10", 0.0, 1e9},
            {3, &RawRecord::pm25, "PM2.5", 0.0, 1e9},
            {4, &RawRecord::rh, "RH", 0.0, 100.0},
            {5, &RawRecord::temp, "Temp", -1e9, 1e9},
        };
        bool bad = false;
        for (const Cell& c : kCells) {
            const std::string cell = trim(cells[c.index]);
            if (cell.empty()) continue;
            double v;
            if (!parse_double_strict(cell, v)) {
                result.row_errors.push_back({lineno, std::string(c.name) + " value '" + cell + "' is not a number"});
                bad = true;
                break;
            }
            if (v < c.lo || v > c.hi) {
                result.row_errors.push_back({lineno, std::string(c.name) + " value out of range"});
                bad = true;
                break;
            }
            rec.*c.member = v;
        }
        if (!bad) result.records.push_back(std::move(rec));
    }
    return result;
}

void write_csv(const std::string& path, const SensorSeries& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("timeseries: cannot write '" + path + "'");
    out << kCsvHeader << '\n';
    char buf[160];
    for (std::size_t i = 0; i < series.size(); ++i) {
        const Sample& s = series.samples[i];
        std::snprintf(buf, sizeof buf, "%s,%s,%.3f,%.3f,%.3f,%.3f", series.device_id.c_str(),
                      format_timestamp(series.time_at(i)).c_str(), s.pm10, s.pm25, s.rh, s.temp);
        out << buf << '\n';
    }
}

SensorSeries resample(const std::vector<RawRecord>& records, int cadence_s) {
    if (records.empty()) throw std::invalid_argument("timeseries: no records to resample");
    if (cadence_s <= 0) throw std::invalid_argument("timeseries: cadence must be positive");
    for (const RawRecord& r : records)
        if (r.device_id != records.front().device_id)
            throw std::invalid_argument("timeseries: records mix devices '" +
                                        records.front().device_id + "' and '" + r.device_id + "'");

    std::vector<const RawRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& r : records) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const RawRecord* a, const RawRecord* b) { return a->created_at < b->created_at; });

    SensorSeries series;
    series.device_id = records.front().device_id;
    series.cadence_s = cadence_s;
    series.start_time = sorted.front()->created_at;
    const std::int64_t span = sorted.back()->created_at - series.start_time;
    const std::size_t n = static_cast<std::size_t>((span + cadence_s / 2) / cadence_s) + 1;
    series.samples.assign(n, Sample{});
    series.present.assign(n, {false, false, false, false});

    for (const RawRecord* r : sorted) {
        std::int64_t slot = (r->created_at - series.start_time + cadence_s / 2) / cadence_s;
        slot = std::clamp<std::int64_t>(slot, 0, static_cast<std::int64_t>(n) - 1);
        const auto i = static_cast<std::size_t>(slot);
        if (r->temp) { series.samples[i].temp = *r->temp; series.present[i][kTemp] = true; }
        if (r->rh) { series.samples[i].rh = *r->rh; series.present[i][kRh] = true; }
        if (r->pm25) { series.samples[i].pm25 = *r->pm25; series.present[i][kPm25] = true; }
        if (r->pm10) { series.samples[i].pm10 = *r->pm10; series.present[i][kPm10] = true; }
    }
    return series;
}

void interpolate_missing(SensorSeries& series) {
    const std::size_t n = series.size();
    if (n == 0) throw std::invalid_argument("timeseries: empty series");
    for (int f = 0; f < kFieldCount; ++f) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (series.present[i][f]) idx.push_back(i);
        if (idx.empty())
            throw std::invalid_argument(std::string("timeseries: no values for field ") +
                                        kFieldNames[f] + " on device " + series.device_id);
        // leading and trailing gaps extend the nearest value
        for (std::size_t i = 0; i < idx.front(); ++i)
            series.samples[i].set(f, series.samples[idx.front()].get(f));
        for (std::size_t i = idx.back() + 1; i < n; ++i)
            series.samples[i].set(f, series.samples[idx.back()].get(f));
        for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
            const std::size_t a = idx[k], b = idx[k + 1];
            const double va = series.samples[a].get(f), vb = series.samples[b].get(f);
            for (std::size_t i = a + 1; i < b; ++i) {
                const double w = static_cast<double>(i - a) / static_cast<double>(b - a);
                series.samples[i].set(f, va + w * (vb - va));
            }
        }
        for (std::size_t i = 0; i < n; ++i) series.present[i][f] = true;
    }
}

SensorSeries resample_and_interpolate(const std::vector<RawRecord>& records, int cadence_s) {
    SensorSeries series = resample(records, cadence_s);
    interpolate_missing(series);
    return series;
}

SensorSeries moving_average(const SensorSeries& series, int window) {
    if (window < 1) throw std::invalid_argument("timeseries: window must be >= 1");
    SensorSeries out = series;
    const std::size_t n = series.size();
    for (int f = 0; f < kFieldCount; ++f) {
        double acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += series.samples[i].get(f);
            if (i >= static_cast<std::size_t>(window)) acc -= series.samples[i - window].get(f);
            const double count = static_cast<double>(std::min<std::size_t>(i + 1, window));
            out.samples[i].set(f, acc / count);
        }
    }
    return out;
}

std::vector<SensorSeries> discard_sparse_months(const std::vector<SensorSeries>& series_set,
                                                double max_missing) {
    std::vector<SensorSeries> out;
    for (const SensorSeries& s : series_set) {
        std::size_t i = 0;
        while (i < s.size()) {
            int y, m, d;
            civil_from_days(floordiv(s.time_at(i), 86400), y, m, d);
            std::size_t j = i;
            std::size_t missing = 0;
            while (j < s.size()) {
                int y2, m2, d2;
                civil_from_days(floordiv(s.time_at(j), 86400), y2, m2, d2);
                if (y2 != y || m2 != m) break;
                for (int f = 0; f < kFieldCount; ++f)
                    if (!s.present[j][f]) ++missing;
                ++j;
            }
            const double ratio = static_cast<double>(missing) / (static_cast<double>(j - i) * kFieldCount);
            if (ratio <= max_missing) {  // strictly-more-missing months are dropped
                SensorSeries chunk;
                char tag[16];
                std::snprintf(tag, sizeof tag, "/%04d-%02d", y, m);
                chunk.device_id = s.device_id + tag;
                chunk.start_time = s.time_at(i);
                chunk.cadence_s = s.cadence_s;
                chunk.samples.assign(s.samples.begin() + i, s.samples.begin() + j);
                chunk.present.assign(s.present.begin() + i, s.present.begin() + j);
                out.push_back(std::move(chunk));
            }
            i = j;
        }
    }
    return out;
}

void SyntheticConfig::validate() const {
    if (n_devices < 1) throw std::invalid_argument("synthetic: n_devices must be >= 1");
    if (duration_s < cadence_s || cadence_s <= 0)
        throw std::invalid_argument("synthetic: duration must cover at least one cadence");
    const double mags[] = {temp_amplitude_c, temp_noise_sd, rh_amplitude_pct, rh_noise_sd,
                           pm10_baseline,    pm10_reversion, pm10_noise_sd,   burst_rate_per_day,
                           burst_magnitude,  pm25_noise_sd};
    for (double v : mags)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("synthetic: magnitudes must be finite and >= 0");
    if (!(pm25_fraction > 0.0 && pm25_fraction < 1.0))
        throw std::invalid_argument("synthetic: pm25_fraction must be in (0, 1)");
}

std::vector<SensorSeries> generate_synthetic(const SyntheticConfig& config) {
    config.validate();
    const std::size_t n = static_cast<std::size_t>(config.duration_s / config.cadence_s);
    const double burst_p = config.burst_rate_per_day * config.cadence_s / 86400.0;

    std::vector<SensorSeries> out;
    out.reserve(config.n_devices);
    for (int dev = 0; dev < config.n_devices; ++dev) {
        rng::Stream stream(rng::derive_seed(config.seed, static_cast<std::uint64_t>(dev)));
        SensorSeries s;
        char name[24];
        std::snprintf(name, sizeof name, "synth-%03d", dev);
        s.device_id = name;
        s.start_time = config.start_time;
        s.cadence_s = config.cadence_s;
        s.samples.resize(n);
        s.present.assign(n, {true, true, true, true});

        const double phase = stream.uniform() * kTwoPi;
        double pm10 = config.pm10_baseline;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) * config.cadence_s;
            const double diurnal = std::sin(kTwoPi * t / 86400.0 + phase);
            Sample& smp = s.samples[i];
            smp.temp = config.temp_mean_c + config.temp_amplitude_c * diurnal +
                       stream.normal(0.0, config.temp_noise_sd);
            smp.rh = std::clamp(config.rh_mean_pct - config.rh_amplitude_pct * diurnal +
                                    stream.normal(0.0, config.rh_noise_sd),
                                0.0, 100.0);
            if (burst_p > 0.0 && stream.uniform() < burst_p)
                pm10 += stream.exponential(1.0 / config.burst_magnitude);
            pm10 += config.pm10_reversion * (config.pm10_baseline - pm10) +
                    stream.normal(0.0, config.pm10_noise_sd);
            pm10 = std::max(pm10, 0.0);
            smp.pm10 = pm10;
            smp.pm25 = std::max(config.pm25_fraction * pm10 + stream.normal(0.0, config.pm25_noise_sd), 0.0);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace leoiot::timeseries
