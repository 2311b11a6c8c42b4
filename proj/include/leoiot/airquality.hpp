#ifndef LEOIOT_AIRQUALITY_HPP
#define LEOIOT_AIRQUALITY_HPP

#include <string>
#include <vector>

namespace leoiot::airquality {

enum class Pollutant { Pm25, Pm10 };

Pollutant parse_pollutant(const std::string& name);  // "pm25" | "pm10"
std::string to_string(Pollutant p);

/// One piecewise-linear band: concentrations [b_lo, b_hi] map to index
/// points [i_lo, i_hi].
struct Band {
    double b_lo, b_hi, i_lo, i_hi;
};

class BreakpointTable {
public:
    /// CPCB bands for PM2.5 and PM10. The severe band's upper edge continues
    /// the slope of the band below it (PM2.5 380, PM10 510); concentrations
    /// beyond it clamp to index 500.
    static BreakpointTable cpcb_default();

    /// Plain-text table, one `pollutant b_lo b_hi i_lo i_hi` line per band,
    /// `#` comments allowed.
    static BreakpointTable load(const std::string& path);
    void save(const std::string& path) const;

    const std::vector<Band>& bands(Pollutant p) const;
    std::vector<Band>& bands(Pollutant p);

    /// Bands must be sorted, contiguous and non-overlapping with b_lo < b_hi
    /// and i_lo <= i_hi.
    void validate() const;

private:
    std::vector<Band> pm25_;
    std::vector<Band> pm10_;
};

struct AqiResult {
    double aqi;
    double sub_pm25;
    double sub_pm10;
    Pollutant dominant;
};

/// Piecewise-linear sub-index for one pollutant concentration. Above the top
/// band the index clamps to 500.
double sub_index(double concentration, Pollutant p, const BreakpointTable& table);

/// AQI = max of the PM2.5 and PM10 sub-indices.
AqiResult aqi(double pm25, double pm10, const BreakpointTable& table);

}  // namespace leoiot::airquality

#endif
