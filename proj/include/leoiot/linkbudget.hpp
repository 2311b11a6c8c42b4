#ifndef LEOIOT_LINKBUDGET_HPP
#define LEOIOT_LINKBUDGET_HPP

#include <string>
#include <vector>

#include "leoiot/orbit.hpp"

namespace leoiot::linkbudget {

inline constexpr double kBoltzmannDbwKHz = -228.6;
inline constexpr double kSingleToneHz = 3750.0;
inline constexpr double kMultiToneHz = 180000.0;
inline constexpr double kUplinkEirpDbw = -7.0;
inline constexpr double kUplinkDataRateBps = 1600.0;  // Set-4 closed-link UL rate

struct RadioConfig {
    double eirp_dbw = kUplinkEirpDbw;
    double g_over_t_db_k = -18.6;
    double bandwidth_hz = kSingleToneHz;
    double frequency_hz = 2.0e9;
    double atmospheric_loss_db = 0.1;
    double shadow_margin_db = 3.0;
    double scintillation_loss_db = 2.2;
    double polarization_loss_db = 3.0;
    double additional_losses_db = 0.0;
    void validate() const;
};

/// Signed dB terms of the SNR sum. `snr` equals the sum of every term.
struct SnrBreakdown {
    double eirp_dbw = 0;
    double g_over_t_db = 0;
    double boltzmann_db = 0;    // -k_B, +228.6
    double fspl_db = 0;         // negative
    double atmospheric_db = 0;  // negative
    double shadow_db = 0;
    double scintillation_db = 0;
    double polarization_db = 0;
    double additional_db = 0;
    double bandwidth_db = 0;    // -10 log10(B)
    double snr_db = 0;
};

double fspl_db(double frequency_hz, double distance_m);

SnrBreakdown snr(const RadioConfig& config, double path_loss_db);

enum class ParamSet { Set1, Set4 };

ParamSet parse_param_set(const std::string& id);  // "Set-1" | "Set-4"
std::string to_string(ParamSet set);

/// 3GPP beam-layout presets for a 600 km LEO payload.
struct Preset {
    ParamSet set;
    double g_over_t_db_k;
    double eirp_density_dbw_mhz;
    double beam_center_elev_deg;
    double beam_edge_elev_deg;
    double beam_3db_width_deg;
    double ul_eirp_dbw = kUplinkEirpDbw;
    double frequency_hz = 2.0e9;
    double ul_data_rate_bps = kUplinkDataRateBps;

    /// Uplink RadioConfig at the given elevation; beam-edge rows carry the
    /// extra 3 dB because EIRP is specified at beam centre.
    RadioConfig uplink_config(double bandwidth_hz, bool beam_edge) const;
};

Preset preset(ParamSet set);

struct Table3Row {
    ParamSet set;
    double elevation_deg;
    bool beam_edge;
    double bandwidth_hz;
    double slant_range_km;
    SnrBreakdown breakdown;
};

/// Uplink SNR for Set-1/Set-4 at beam edge and centre elevations, single- and
/// multi-tone. Slant ranges come from the pass geometry.
std::vector<Table3Row> table3_report(const orbit::OrbitGeometry& geometry = orbit::OrbitGeometry{});

}  // namespace leoiot::linkbudget

#endif
