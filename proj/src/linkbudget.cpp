#include "leoiot/linkbudget.hpp"

#include <cmath>
#include <stdexcept>

namespace leoiot::linkbudget {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299792458.0;  // m/s
}  // namespace

void RadioConfig::validate() const {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("linkbudget: bandwidth must be > 0");
    if (!(frequency_hz > 0.0)) throw std::invalid_argument("linkbudget: frequency must be > 0");
    const double losses[] = {atmospheric_loss_db, shadow_margin_db, scintillation_loss_db,
                             polarization_loss_db, additional_losses_db};
    for (double l : losses)
        if (l < 0.0) throw std::invalid_argument("linkbudget: losses must be >= 0 dB");
}

double fspl_db(double frequency_hz, double distance_m) {
    if (!(frequency_hz > 0.0 && distance_m > 0.0))
        throw std::invalid_argument("linkbudget: fspl needs positive frequency and distance");
    return 20.0 * std::log10(4.0 * kPi * distance_m * frequency_hz / kSpeedOfLight);
}

SnrBreakdown snr(const RadioConfig& config, double path_loss_db) {
    config.validate();
    SnrBreakdown b;
    b.eirp_dbw = config.eirp_dbw;
    b.g_over_t_db = config.g_over_t_db_k;
    b.boltzmann_db = -kBoltzmannDbwKHz;
    b.fspl_db = -path_loss_db;
    b.atmospheric_db = -config.atmospheric_loss_db;
    b.shadow_db = -config.shadow_margin_db;
    b.scintillation_db = -config.scintillation_loss_db;
    b.polarization_db = -config.polarization_loss_db;
    b.additional_db = -config.additional_losses_db;
    b.bandwidth_db = -10.0 * std::log10(config.bandwidth_hz);
    b.snr_db = b.eirp_dbw + b.g_over_t_db + b.boltzmann_db + b.fspl_db + b.atmospheric_db +
               b.shadow_db + b.scintillation_db + b.polarization_db + b.additional_db +
               b.bandwidth_db;
    return b;
}

ParamSet parse_param_set(const std::string& id) {
    if (id == "Set-1" || id == "set-1" || id == "Set1" || id == "set1") return ParamSet::Set1;
    if (id == "Set-4" || id == "set-4" || id == "Set4" || id == "set4") return ParamSet::Set4;
    throw std::invalid_argument("linkbudget: unknown parameter set '" + id + "'");
}

std::string to_string(ParamSet set) { return set == ParamSet::Set1 ? "Set-1" : "Set-4"; }

RadioConfig Preset::uplink_config(double bandwidth_hz, bool beam_edge) const {
    RadioConfig c;
    c.eirp_dbw = ul_eirp_dbw;
    c.g_over_t_db_k = g_over_t_db_k;
    c.bandwidth_hz = bandwidth_hz;
    c.frequency_hz = frequency_hz;
    c.additional_losses_db = beam_edge ? 3.0 : 0.0;
    return c;
}

Preset preset(ParamSet set) {
    Preset p;
    p.set = set;
    if (set == ParamSet::Set1) {
        p.g_over_t_db_k = 1.1;
        p.eirp_density_dbw_mhz = 34.0;
        p.beam_center_elev_deg = 30.0;
        p.beam_edge_elev_deg = 27.0;
        p.beam_3db_width_deg = 4.4127;
    } else {
        p.g_over_t_db_k = -18.6;
        p.eirp_density_dbw_mhz = 21.45;
        p.beam_center_elev_deg = 90.0;
        p.beam_edge_elev_deg = 30.0;
        p.beam_3db_width_deg = 104.7;
    }
    return p;
}

std::vector<Table3Row> table3_report(const orbit::OrbitGeometry& geometry) {
    std::vector<Table3Row> rows;
    for (ParamSet set : {ParamSet::Set1, ParamSet::Set4}) {
        const Preset p = preset(set);
        struct Point {
            double elevation;
            bool edge;
        };
        // Table layout: beam edge first, then beam centre.
        const Point points[] = {{p.beam_edge_elev_deg, true}, {p.beam_center_elev_deg, false}};
        for (const Point& pt : points) {
            const double range_km = orbit::slant_range_km(pt.elevation, geometry);
            const double pl = fspl_db(p.frequency_hz, range_km * 1000.0);
            for (double bw : {kSingleToneHz, kMultiToneHz}) {
                Table3Row row;
                row.set = set;
                row.elevation_deg = pt.elevation;
                row.beam_edge = pt.edge;
                row.bandwidth_hz = bw;
                row.slant_range_km = range_km;
                row.breakdown = snr(p.uplink_config(bw, pt.edge), pl);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

}  // namespace leoiot::linkbudget
