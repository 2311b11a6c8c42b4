#ifndef LEOIOT_ENERGY_HPP
#define LEOIOT_ENERGY_HPP

#include <string>
#include <vector>

namespace leoiot::energy {

struct StateSpec {
    double duration_ms = 0;
    double power_mw = 0;
    double energy_mws() const { return duration_ms / 1000.0 * power_mw; }
};

/// NTN-IoT per-state consumption model. Defaults follow the 3GPP NTN energy
/// assumptions for a 164 dB MCL device.
struct PowerProfile {
    StateSpec rx{371, 90};        // sync, RAR, grants, ACKs, PDCCH
    StateSpec tx_50b{335, 543};   // PRACH + 50 B report
    StateSpec tx_200b{1006, 543}; // PRACH + 200 B report
    StateSpec idle{22423, 2.4};   // timers and scheduling gaps around an event
    StateSpec gnss{2000, 37};
    double sleep_power_mw = 0.015;
    void validate() const;
};

struct DutyCycle {
    double visibility_s = 300;
    double inter_pass_s = 7200;
    double sensing_period_s = 30;
    double tx_events_per_pass = 10;  // from a log or a reduction fraction
    int gnss_per_pass = 1;
    double overhead_mws = 0;  // calibration knob for unmodelled per-pass activity
    int payload_bytes = 200;  // 50 or 200
    void validate() const;
};

struct EnergyBreakdown {
    double gnss_mws = 0;
    double events_mws = 0;
    double overhead_mws = 0;
    double sleep_mws = 0;
    double total_mws = 0;
    double active_s = 0;  // time not spent sleeping
};

struct LifetimeEstimate {
    EnergyBreakdown per_cycle;
    double cycle_s = 0;
    double avg_power_mw = 0;
    double lifetime_years = 0;  // 8760 h per year
};

/// RX + TX(payload) + idle energy of one transmission event, mWs.
double per_event_energy_mws(int payload_bytes, const PowerProfile& profile);
double per_event_active_s(int payload_bytes, const PowerProfile& profile);

/// One pass cycle: GNSS fixes, transmission events, the overhead knob, and
/// sleep for the rest of the inter-pass period.
LifetimeEstimate lifetime(const DutyCycle& duty, const PowerProfile& profile,
                          double battery_mwh = 5000.0);

double events_per_pass_from_reduction(double reduction_fraction, double visibility_s,
                                      double sensing_period_s);

struct LifetimeGridEntry {
    std::string mode;
    double reduction_fraction;
    int payload_bytes;
    std::vector<double> lifetime_years;  // one per inter-pass duration
};

struct ModeSpec {
    std::string name;
    double reduction_fraction;
    int payload_bytes;
};

/// Lifetime grid over modes x inter-pass durations. Absolute values depend
/// on the overhead knob; the ordering across modes and durations is the
/// contract.
std::vector<LifetimeGridEntry> lifetime_grid(const std::vector<ModeSpec>& modes,
                                             const std::vector<double>& inter_pass_hours,
                                             const PowerProfile& profile, const DutyCycle& base,
                                             double battery_mwh = 5000.0);

}  // namespace leoiot::energy

#endif
