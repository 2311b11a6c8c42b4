#include "leoiot/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace leoiot::energy {

void PowerProfile::validate() const {
    const StateSpec* states[] = {&rx, &tx_50b, &tx_200b, &idle, &gnss};
    for (const StateSpec* s : states)
        if (s->duration_ms < 0 || s->power_mw < 0)
            throw std::invalid_argument("energy: state durations and powers must be >= 0");
    if (sleep_power_mw < 0) throw std::invalid_argument("energy: sleep power must be >= 0");
}

void DutyCycle::validate() const {
    if (!(visibility_s > 0)) throw std::invalid_argument("energy: visibility must be > 0");
    if (!(inter_pass_s > visibility_s))
        throw std::invalid_argument("energy: inter-pass duration must exceed visibility");
    if (!(sensing_period_s > 0)) throw std::invalid_argument("energy: sensing period must be > 0");
    if (tx_events_per_pass < 0 || gnss_per_pass < 0 || overhead_mws < 0)
        throw std::invalid_argument("energy: per-pass activity must be >= 0");
    if (tx_events_per_pass > visibility_s / sensing_period_s + 1e-9)
        throw std::invalid_argument("energy: more transmissions than sensing slots in a pass");
    if (payload_bytes != 50 && payload_bytes != 200)
        throw std::invalid_argument("energy: payload must be 50 or 200 bytes");
}

namespace {
const StateSpec& tx_state(int payload_bytes, const PowerProfile& profile) {
    if (payload_bytes == 50) return profile.tx_50b;
    if (payload_bytes == 200) return profile.tx_200b;
    throw std::invalid_argument("energy: unsupported payload " + std::to_string(payload_bytes) +
                                " bytes");
}
}  // namespace

double per_event_energy_mws(int payload_bytes, const PowerProfile& profile) {
    profile.validate();
    return profile.rx.energy_mws() + tx_state(payload_bytes, profile).energy_mws() +
           profile.idle.energy_mws();
}

double per_event_active_s(int payload_bytes, const PowerProfile& profile) {
    return (profile.rx.duration_ms + tx_state(payload_bytes, profile).duration_ms +
            profile.idle.duration_ms) /
           1000.0;
}

LifetimeEstimate lifetime(const DutyCycle& duty, const PowerProfile& profile, double battery_mwh) {
    duty.validate();
    profile.validate();
    if (!(battery_mwh > 0)) throw std::invalid_argument("energy: battery capacity must be > 0");

    LifetimeEstimate est;
    est.cycle_s = duty.inter_pass_s;
    EnergyBreakdown& b = est.per_cycle;
    b.gnss_mws = duty.gnss_per_pass * profile.gnss.energy_mws();
    b.events_mws = duty.tx_events_per_pass * per_event_energy_mws(duty.payload_bytes, profile);
    b.overhead_mws = duty.overhead_mws;
    b.active_s = duty.gnss_per_pass * profile.gnss.duration_ms / 1000.0 +
                 duty.tx_events_per_pass * per_event_active_s(duty.payload_bytes, profile);
    if (b.active_s > est.cycle_s)
        throw std::invalid_argument("energy: active time exceeds the pass cycle");
    b.sleep_mws = profile.sleep_power_mw * (est.cycle_s - b.active_s);
    b.total_mws = b.gnss_mws + b.events_mws + b.overhead_mws + b.sleep_mws;

    est.avg_power_mw = b.total_mws / est.cycle_s;
    if (!(est.avg_power_mw > 0))
        throw std::invalid_argument("energy: average power is zero; lifetime unbounded");
    const double hours = battery_mwh / est.avg_power_mw;
    est.lifetime_years = hours / 8760.0;
    return est;
}

double events_per_pass_from_reduction(double reduction_fraction, double visibility_s,
                                      double sensing_period_s) {
    if (!(reduction_fraction >= 0.0 && reduction_fraction <= 1.0))
        throw std::invalid_argument("energy: reduction fraction must be in [0, 1]");
    if (!(visibility_s > 0 && sensing_period_s > 0))
        throw std::invalid_argument("energy: visibility and sensing period must be > 0");
    return (1.0 - reduction_fraction) * (visibility_s / sensing_period_s);
}

std::vector<LifetimeGridEntry> lifetime_grid(const std::vector<ModeSpec>& modes,
                                             const std::vector<double>& inter_pass_hours,
                                             const PowerProfile& profile, const DutyCycle& base,
                                             double battery_mwh) {
    std::vector<LifetimeGridEntry> grid;
    grid.reserve(modes.size());
    for (const ModeSpec& mode : modes) {
        LifetimeGridEntry entry;
        entry.mode = mode.name;
        entry.reduction_fraction = mode.reduction_fraction;
        entry.payload_bytes = mode.payload_bytes;
        for (double hours : inter_pass_hours) {
            DutyCycle duty = base;
            duty.inter_pass_s = hours * 3600.0;
            duty.payload_bytes = mode.payload_bytes;
            duty.tx_events_per_pass = events_per_pass_from_reduction(
                mode.reduction_fraction, duty.visibility_s, duty.sensing_period_s);
            entry.lifetime_years.push_back(lifetime(duty, profile, battery_mwh).lifetime_years);
        }
        grid.push_back(std::move(entry));
    }
    return grid;
}

}  // namespace leoiot::energy
