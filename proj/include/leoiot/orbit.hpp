#ifndef LEOIOT_ORBIT_HPP
#define LEOIOT_ORBIT_HPP

namespace leoiot::orbit {

/// Circular-orbit geometry for a LEO pass. `r` in the visibility formula is
/// the orbital radius earth_radius_km + altitude_km; with the altitude alone
/// the arccos argument leaves [-1, 1] and the known 600 km pass durations
/// (about 4 min at a 30 deg mask, 13 min at 0 deg) are not reproduced.
struct OrbitGeometry {
    double altitude_km = 600.0;
    double inclination_deg = 81.0;
    double earth_radius_km = 6371.0;
    double mu_km3_s2 = 398600.4418;
    double earth_rot_rad_s = 7.2921159e-5;

    double orbit_radius_km() const { return earth_radius_km + altitude_km; }
    void validate() const;
};

struct PassSpec {
    double mask_angle_deg = 30.0;    // minimum usable elevation
    double max_elevation_deg = 90.0; // peak elevation of the pass
    void validate() const;
};

/// Orbital angular rate sqrt(mu / r^3) in rad/s.
double angular_rate_rad_s(const OrbitGeometry& geometry);

/// Ground-terminal-to-satellite distance at the given elevation angle, km.
double slant_range_km(double elevation_deg, const OrbitGeometry& geometry);

/// Time the satellite spends above the mask angle during a pass peaking at
/// max_elevation_deg, seconds. Throws std::domain_error if an arccos
/// argument falls outside [-1, 1] instead of clamping.
double visibility_duration_s(const PassSpec& pass, const OrbitGeometry& geometry);

}  // namespace leoiot::orbit

#endif
