#include "leoiot/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace leoiot::orbit {

namespace {
constexpr double kPi = 3.14159265358979323846;
double deg2rad(double d) { return d * kPi / 180.0; }
}  // namespace

void OrbitGeometry::validate() const {
    if (!(altitude_km > 0.0)) throw std::invalid_argument("orbit: altitude must be > 0 km");
    if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0))
        throw std::invalid_argument("orbit: inclination must be in [0, 180] deg");
    if (!(earth_radius_km > 0.0)) throw std::invalid_argument("orbit: earth radius must be > 0");
    if (!(mu_km3_s2 > 0.0)) throw std::invalid_argument("orbit: mu must be > 0");
}

void PassSpec::validate() const {
    if (!(mask_angle_deg >= 0.0 && max_elevation_deg <= 90.0 && mask_angle_deg <= max_elevation_deg))
        throw std::invalid_argument("orbit: require 0 <= mask angle <= max elevation <= 90");
}

double angular_rate_rad_s(const OrbitGeometry& geometry) {
    geometry.validate();
    const double r = geometry.orbit_radius_km();
    return std::sqrt(geometry.mu_km3_s2 / (r * r * r));
}

double slant_range_km(double elevation_deg, const OrbitGeometry& geometry) {
    geometry.validate();
    if (!(elevation_deg >= 0.0 && elevation_deg <= 90.0))
        throw std::invalid_argument("orbit: elevation must be in [0, 90] deg");
    const double re = geometry.earth_radius_km;
    const double h = geometry.altitude_km;
    const double s = std::sin(deg2rad(elevation_deg));
    return -re * s + std::sqrt(re * re * s * s + h * h + 2.0 * re * h);
}

namespace {
// Earth-central angle between terminal and sub-satellite point when the
// satellite is seen at elevation theta.
double central_angle_rad(double elevation_deg, const OrbitGeometry& g) {
    const double arg = (g.earth_radius_km / g.orbit_radius_km()) * std::cos(deg2rad(elevation_deg));
    if (arg < -1.0 || arg > 1.0)
        throw std::domain_error("orbit: arccos argument " + std::to_string(arg) + " outside [-1, 1]");
    return std::acos(arg) - deg2rad(elevation_deg);
}
}  // namespace

double visibility_duration_s(const PassSpec& pass, const OrbitGeometry& geometry) {
    pass.validate();
    geometry.validate();
    const double omega_s = angular_rate_rad_s(geometry);
    const double omega_rel = omega_s - geometry.earth_rot_rad_s * std::cos(deg2rad(geometry.inclination_deg));
    if (!(omega_rel > 0.0)) throw std::domain_error("orbit: satellite does not move relative to the terminal");

    const double ratio = std::cos(central_angle_rad(pass.mask_angle_deg, geometry)) /
                         std::cos(central_angle_rad(pass.max_elevation_deg, geometry));
    if (ratio < -1.0 || ratio > 1.0 + 1e-12)
        throw std::domain_error("orbit: arccos argument " + std::to_string(ratio) + " outside [-1, 1]");
    return 2.0 / omega_rel * std::acos(std::min(ratio, 1.0));
}

}  // namespace leoiot::orbit
