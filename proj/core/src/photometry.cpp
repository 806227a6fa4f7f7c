#include "luxlink/photometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace luxlink {

double lambertian_order(double semi_angle_deg) {
    if (!(semi_angle_deg > 0.0 && semi_angle_deg < 90.0))
        throw std::domain_error("lambertian_order: semi-angle must be in (0, 90) degrees");
    double c = std::cos(semi_angle_deg * std::numbers::pi / 180.0);
    return -std::numbers::ln2 / std::log(c);
}

double luminous_flux(const Luminaire& lum) {
    if (!(lum.p_on_watts > 0.0) || !(lum.eta_dc > 0.0) || !(lum.efficacy_lm_per_w > 0.0))
        throw std::domain_error("luminous_flux: power, efficiency and efficacy must be positive");
    return lum.efficacy_lm_per_w * lum.p_on_watts * lum.eta_dc;
}

double illuminance_from(const Luminaire& lum, const Vec3& point) {
    Vec3 d = point - lum.position;
    double r2 = norm2(d);
    if (r2 <= 0.0)
        throw std::domain_error("illuminance_from: point coincides with the emitter");
    double r = std::sqrt(r2);

    double g = lambertian_order(lum.semi_angle_deg);
    Vec3 axis = normalized(lum.beam_axis);
    double cos_theta = dot(axis, d) / r;      // angle off the beam axis
    double cos_psi = -d.z / r;                // incidence on an upward-facing surface
    if (cos_theta <= 0.0 || cos_psi <= 0.0) return 0.0;

    double radiant_peak = (g + 1.0) / (2.0 * std::numbers::pi);
    return radiant_peak * std::pow(cos_theta, g) * cos_psi / r2 * luminous_flux(lum);
}

double horizontal_illuminance(std::span<const Luminaire> on_emitters, const Vec3& point,
                              int point_room_id) {
    double lux = 0.0;
    for (const Luminaire& lum : on_emitters) {
        if (lum.room_id != point_room_id) continue;  // walls are opaque
        lux += illuminance_from(lum, point);
    }
    return lux;
}

double ambient_illuminance(double daylight_factor_pct, double r_sun_wm2) {
    if (daylight_factor_pct < 0.0 || r_sun_wm2 < 0.0)
        throw std::domain_error("ambient_illuminance: inputs must be non-negative");
    return daylight_factor_pct * kDaylightEfficacyLmPerW * r_sun_wm2 * 0.01;
}

double residual_requirement(double target_lux, double ambient_lux) {
    if (target_lux < 0.0 || ambient_lux < 0.0)
        throw std::domain_error("residual_requirement: inputs must be non-negative");
    return std::max(0.0, target_lux - ambient_lux);
}

}  // namespace luxlink
