#pragma once

#include <span>

#include "luxlink/vec3.hpp"

// Photometric model of the LED luminaires. Each emitter is a generalized
// Lambertian source; horizontal illuminance on the desk plane is the sum of
// the direct line-of-sight contributions of all emitters in the same room
// (walls are opaque, there is no reflected component in this model).

namespace luxlink {

// Conversion from solar irradiance to indoor daylight illuminance:
// E_ambient = DF% * 93 lm/W * R_sun * 0.01, with 93 lm/W the luminous
// efficacy of daylight.
inline constexpr double kDaylightEfficacyLmPerW = 93.0;

struct Luminaire {
    Vec3 position;               // emitter location, m
    Vec3 beam_axis;              // direction of the central flux (normalized on use)
    double semi_angle_deg = 0;   // half-power semi-angle of the beam
    double p_on_watts = 0;       // electrical draw when switched on
    double eta_dc = 0;           // DC electrical-to-optical conversion efficiency
    double efficacy_lm_per_w = 0;  // lumens per watt of radiated optical power
    int room_id = -1;
};

struct SamplePoint {
    Vec3 position;                    // on the desk plane
    int room_id = -1;
    double daylight_factor_pct = 0;   // window contribution, percent
};

// Lambertian mode number from the half-power semi-angle.
// Valid for angles strictly between 0 and 90 degrees.
double lambertian_order(double semi_angle_deg);

// Total luminous flux of one emitter when on, lm.
double luminous_flux(const Luminaire& lum);

// Illuminance contribution of a single emitter at a desk-plane point with an
// upward-facing surface normal, lux. Ignores room membership; callers decide
// visibility. Both the emission and the incidence cosine clamp at zero, so a
// point behind the beam or above the emitter receives nothing.
double illuminance_from(const Luminaire& lum, const Vec3& point);

// Horizontal illuminance at a desk-plane point from every switched-on emitter
// in the same room, lux.
double horizontal_illuminance(std::span<const Luminaire> on_emitters, const Vec3& point,
                              int point_room_id);

// Daylight contribution at a point with the given daylight factor, lux.
double ambient_illuminance(double daylight_factor_pct, double r_sun_wm2);

// Lux still owed by the luminaires once daylight is accounted for.
double residual_requirement(double target_lux, double ambient_lux);

}  // namespace luxlink
