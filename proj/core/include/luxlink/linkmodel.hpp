#pragma once

#include "luxlink/photometry.hpp"
#include "luxlink/vec3.hpp"

// Per-link power models. Every function returns the extra electrical power an
// access point must spend to carry one user's rate, or +infinity when the
// link cannot support that rate at all. Solvers treat +infinity as "no edge".

namespace luxlink {

struct VlcReceiver {
    double detector_area_m2 = 0;
    double responsivity_a_per_w = 0;  // photodiode optical-to-current conversion
    double filter_gain = 0;           // optical filter transmission
    double lens_index = 0;            // refractive index of the concentrator lens
    double fov_deg = 0;               // acceptance half-angle, (0, 90]
    double noise_power_a2 = 0;        // receiver noise variance
};

struct VlcApRadio {
    Luminaire emitter;
    double eta_ac = 0;       // AC conversion efficiency of the modulated drive
    double bandwidth_hz = 0;
    int channel_id = -1;     // orthogonal channel index within the room
};

struct WifiAp {
    Vec3 position;
    double p_on_watts = 0;
    double p_max_watts = 0;
    double bandwidth_per_user_hz = 0;
    double wavelength_m = 0;
    double floor_attenuation_db = 0;  // negative, e.g. -30 for three floors
    double noise_floor_w = 0;
    double eta = 0;                   // transmit chain efficiency
};

// Optical concentrator gain n^2 / sin^2(fov).
double concentrator_gain(const VlcReceiver& rx);

// DC channel gain of the optical link to an upward-facing receiver.
// Zero outside the receiver field of view or behind the emitter. Callers are
// responsible for room visibility; the gain is purely geometric.
double vlc_channel_gain(const VlcApRadio& ap, const VlcReceiver& rx, const Vec3& ut_pos);

// Shannon capacity of the optical link, bit/s.
double vlc_capacity_bps(const VlcApRadio& ap, const VlcReceiver& rx, const Vec3& ut_pos);

// Extra electrical power to serve rate_bps over the optical link. The lamp
// already spends p_on while lit, so only the AC drive overhead of the time
// share rate/capacity is charged: (R/C) * p_on * (eta_dc/eta_ac - 1).
double vlc_additive_power(const VlcApRadio& ap, const VlcReceiver& rx, const Vec3& ut_pos,
                          double rate_bps);

// Largest total power budget of the optical AP, p_on * eta_dc / eta_ac.
double vlc_max_total_power(const VlcApRadio& ap);

// Receiver sensitivity needed for rate_bps on a bandwidth_per_user channel:
// noise * (2^(R/W) - 1). Rates beyond 60 bits/s/Hz are refused as +infinity
// before the exponential can overflow.
double wifi_rx_power(double rate_bps, const WifiAp& ap);

// Extra electrical power to serve rate_bps from the RF AP: free-space path
// loss back to the transmitter, the inter-floor attenuation, and the transmit
// chain efficiency.
double wifi_additive_power(double rate_bps, const WifiAp& ap, const Vec3& ut_pos);

}  // namespace luxlink
