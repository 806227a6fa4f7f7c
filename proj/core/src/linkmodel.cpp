#include "luxlink/linkmodel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace luxlink {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

// Spectral efficiency cap for the RF rate-to-power inversion. 2^60 on a
// picowatt noise floor is already a megawatt; past this the model has left
// any physical regime and the link is reported unusable instead.
constexpr double kMaxBitsPerHz = 60.0;
}  // namespace

double concentrator_gain(const VlcReceiver& rx) {
    if (!(rx.fov_deg > 0.0 && rx.fov_deg <= 90.0))
        throw std::domain_error("concentrator_gain: fov must be in (0, 90] degrees");
    if (!(rx.lens_index > 0.0))
        throw std::domain_error("concentrator_gain: lens index must be positive");
    double s = std::sin(deg2rad(rx.fov_deg));
    return rx.lens_index * rx.lens_index / (s * s);
}

double vlc_channel_gain(const VlcApRadio& ap, const VlcReceiver& rx, const Vec3& ut_pos) {
    Vec3 d = ut_pos - ap.emitter.position;
    double r2 = norm2(d);
    if (r2 <= 0.0)
        throw std::domain_error("vlc_channel_gain: receiver coincides with the emitter");
    double r = std::sqrt(r2);

    double g = lambertian_order(ap.emitter.semi_angle_deg);
    Vec3 axis = normalized(ap.emitter.beam_axis);
    double cos_theta = dot(axis, d) / r;
    double cos_psi = -d.z / r;  // photodiode faces straight up
    if (cos_theta <= 0.0) return 0.0;
    if (cos_psi < std::cos(deg2rad(rx.fov_deg))) return 0.0;  // outside the field of view

    return (g + 1.0) * rx.detector_area_m2 / (2.0 * std::numbers::pi * r2) *
           std::pow(cos_theta, g) * rx.filter_gain * concentrator_gain(rx) * cos_psi;
}

double vlc_capacity_bps(const VlcApRadio& ap, const VlcReceiver& rx, const Vec3& ut_pos) {
    if (!(rx.noise_power_a2 > 0.0))
        throw std::domain_error("vlc_capacity_bps: noise power must be positive");
    double h = vlc_channel_gain(ap, rx, ut_pos);
    if (h <= 0.0) return 0.0;
    double p_optical = ap.emitter.p_on_watts * ap.emitter.eta_dc;
    double signal = rx.responsivity_a_per_w * h * 2.0 * p_optical;
    double snr = signal * signal / rx.noise_power_a2;
    return ap.bandwidth_hz * std::log2(1.0 + snr);
}

double vlc_max_total_power(const VlcApRadio& ap) {
    if (!(ap.eta_ac > 0.0) || ap.eta_ac > ap.emitter.eta_dc)
        throw std::domain_error("vlc_max_total_power: eta_ac must be in (0, eta_dc]");
    return ap.emitter.p_on_watts * ap.emitter.eta_dc / ap.eta_ac;
}

double vlc_additive_power(const VlcApRadio& ap, const VlcReceiver& rx, const Vec3& ut_pos,
                          double rate_bps) {
    if (rate_bps < 0.0) throw std::domain_error("vlc_additive_power: negative rate");
    if (!(ap.eta_ac > 0.0) || ap.eta_ac > ap.emitter.eta_dc)
        throw std::domain_error("vlc_additive_power: eta_ac must be in (0, eta_dc]");
    if (rate_bps == 0.0) return 0.0;
    double cap = vlc_capacity_bps(ap, rx, ut_pos);
    if (cap <= 0.0 || rate_bps > cap) return kInf;
    double drive_overhead = ap.emitter.eta_dc / ap.eta_ac - 1.0;
    return rate_bps / cap * ap.emitter.p_on_watts * drive_overhead;
}

double wifi_rx_power(double rate_bps, const WifiAp& ap) {
    if (rate_bps < 0.0) throw std::domain_error("wifi_rx_power: negative rate");
    if (!(ap.bandwidth_per_user_hz > 0.0) || !(ap.noise_floor_w > 0.0))
        throw std::domain_error("wifi_rx_power: bandwidth and noise floor must be positive");
    if (rate_bps == 0.0) return 0.0;
    double bits_per_hz = rate_bps / ap.bandwidth_per_user_hz;
    if (bits_per_hz > kMaxBitsPerHz) return kInf;
    return ap.noise_floor_w * (std::exp2(bits_per_hz) - 1.0);
}

double wifi_additive_power(double rate_bps, const WifiAp& ap, const Vec3& ut_pos) {
    double p_rx = wifi_rx_power(rate_bps, ap);
    if (p_rx == 0.0) return 0.0;
    if (std::isinf(p_rx)) return kInf;
    if (!(ap.eta > 0.0)) throw std::domain_error("wifi_additive_power: eta must be positive");

    double r = norm(ut_pos - ap.position);
    if (r <= 0.0)
        throw std::domain_error("wifi_additive_power: receiver coincides with the AP");
    double friis = 4.0 * std::numbers::pi * r / ap.wavelength_m;
    double p_tx = p_rx * friis * friis;
    // floor_attenuation_db is a loss (negative dB), so this factor exceeds 1
    double through_floors = std::pow(10.0, -ap.floor_attenuation_db / 10.0);
    return p_tx * through_floors / ap.eta;
}

}  // namespace luxlink
