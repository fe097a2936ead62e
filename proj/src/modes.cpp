#include "modebeam/modes.hpp"
#include "modebeam/errors.hpp"
#include "modebeam/geometry.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace modebeam {

namespace {
constexpr double kTaperWidthRad = 5.0 * kPi / 180.0;

// j^n for n in {0, 1, 2, 3}
std::complex<double> j_power(int n) {
    switch (n & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}
} // namespace

double back_lobe_factor(double theta_rad) {
    const double t0 = 0.5 * kPi;
    if (theta_rad <= t0) return 1.0;
    if (theta_rad >= t0 + kTaperWidthRad) return kBackLobeAmplitude;
    const double f = (theta_rad - t0) / kTaperWidthRad;
    return 1.0 + (kBackLobeAmplitude - 1.0) * f;
}

Complex2 eval_mode_farfield(const ModeSpec& mode, double f_ghz,
                            double theta_rad, double phi_rad) {
    const int n = mode.azimuthal_order;
    const double k = kTwoPi * f_ghz / kSpeedOfLightMmGhz;
    const double x = k * mode.effective_radius_mm * std::sin(theta_rad);
    const double jp = bessel_j(n + 1, x);
    const double jm = n >= 1 ? bessel_j(n - 1, x) : -bessel_j(1, x);
    double az_theta, az_phi;
    if (mode.orientation == Orientation::cos_phi) {
        az_theta = std::cos(n * phi_rad);
        az_phi = std::sin(n * phi_rad);
    } else {
        az_theta = std::sin(n * phi_rad);
        az_phi = -std::cos(n * phi_rad);
    }
    const std::complex<double> jn = j_power(n);
    const double bl = back_lobe_factor(theta_rad);
    Complex2 e;
    e.e_theta = mode.gain_scale * jn * (jp - jm) * az_theta * bl;
    e.e_phi = -mode.gain_scale * jn * (jp + jm) * std::cos(theta_rad) * az_phi * bl;
    return e;
}

std::vector<double> unwrapped_phase_profile(const std::vector<Complex2>& samples) {
    double pt = 0.0, pp = 0.0;
    for (const Complex2& s : samples) {
        pt += std::norm(s.e_theta);
        pp += std::norm(s.e_phi);
    }
    const bool use_theta = pt >= pp;
    std::vector<double> phase;
    phase.reserve(samples.size());
    double prev = 0.0, offset = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::complex<double> v =
            use_theta ? samples[i].e_theta : samples[i].e_phi;
        double a = std::arg(v);
        if (i > 0) {
            while (a + offset - prev > kPi) offset -= kTwoPi;
            while (a + offset - prev < -kPi) offset += kTwoPi;
        }
        prev = a + offset;
        phase.push_back(prev);
    }
    return phase;
}

std::vector<double> mode_phase_profile(const ModeSpec& mode, double f_ghz,
                                       double theta_rad,
                                       const std::vector<double>& phi_samples) {
    std::vector<Complex2> samples;
    samples.reserve(phi_samples.size());
    for (double phi : phi_samples)
        samples.push_back(eval_mode_farfield(mode, f_ghz, theta_rad, phi));
    return unwrapped_phase_profile(samples);
}

double ring_characteristic(double k_per_mm, double inner_radius_mm,
                           double outer_radius_mm, int order) {
    const double ja = bessel_deriv(BesselKind::J, order, k_per_mm * inner_radius_mm);
    const double jb = bessel_deriv(BesselKind::J, order, k_per_mm * outer_radius_mm);
    const double ya = bessel_deriv(BesselKind::Y, order, k_per_mm * inner_radius_mm);
    const double yb = bessel_deriv(BesselKind::Y, order, k_per_mm * outer_radius_mm);
    return ja * yb - jb * ya;
}

double resonant_frequency(const AntennaLayout& layout, const ModeSpec& mode,
                          const ResonanceModel& model) {
    const double root_eps = std::sqrt(model.eps_r);
    switch (mode.family) {
        case ModeFamily::patch_tm11: {
            const double a = 0.5 * layout.patch_diameter_mm;
            return kTm11Eigenvalue * kSpeedOfLightMmGhz / (kTwoPi * a * root_eps) *
                   model.slot_loading_patch;
        }
        case ModeFamily::patch_tm01_monopole: {
            // Shorted-patch TM01 estimate, same structure as the TM11 form.
            const double a = 0.5 * layout.patch_diameter_mm;
            return kTm01Eigenvalue * kSpeedOfLightMmGhz / (kTwoPi * a * root_eps) *
                   model.slot_loading_patch;
        }
        case ModeFamily::ring_tm21: {
            const double a = 0.5 * layout.ring_inner_diameter_mm;
            const double b = 0.5 * layout.ring_outer_diameter_mm;
            double k;
            try {
                k = find_root_bracketed(
                    [&](double kk) { return ring_characteristic(kk, a, b); },
                    kRingRootBracketLo, kRingRootBracketHi, 1e-12);
            } catch (const BracketError& e) {
                throw NumericError(std::string("ring resonance solve failed: ") + e.what());
            }
            return k * kSpeedOfLightMmGhz / (kTwoPi * root_eps) * model.slot_loading_ring;
        }
    }
    throw ConfigError("resonant_frequency: unknown mode family");
}

ResonanceModel calibrate_slot_loading(const AntennaLayout& layout,
                                      const ResonanceModel& model) {
    ResonanceModel out = model;
    out.slot_loading_patch = 1.0;
    out.slot_loading_ring = 1.0;
    bool have_patch = false, have_ring = false;
    for (const ModeSpec& mode : layout.modes) {
        const bool is_ring = mode.family == ModeFamily::ring_tm21;
        if ((is_ring && have_ring) || (!is_ring && have_patch)) continue;
        const double f_uncal = resonant_frequency(layout, mode, out);
        const double loading = layout.design_frequency_ghz / f_uncal;
        if (is_ring) {
            out.slot_loading_ring = loading;
            have_ring = true;
        } else {
            out.slot_loading_patch = loading;
            have_patch = true;
        }
    }
    return out;
}

double bent_frequency(double f_flat_ghz, const AntennaLayout& layout,
                      const BendSpec& bend, const ResonanceModel& model) {
    if (!(f_flat_ghz > 0.0)) throw ConfigError("bent_frequency: f_flat must be > 0");
    if (bend.flat) return f_flat_ghz;
    validate_bend(bend);
    const double half_arc = layout.board_side_mm / (2.0 * bend.radius_mm);
    return f_flat_ghz * (1.0 - model.bend_coefficient * half_arc * half_arc);
}

double calibrate_bend_coefficient(double f_flat_ghz, double f_bent_ghz,
                                  double board_side_mm, double radius_mm) {
    const double half_arc = board_side_mm / (2.0 * radius_mm);
    return (1.0 - f_bent_ghz / f_flat_ghz) / (half_arc * half_arc);
}

} // namespace modebeam
