#ifndef MODEBEAM_MODES_HPP
#define MODEBEAM_MODES_HPP

#include "modebeam/numerics.hpp"

#include <string>
#include <vector>

namespace modebeam {

struct AntennaLayout; // geometry.hpp
struct BendSpec;      // geometry.hpp

enum class ModeFamily { patch_tm11, ring_tm21, patch_tm01_monopole };
enum class Orientation { cos_phi, sin_phi };

/// One radiating mode attached to a feed port.
///
/// Far-field model (cavity-model equivalent magnetic ring of radius a,
/// azimuthal order n, k = 2 pi f / c):
///   E_theta =  gain_scale * j^n * [J_{n+1}(ka sin t) - J_{n-1}(ka sin t)] * cos(n p)
///   E_phi   = -gain_scale * j^n * [J_{n+1}(ka sin t) + J_{n-1}(ka sin t)] * cos(t) * sin(n p)
/// with J_{-1} = -J_1. The sin orientation replaces cos(np) -> sin(np) and
/// sin(np) -> -cos(np). Below the ground plane the field is attenuated by
/// back_lobe_factor().
struct ModeSpec {
    std::string port;
    ModeFamily family = ModeFamily::patch_tm11;
    int azimuthal_order = 1;                       // n in {0, 1, 2}
    Orientation orientation = Orientation::cos_phi;
    double effective_radius_mm = 0.0;
    double gain_scale = 1.0;                       // amplitude normalization, > 0
};

/// Substrate/calibration parameters shared by the resonance models.
struct ResonanceModel {
    double eps_r = 2.72;        // PDMS-class default; not a measured value
    double loss_tangent = 0.02;
    double slot_loading_patch = 1.0; // in (0, 1], absorbs slots/shorting vias
    double slot_loading_ring = 1.0;  // in (0, 1]
    double bend_coefficient = 0.01520; // kappa_f of the curvature frequency law
};

/// Constant back-lobe attenuation (-14 dB) below the ground plane, made
/// continuous at theta = pi/2 by a linear taper over 5 degrees.
double back_lobe_factor(double theta_rad);
inline constexpr double kBackLobeAmplitude = 0.2;

/// Closed-form modal far field at (theta, phi).
Complex2 eval_mode_farfield(const ModeSpec& mode, double f_ghz,
                            double theta_rad, double phi_rad);

/// Unwrapped phase (rad) of the dominant polarization versus the given
/// azimuth samples at fixed theta. `e_theta`/`e_phi` are the field samples;
/// the overload evaluates a single closed-form mode.
std::vector<double> unwrapped_phase_profile(const std::vector<Complex2>& samples);
std::vector<double> mode_phase_profile(const ModeSpec& mode, double f_ghz,
                                       double theta_rad,
                                       const std::vector<double>& phi_samples);

// Cavity eigenvalues used by the resonance estimates.
inline constexpr double kTm11Eigenvalue = 1.8411837813; // first zero of J1'
inline constexpr double kTm01Eigenvalue = 3.8317059702; // first zero of J1 (= J0' zero)

/// Magnetic-wall characteristic function of the annular ring,
/// J_n'(ka) Y_n'(kb) - J_n'(kb) Y_n'(ka); roots give the ring resonances.
double ring_characteristic(double k_per_mm, double inner_radius_mm,
                           double outer_radius_mm, int order = 2);

// Bracket in which the ring resonance is solved (rad/mm).
inline constexpr double kRingRootBracketLo = 0.1;
inline constexpr double kRingRootBracketHi = 1.0;

/// Flat resonant frequency (GHz) of one mode on a layout.
double resonant_frequency(const AntennaLayout& layout, const ModeSpec& mode,
                          const ResonanceModel& model);

/// Per-radiator slot loading chosen so flat resonances match the layout's
/// design frequency; returns a copy of `model` with the loadings replaced.
ResonanceModel calibrate_slot_loading(const AntennaLayout& layout,
                                      const ResonanceModel& model);

/// Curvature frequency law: f_bent = f_flat * (1 - kappa * (L / 2R)^2),
/// L = board side. Flat bends return f_flat unchanged.
double bent_frequency(double f_flat_ghz, const AntennaLayout& layout,
                      const BendSpec& bend, const ResonanceModel& model);

/// Inverts the curvature law on one (f_flat, f_bent) anchor.
double calibrate_bend_coefficient(double f_flat_ghz, double f_bent_ghz,
                                  double board_side_mm, double radius_mm);

} // namespace modebeam

#endif
