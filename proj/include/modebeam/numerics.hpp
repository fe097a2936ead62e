#ifndef MODEBEAM_NUMERICS_HPP
#define MODEBEAM_NUMERICS_HPP

#include <complex>
#include <functional>
#include <vector>

namespace modebeam {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
// Speed of light in mm*GHz, so wavelength_mm = kSpeedOfLightMmGhz / f_ghz.
inline constexpr double kSpeedOfLightMmGhz = 299.792458;

inline double deg2rad(double d) { return d * (kPi / 180.0); }
inline double rad2deg(double r) { return r * (180.0 / kPi); }

/// Complex transverse far-field pair (E_theta, E_phi), unnormalized V/m.
struct Complex2 {
    std::complex<double> e_theta{0.0, 0.0};
    std::complex<double> e_phi{0.0, 0.0};
};

inline double power_density(const Complex2& e) {
    return std::norm(e.e_theta) + std::norm(e.e_phi);
}

/// First-kind Bessel J_n. Valid for 0 <= n <= 12, 0 <= x <= 200
/// (the ranges this project uses); relative error <= 1e-10.
double bessel_j(int n, double x);

/// Second-kind Bessel Y_n, same order range, x > 0.
double bessel_y(int n, double x);

enum class BesselKind { J, Y };

/// Derivative C_n'(x) = (C_{n-1}(x) - C_{n+1}(x)) / 2 with C_{-1} = -C_1.
double bessel_deriv(BesselKind kind, int n, double x);

struct SphereNode {
    double theta;  // colatitude, rad, strictly inside (0, pi)
    double phi;    // azimuth, rad, in [0, 2pi)
    double weight; // solid-angle weight, sr
};

/// Gauss-Legendre x uniform-azimuth quadrature grid over the full sphere.
/// Weights sum to 4*pi exactly up to rounding.
struct SphereGrid {
    int n_theta = 0;
    int n_phi = 0;
    std::vector<SphereNode> nodes; // ordered theta-major, phi-minor
};

SphereGrid make_sphere_grid(int n_theta = 64, int n_phi = 128);

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Deterministic bracketed root finder: bisection to width <= tol, then a
/// short clamped secant polish. Requires f(lo) * f(hi) < 0.
double find_root_bracketed(const std::function<double(double)>& f,
                           double lo, double hi, double tol = 1e-12);

} // namespace modebeam

#endif
