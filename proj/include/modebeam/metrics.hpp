#ifndef MODEBEAM_METRICS_HPP
#define MODEBEAM_METRICS_HPP

#include "modebeam/farfield.hpp"

#include <map>
#include <string>
#include <vector>

namespace modebeam {

/// Great-circle (xz / yz) or constant-elevation cut plane.
struct CutPlane {
    enum class Kind { xz, yz, horizontal };
    Kind kind = Kind::xz;
    double theta_deg = 60.0; // elevation of the horizontal cut

    static CutPlane xz() { return {Kind::xz, 0.0}; }
    static CutPlane yz() { return {Kind::yz, 0.0}; }
    static CutPlane horizontal(double theta_deg) { return {Kind::horizontal, theta_deg}; }
};

/// Direction of a cut sample. Elevation cuts use a signed angle in
/// [-180, 180): positive angles lie at the plane's reference azimuth
/// (xz: phi = 0, yz: phi = 90 deg), negative ones at the opposite azimuth.
/// Horizontal cuts use phi in [0, 360).
void cut_direction(const CutPlane& plane, double angle_deg,
                   double& theta_rad, double& phi_rad);

/// Peak-normalized pattern cut. Power is clamped at -60 dB before
/// conversion so analytic nulls stay finite.
struct PatternCut {
    CutPlane plane;
    std::vector<double> angles_deg;  // strictly increasing, uniform step
    std::vector<double> power_db;    // max is exactly 0
    std::vector<Complex2> fields;    // raw complex samples
};

inline constexpr double kPowerFloorDb = -60.0;

PatternCut make_cut(const FarField& field, const CutPlane& plane,
                    double step_deg = 1.0, Exec exec = Exec::parallel);

/// Angle of maximum power with parabolic refinement between samples;
/// exact ties resolve toward the smaller angle.
double peak_direction(const PatternCut& cut);

/// Half-power beamwidth: angular distance between the linearly interpolated
/// -3 dB crossings bracketing the main peak (cuts are treated as periodic).
double hpbw(const PatternCut& cut);

double directivity_dbi(const FarField& field, const SphereGrid& grid,
                       Exec exec = Exec::parallel);
double directivity_dbi(const SampledField& sampled);

/// Envelope correlation coefficient,
/// |sum (E1 . conj(E2)) dOmega|^2 / (P1 * P2), in [0, 1].
double ecc(const FarField& a, const FarField& b, const SphereGrid& grid,
           Exec exec = Exec::parallel);
double ecc(const SampledField& a, const SampledField& b);

/// Peak power minus power opposite the peak, dB; the cut must span 360 deg.
double front_to_back_db(const PatternCut& cut);

struct MetricsReport {
    double peak_direction_deg = 0.0;
    double hpbw_deg = 0.0;
    bool hpbw_defined = true;
    double front_to_back_db = 0.0;
    double directivity_dbi = 0.0;
    std::map<std::string, double> ecc_matrix; // "F1-F2" -> value
};

} // namespace modebeam

#endif
