#ifndef MODEBEAM_BEAMFORM_HPP
#define MODEBEAM_BEAMFORM_HPP

#include "modebeam/conformal.hpp"
#include "modebeam/metrics.hpp"

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace modebeam {

/// Per-port complex excitation weights, kept sorted by port id.
struct ExcitationVector {
    std::map<std::string, std::complex<double>> weights;

    void set(const std::string& port, std::complex<double> w) { weights[port] = w; }
    std::complex<double> get(const std::string& port) const {
        const auto it = weights.find(port);
        return it == weights.end() ? std::complex<double>{0.0, 0.0} : it->second;
    }
};

/// Weighted port superposition. Flat bends use the closed-form modal fields,
/// bent ones the conformal integral. Linear in the excitation.
std::shared_ptr<const FarField> synthesize(const AntennaLayout& layout,
                                           const ExcitationVector& exc, double f_ghz,
                                           const BendSpec& bend);

struct SolverTrace {
    double grid_step_deg = 0.0;
    int candidates_searched = 0;
    double relative_phase_deg = 0.0; // refined phase actually applied
    std::string port_pair;           // "F1+F3" style, empty for azimuth solves
};

struct SteeringSolution {
    ExcitationVector excitation;
    double target_deg = 0.0;
    double achieved_peak_deg = 0.0;
    double peak_gain_rel_db = 0.0; // peak relative to the best broadside port
    SolverTrace trace;
    std::shared_ptr<const FarField> field;
    PatternCut cut; // 1-deg cut in the steering plane
};

/// Horizontal-plane steering for a layout carrying n = 0 and n = 2 modes:
/// ring weights (cos 2 phi0, sin 2 phi0), the n = 0 port added at the
/// relative phase maximizing power toward (theta_eval, phi0). The synthesized
/// pattern peaks at phi0 or phi0 + 180 (bi-directional ambiguity).
SteeringSolution steer_azimuth(const AntennaLayout& layout, double phi0_deg,
                               double f_ghz, const BendSpec& bend,
                               double theta_eval_deg = 60.0);

/// Elevation steering for a layout with broadside (n = 1) and phase-varying
/// (n = 2) modes: deterministic search over port pairs and a relative phase
/// grid (2 deg, parabolic refinement), maximizing power toward the target
/// direction in the given plane. |theta0| <= 60 deg.
SteeringSolution steer_elevation(const AntennaLayout& layout, const CutPlane& plane,
                                 double theta0_deg, double f_ghz, const BendSpec& bend,
                                 const std::set<std::string>& allowed_ports);

struct PhaseSweepEntry {
    double phase_rad = 0.0;
    double peak_direction_deg = 0.0;
};

/// Sweeps an additional phase offset on one port of a base excitation and
/// records the peak direction of the resulting cut.
std::vector<PhaseSweepEntry> phase_sweep(const AntennaLayout& layout,
                                         const ExcitationVector& base_exc,
                                         const std::string& port, double f_ghz,
                                         const BendSpec& bend, int n_steps,
                                         const CutPlane& plane = CutPlane::xz());

} // namespace modebeam

#endif
