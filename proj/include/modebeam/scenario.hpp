#ifndef MODEBEAM_SCENARIO_HPP
#define MODEBEAM_SCENARIO_HPP

#include "modebeam/beamform.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace modebeam {

inline constexpr const char* kVersion = "0.1.0";

/// One steering request: an elevation target in a great-circle plane, or an
/// azimuth target in the horizontal plane.
struct SteeringTarget {
    enum class Kind { elevation, azimuth };
    Kind kind = Kind::elevation;
    CutPlane::Kind plane = CutPlane::Kind::xz; // elevation targets only
    double angle_deg = 0.0;
};

/// Bend configurations as used throughout: A is flat; B bends the board
/// along its x direction (cylinder axis along y); C bends along y.
enum class Configuration { A, B, C };

struct Scenario {
    std::string antenna = "antenna1";             // antenna1 | antenna2
    Configuration configuration = Configuration::A;
    double bend_radius_mm = 10.0;
    std::optional<double> frequency_ghz;          // empty = "auto"
    std::vector<SteeringTarget> steering;         // empty = per-antenna defaults
    std::set<std::string> allowed_ports;          // empty = all
    ResonanceModel resonance;                     // eps_r / kappa_f overrides
    bool calibrate_loading = true;                // "slot_loading": "calibrated"
    std::string output_dir;                       // may be overridden by CLI/env
    int grid_n_theta = 64;
    int grid_n_phi = 128;
};

/// Parses and validates a scenario file (strict: unknown keys rejected).
Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_json(const std::string& json_text, const std::string& origin);

BendSpec bend_for(const Scenario& s);
std::set<std::string> resolve_allowed_ports(const Scenario& s, const AntennaLayout& layout);
std::vector<SteeringTarget> resolve_steering(const Scenario& s);

struct RunResult {
    std::vector<std::string> files; // paths written, manifest last
    double frequency_ghz = 0.0;     // frequency the run evaluated at
};

/// Executes a scenario: emits one cut CSV per steering target, a metrics
/// report, and a run manifest. Outputs are byte-identical across runs.
RunResult run_scenario(const Scenario& s, const std::string& out_dir);

/// Layout presets serialized to JSON (same schema the CLI's `presets` dumps).
std::string layout_to_json(const AntennaLayout& layout);

} // namespace modebeam

#endif
