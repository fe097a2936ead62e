#ifndef MODEBEAM_GEOMETRY_HPP
#define MODEBEAM_GEOMETRY_HPP

#include "modebeam/modes.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace modebeam {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Row-major 3x3 rotation.
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    Vec3 apply(Vec3 v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
};

/// Cylinder axis of the bend. The board curls in the transverse direction:
/// axis = x curls the y coordinate, axis = y curls the x coordinate.
enum class BendAxis { x, y };

struct BendSpec {
    BendAxis axis = BendAxis::x;
    double radius_mm = 10.0;
    bool flat = true;

    static BendSpec none() { return BendSpec{}; }
    static BendSpec about_x(double radius_mm) { return {BendAxis::x, radius_mm, false}; }
    static BendSpec about_y(double radius_mm) { return {BendAxis::y, radius_mm, false}; }
};

/// Throws GeometryError for radii < 5 mm (the boards would over-wrap).
void validate_bend(const BendSpec& bend);

struct BentPoint {
    Vec3 position;
    Mat3 frame; // rotation taking the flat tangent/normal triad to the bent one
};

/// Maps a flat-board point onto the bending cylinder, which is tangent to the
/// board along its center line. Arc length along the curled direction is
/// preserved; the off-surface coordinate z rides along the local normal.
/// For axis = x and s = y, alpha = s/R:
///   (x, y, z) -> (x, (R - z) sin a, R (1 - cos a) + z cos a)
/// axis = y exchanges the roles of x and y.
BentPoint bend_map(Vec3 p, const BendSpec& bend);

/// Analytic inverse of bend_map (positions only).
Vec3 bend_unmap(Vec3 q, const BendSpec& bend);

enum class Radiator { patch, ring };

struct PortDef {
    std::string id; // one of F1..F4
    double x_mm = 0.0;
    double y_mm = 0.0;
    Radiator radiator = Radiator::patch;
};

/// Sub-wavelength tuning details carried as descriptive metadata only; their
/// electrical effect enters through the ResonanceModel calibration factors.
struct RadiatorDetail {
    int via_count = 0;
    double via_radius_mm = 0.0;
    int slot_count = 0;
    double slot_length_mm = 0.0;
    double slot_width_mm = 0.0;
};

struct AntennaLayout {
    std::string name; // "antenna1" or "antenna2"
    double board_side_mm = 0.0;
    double substrate_thickness_mm = 0.0;
    double metal_thickness_mm = 0.0; // metadata; ignored by field models
    double patch_diameter_mm = 0.0;
    double ring_inner_diameter_mm = 0.0;
    double ring_outer_diameter_mm = 0.0;
    double design_frequency_ghz = 0.0;
    std::vector<PortDef> ports;
    std::vector<ModeSpec> modes; // one per port, same order
    RadiatorDetail patch_detail;
    RadiatorDetail ring_detail;
};

/// Amplitude factor applied to the ring (n = 2) modes on top of the
/// equal-radiated-power normalization. Calibrated once against the flat
/// elevation-steering anchor (composite patch+ring beam peaking at 20 deg).
inline constexpr double kRingBeamBalance = 0.194129;

/// Four-port elevation-beamforming preset (square 34 mm board, 5.7 GHz).
AntennaLayout build_antenna1();

/// Three-port horizontal-beamforming preset (square 37 mm board, 5.76 GHz).
AntennaLayout build_antenna2();

/// Checks the AntennaLayout invariants; throws ConfigError on violation.
void validate_layout(const AntennaLayout& layout);

const PortDef& find_port(const AntennaLayout& layout, std::string_view id);
const ModeSpec& find_mode(const AntennaLayout& layout, std::string_view port_id);

/// Ratio of the chord subtended by the bent board to its flat length,
/// 2R sin(L / 2R) / L with L = board side; 1 when flat.
double chord_factor(const AntennaLayout& layout, const BendSpec& bend);

} // namespace modebeam

#endif
