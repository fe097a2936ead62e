#include "modebeam/geometry.hpp"
#include "modebeam/errors.hpp"

#include <cmath>
#include <string>

namespace modebeam {

void validate_bend(const BendSpec& bend) {
    if (bend.flat) return;
    if (!(bend.radius_mm >= 5.0))
        throw GeometryError("bend radius must be >= 5 mm, got " +
                            std::to_string(bend.radius_mm));
}

BentPoint bend_map(Vec3 p, const BendSpec& bend) {
    if (bend.flat) return {p, Mat3{}};
    validate_bend(bend);
    const double r = bend.radius_mm;
    const double s = bend.axis == BendAxis::x ? p.y : p.x;
    if (std::fabs(s) > kPi * r + 1e-12)
        throw GeometryError("bend_map: point would wrap past half a turn");
    const double a = s / r;
    const double ca = std::cos(a), sa = std::sin(a);
    const double bent_t = (r - p.z) * sa;            // curled transverse coordinate
    const double bent_z = r * (1.0 - ca) + p.z * ca; // surface lift + normal ride
    BentPoint out;
    if (bend.axis == BendAxis::x) {
        out.position = {p.x, bent_t, bent_z};
        out.frame.m = {{{1, 0, 0}, {0, ca, -sa}, {0, sa, ca}}};
    } else {
        out.position = {bent_t, p.y, bent_z};
        out.frame.m = {{{ca, 0, -sa}, {0, 1, 0}, {sa, 0, ca}}};
    }
    return out;
}

Vec3 bend_unmap(Vec3 q, const BendSpec& bend) {
    if (bend.flat) return q;
    validate_bend(bend);
    const double r = bend.radius_mm;
    const double t = bend.axis == BendAxis::x ? q.y : q.x;
    const double a = std::atan2(t, r - q.z);
    const double u = std::hypot(t, r - q.z); // distance from the cylinder axis
    const double z = r - u;
    const double s = r * a;
    return bend.axis == BendAxis::x ? Vec3{q.x, s, z} : Vec3{s, q.y, z};
}

namespace {

ModeSpec make_mode(std::string port, ModeFamily family, Orientation orient,
                   double radius_mm) {
    ModeSpec m;
    m.port = std::move(port);
    m.family = family;
    m.azimuthal_order = family == ModeFamily::patch_tm11          ? 1
                        : family == ModeFamily::ring_tm21         ? 2
                                                                  : 0;
    m.orientation = orient;
    m.effective_radius_mm = radius_mm;
    m.gain_scale = 1.0;
    return m;
}

// Scales every mode to the same radiated power (average intensity 1 over the
// sphere) at the design frequency, then applies the ring beam balance.
void normalize_gain_scales(AntennaLayout& layout) {
    static const SphereGrid grid = make_sphere_grid(64, 128);
    for (ModeSpec& mode : layout.modes) {
        mode.gain_scale = 1.0;
        double power = 0.0;
        for (const SphereNode& node : grid.nodes)
            power += power_density(eval_mode_farfield(mode, layout.design_frequency_ghz,
                                                      node.theta, node.phi)) *
                     node.weight;
        mode.gain_scale = std::sqrt(4.0 * kPi / power);
        if (mode.azimuthal_order == 2) mode.gain_scale *= kRingBeamBalance;
    }
}

} // namespace

AntennaLayout build_antenna1() {
    AntennaLayout a;
    a.name = "antenna1";
    a.board_side_mm = 34.0;
    a.substrate_thickness_mm = 0.5;
    a.metal_thickness_mm = 0.06;
    a.patch_diameter_mm = 17.0;
    a.ring_inner_diameter_mm = 18.0;
    a.ring_outer_diameter_mm = 34.0;
    a.design_frequency_ghz = 5.7;
    a.ports = {{"F1", 3.5, 0.0, Radiator::patch},
               {"F2", 0.0, 3.5, Radiator::patch},
               {"F3", 13.0, 0.0, Radiator::ring},
               {"F4", -9.2, 9.2, Radiator::ring}};
    const double patch_r = 0.5 * a.patch_diameter_mm;
    const double ring_r = 0.5 * a.ring_outer_diameter_mm;
    a.modes = {make_mode("F1", ModeFamily::patch_tm11, Orientation::cos_phi, patch_r),
               make_mode("F2", ModeFamily::patch_tm11, Orientation::sin_phi, patch_r),
               make_mode("F3", ModeFamily::ring_tm21, Orientation::cos_phi, ring_r),
               make_mode("F4", ModeFamily::ring_tm21, Orientation::sin_phi, ring_r)};
    a.patch_detail = {0, 0.0, 4, 3.0, 0.6};   // four T-slots, 90 deg apart
    a.ring_detail = {8, 0.25, 8, 2.2, 0.6};   // 8 vias near inner edge, 8 tuning slots
    normalize_gain_scales(a);
    validate_layout(a);
    return a;
}

AntennaLayout build_antenna2() {
    AntennaLayout a;
    a.name = "antenna2";
    a.board_side_mm = 37.0;
    a.substrate_thickness_mm = 0.5;
    a.metal_thickness_mm = 0.06;
    a.patch_diameter_mm = 17.3;
    a.ring_inner_diameter_mm = 19.0;
    a.ring_outer_diameter_mm = 34.0;
    a.design_frequency_ghz = 5.76;
    a.ports = {{"F1", 0.0, 0.0, Radiator::patch},
               {"F2", -13.5, 0.0, Radiator::ring},
               {"F3", 9.5, -9.5, Radiator::ring}};
    const double patch_r = 0.5 * a.patch_diameter_mm;
    const double ring_r = 0.5 * a.ring_outer_diameter_mm;
    a.modes = {make_mode("F1", ModeFamily::patch_tm01_monopole, Orientation::cos_phi, patch_r),
               make_mode("F2", ModeFamily::ring_tm21, Orientation::cos_phi, ring_r),
               make_mode("F3", ModeFamily::ring_tm21, Orientation::sin_phi, ring_r)};
    a.patch_detail = {4, 0.25, 0, 0.0, 0.0};  // shorted patch, 4 vias at 5 mm
    a.ring_detail = {8, 0.25, 0, 0.0, 0.0};
    normalize_gain_scales(a);
    validate_layout(a);
    return a;
}

void validate_layout(const AntennaLayout& layout) {
    if (!(layout.ring_inner_diameter_mm > layout.patch_diameter_mm))
        throw ConfigError(layout.name + ": ring must clear the patch");
    if (!(layout.ring_outer_diameter_mm <= layout.board_side_mm))
        throw ConfigError(layout.name + ": ring exceeds the board");
    const std::size_t expected = layout.name == "antenna1" ? 4 : 3;
    if (layout.ports.size() != expected || layout.modes.size() != expected)
        throw ConfigError(layout.name + ": unexpected port/mode count");
    for (const PortDef& p : layout.ports) {
        const double rho = std::hypot(p.x_mm, p.y_mm);
        if (p.radiator == Radiator::patch) {
            if (rho > 0.5 * layout.patch_diameter_mm)
                throw ConfigError(layout.name + ": port " + p.id + " outside the patch");
        } else {
            if (rho < 0.5 * layout.ring_inner_diameter_mm - 1e-9 ||
                rho > 0.5 * layout.ring_outer_diameter_mm + 1e-9)
                throw ConfigError(layout.name + ": port " + p.id + " outside the ring");
        }
    }
    for (const ModeSpec& m : layout.modes) {
        if (!(m.gain_scale > 0.0))
            throw ConfigError(layout.name + ": nonpositive gain scale on " + m.port);
    }
}

const PortDef& find_port(const AntennaLayout& layout, std::string_view id) {
    for (const PortDef& p : layout.ports)
        if (p.id == id) return p;
    throw ConfigError(layout.name + ": unknown port " + std::string(id));
}

const ModeSpec& find_mode(const AntennaLayout& layout, std::string_view port_id) {
    for (const ModeSpec& m : layout.modes)
        if (m.port == port_id) return m;
    throw ConfigError(layout.name + ": no mode for port " + std::string(port_id));
}

double chord_factor(const AntennaLayout& layout, const BendSpec& bend) {
    if (bend.flat) return 1.0;
    validate_bend(bend);
    const double l = layout.board_side_mm;
    const double half_arc = l / (2.0 * bend.radius_mm);
    return 2.0 * bend.radius_mm * std::sin(half_arc) / l;
}

} // namespace modebeam
