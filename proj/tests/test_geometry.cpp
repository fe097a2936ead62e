#include "modebeam/geometry.hpp"
#include "modebeam/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace modebeam;

namespace {
double dist(Vec3 a, Vec3 b) {
    return std::sqrt(dot(a - b, a - b));
}
} // namespace

TEST_CASE("antenna1 preset matches the published dimensions") {
    const AntennaLayout a = build_antenna1();
    CHECK(a.board_side_mm == 34.0);
    CHECK(a.design_frequency_ghz == 5.7);
    CHECK(a.patch_diameter_mm == 17.0);
    CHECK(a.ring_inner_diameter_mm == 18.0);
    CHECK(a.ring_outer_diameter_mm == 34.0);
    CHECK(a.substrate_thickness_mm == 0.5);
    CHECK(a.ports.size() == 4);
    const PortDef& f4 = find_port(a, "F4");
    CHECK(f4.x_mm == -9.2);
    CHECK(f4.y_mm == 9.2);
    // electrical size: board side / wavelength = 0.64 within 0.5%
    const double lambda = kSpeedOfLightMmGhz / a.design_frequency_ghz;
    CHECK(a.board_side_mm / lambda == doctest::Approx(0.64).epsilon(0.005));
}

TEST_CASE("antenna2 preset matches the published dimensions") {
    const AntennaLayout a = build_antenna2();
    CHECK(a.board_side_mm == 37.0);
    CHECK(a.design_frequency_ghz == 5.76);
    CHECK(a.ports.size() == 3);
    const PortDef& f1 = find_port(a, "F1");
    CHECK(f1.x_mm == 0.0);
    CHECK(f1.y_mm == 0.0); // center-fed
    const double lambda = kSpeedOfLightMmGhz / a.design_frequency_ghz;
    CHECK(a.board_side_mm / lambda == doctest::Approx(0.71).epsilon(0.005));
}

TEST_CASE("preset mode assignments") {
    const AntennaLayout a1 = build_antenna1();
    CHECK(find_mode(a1, "F1").family == ModeFamily::patch_tm11);
    CHECK(find_mode(a1, "F1").orientation == Orientation::cos_phi);
    CHECK(find_mode(a1, "F2").orientation == Orientation::sin_phi);
    CHECK(find_mode(a1, "F3").family == ModeFamily::ring_tm21);
    CHECK(find_mode(a1, "F4").family == ModeFamily::ring_tm21);
    const AntennaLayout a2 = build_antenna2();
    CHECK(find_mode(a2, "F1").family == ModeFamily::patch_tm01_monopole);
    CHECK(find_mode(a2, "F2").family == ModeFamily::ring_tm21);
    CHECK(find_mode(a2, "F3").orientation == Orientation::sin_phi);
    CHECK_THROWS_AS(find_port(a2, "F9"), ConfigError);
}

TEST_CASE("bend_map fixes the center line and rotates the frame") {
    const BendSpec bend = BendSpec::about_x(10.0);
    const BentPoint id = bend_map({5.0, 0.0, 0.0}, bend);
    CHECK(id.position.x == 5.0);
    CHECK(id.position.y == 0.0);
    CHECK(id.position.z == 0.0);
    CHECK(id.frame.m[1][1] == 1.0);

    // quarter-turn point: s = pi R / 2 -> (0, R, R), frame rotated 90 deg
    const BentPoint q = bend_map({0.0, kPi * 10.0 / 2.0, 0.0}, bend);
    CHECK(q.position.x == doctest::Approx(0.0));
    CHECK(q.position.y == doctest::Approx(10.0));
    CHECK(q.position.z == doctest::Approx(10.0));
    const Vec3 bent_normal = q.frame.apply({0.0, 0.0, 1.0});
    CHECK(bent_normal.y == doctest::Approx(-1.0));
    CHECK(std::fabs(bent_normal.z) < 1e-12);
}

TEST_CASE("flat bend is the identity") {
    const BendSpec flat = BendSpec::none();
    const Vec3 p{3.0, -7.0, 0.25};
    const BentPoint b = bend_map(p, flat);
    CHECK(b.position.x == p.x);
    CHECK(b.position.y == p.y);
    CHECK(b.position.z == p.z);
}

TEST_CASE("bend_map preserves the invariant coordinate") {
    const BendSpec bx = BendSpec::about_x(12.0);
    const BendSpec by = BendSpec::about_y(12.0);
    for (double u = -15.0; u <= 15.0; u += 3.7) {
        CHECK(bend_map({u, 4.0, 0.0}, bx).position.x == u);
        CHECK(bend_map({4.0, u, 0.0}, by).position.y == u);
    }
}

TEST_CASE("bend_map preserves arc length along the curl") {
    const BendSpec bend = BendSpec::about_x(10.0);
    // geodesic length on the cylinder is R * |angle of the image|
    for (double s = -14.0; s <= 14.0; s += 0.9) {
        const Vec3 q = bend_map({0.0, s, 0.0}, bend).position;
        const double angle = std::atan2(q.y, bend.radius_mm - q.z);
        CHECK(std::fabs(bend.radius_mm * angle - s) < 1e-12);
    }
    // and the chord-sum limit agrees
    double arc = 0.0;
    Vec3 prev = bend_map({0.0, -12.0, 0.0}, bend).position;
    const int steps = 20000;
    for (int i = 1; i <= steps; ++i) {
        const double s = -12.0 + 24.0 * i / steps;
        const Vec3 cur = bend_map({0.0, s, 0.0}, bend).position;
        arc += dist(prev, cur);
        prev = cur;
    }
    CHECK(arc == doctest::Approx(24.0).epsilon(1e-7));
}

TEST_CASE("bend_unmap inverts bend_map") {
    for (const BendSpec bend : {BendSpec::about_x(10.0), BendSpec::about_y(8.0)}) {
        for (double s = -14.0; s <= 14.0; s += 2.3) {
            for (double z : {0.0, 0.25, -0.1}) {
                const Vec3 p{s * 0.7, s, z};
                const Vec3 back = bend_unmap(bend_map(p, bend).position, bend);
                CHECK(dist(back, p) < 1e-10);
            }
        }
    }
}

TEST_CASE("bend validation") {
    CHECK_THROWS_AS(validate_bend(BendSpec::about_x(4.0)), GeometryError);
    CHECK_THROWS_AS(bend_map({0.0, 40.0, 0.0}, BendSpec::about_x(10.0)), GeometryError);
}

TEST_CASE("chord factor closed form") {
    const AntennaLayout a1 = build_antenna1();
    const AntennaLayout a2 = build_antenna2();
    CHECK(chord_factor(a1, BendSpec::none()) == 1.0);
    CHECK(chord_factor(a1, BendSpec::about_x(10.0)) ==
          doctest::Approx(oracle::chord_ratio(34.0, 10.0)).epsilon(1e-12));
    CHECK(chord_factor(a2, BendSpec::about_y(10.0)) ==
          doctest::Approx(oracle::chord_ratio(37.0, 10.0)).epsilon(1e-12));
    // frozen oracle evaluations
    CHECK(oracle::chord_ratio(34.0, 10.0) == doctest::Approx(0.58333).epsilon(1e-4));
    CHECK(oracle::chord_ratio(37.0, 10.0) == doctest::Approx(0.51960).epsilon(1e-4));
}

TEST_CASE("layout invariants hold for both presets") {
    for (const AntennaLayout& a : {build_antenna1(), build_antenna2()}) {
        CHECK_NOTHROW(validate_layout(a));
        CHECK(a.ring_inner_diameter_mm > a.patch_diameter_mm);
        CHECK(a.ring_outer_diameter_mm <= a.board_side_mm);
        for (const ModeSpec& m : a.modes) CHECK(m.gain_scale > 0.0);
    }
}
