#include "modebeam/beamform.hpp"
#include "modebeam/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace modebeam;

namespace {
const AntennaLayout& a1() {
    static const AntennaLayout a = build_antenna1();
    return a;
}
const AntennaLayout& a2() {
    static const AntennaLayout a = build_antenna2();
    return a;
}
std::set<std::string> all_ports(const AntennaLayout& a) {
    std::set<std::string> s;
    for (const PortDef& p : a.ports) s.insert(p.id);
    return s;
}
constexpr std::complex<double> kJ{0.0, 1.0};
} // namespace

TEST_CASE("single-port synthesis equals the port's mode field") {
    ExcitationVector exc;
    exc.set("F1", {1.0, 0.0});
    const auto field = synthesize(a1(), exc, 5.7, BendSpec::none());
    const ModalField modal(find_mode(a1(), "F1"), 5.7);
    for (double t : {0.2, 0.9, 1.5}) {
        const Complex2 ea = field->eval(t, 0.7);
        const Complex2 eb = modal.eval(t, 0.7);
        CHECK(std::abs(ea.e_theta - eb.e_theta) < 1e-15);
        CHECK(std::abs(ea.e_phi - eb.e_phi) < 1e-15);
    }
}

TEST_CASE("global phase leaves the power pattern unchanged") {
    ExcitationVector exc, exc_rot;
    exc.set("F1", {1.0, 0.0});
    exc.set("F3", kJ);
    const std::complex<double> chi = std::polar(1.0, 1.1);
    exc_rot.set("F1", chi);
    exc_rot.set("F3", chi * kJ);
    const auto fa = synthesize(a1(), exc, 5.7, BendSpec::none());
    const auto fb = synthesize(a1(), exc_rot, 5.7, BendSpec::none());
    for (double t = 0.1; t < kPi; t += 0.37) {
        for (double p = 0.0; p < kTwoPi; p += 0.71) {
            CHECK(power_density(fa->eval(t, p)) ==
                  doctest::Approx(power_density(fb->eval(t, p))).epsilon(1e-12));
        }
    }
}

TEST_CASE("scaling the excitation scales the power pattern by |alpha|^2") {
    ExcitationVector exc, exc2;
    exc.set("F1", {1.0, 0.0});
    exc.set("F4", {0.0, -1.0});
    const std::complex<double> alpha{1.7, -0.4};
    exc2.set("F1", alpha);
    exc2.set("F4", alpha * std::complex<double>{0.0, -1.0});
    const auto fa = synthesize(a1(), exc, 5.7, BendSpec::none());
    const auto fb = synthesize(a1(), exc2, 5.7, BendSpec::none());
    const double a2n = std::norm(alpha);
    for (double t = 0.1; t < kPi; t += 0.53) {
        const double pa = power_density(fa->eval(t, 0.4));
        const double pb = power_density(fb->eval(t, 0.4));
        CHECK(pb == doctest::Approx(a2n * pa).epsilon(1e-12));
    }
}

TEST_CASE("synthesize rejects unknown ports and all-zero excitations") {
    ExcitationVector bad;
    bad.set("F9", {1.0, 0.0});
    CHECK_THROWS_AS(synthesize(a1(), bad, 5.7, BendSpec::none()), ConfigError);
    ExcitationVector zero;
    zero.set("F1", {0.0, 0.0});
    CHECK_THROWS_AS(synthesize(a1(), zero, 5.7, BendSpec::none()), ConfigError);
}

TEST_CASE("antenna2 quadrature ring pair produces the e^{j2phi} slope") {
    ExcitationVector exc;
    exc.set("F2", {1.0, 0.0});
    exc.set("F3", kJ);
    const auto field = synthesize(a2(), exc, 5.76, BendSpec::none());
    std::vector<Complex2> samples;
    std::vector<double> phis;
    for (int i = 0; i < 96; ++i) {
        phis.push_back(kTwoPi * i / 96);
        samples.push_back(field->eval(deg2rad(60.0), phis.back()));
    }
    const std::vector<double> ph = unwrapped_phase_profile(samples);
    const double slope = (ph.back() - ph.front()) / (phis.back() - phis.front());
    CHECK(slope == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("azimuth steering: closed-form ring weights") {
    const SteeringSolution s0 = steer_azimuth(a2(), 0.0, 5.76, BendSpec::none());
    CHECK(std::abs(s0.excitation.get("F2") - std::complex<double>{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(s0.excitation.get("F3")) < 1e-12);
    const SteeringSolution s45 = steer_azimuth(a2(), 45.0, 5.76, BendSpec::none());
    CHECK(std::abs(s45.excitation.get("F2")) < 1e-12);
    CHECK(std::abs(s45.excitation.get("F3") - std::complex<double>{1.0, 0.0}) < 1e-12);
}

TEST_CASE("azimuth steering is bi-directional and on target when flat") {
    for (double phi0 : {0.0, 30.0, 45.0, 90.0, 137.0}) {
        const SteeringSolution s = steer_azimuth(a2(), phi0, 5.76, BendSpec::none());
        const double err = std::fabs(
            std::remainder(s.achieved_peak_deg - phi0, 180.0));
        CHECK(err < 1.0);
        // power at phi0 equals power at phi0 + 180
        const double p1 = power_density(s.field->eval(deg2rad(60.0), deg2rad(phi0)));
        const double p2 =
            power_density(s.field->eval(deg2rad(60.0), deg2rad(phi0 + 180.0)));
        CHECK(p1 == doctest::Approx(p2).epsilon(1e-9));
        // the same ambiguity at the metric level
        CHECK(std::fabs(front_to_back_db(s.cut)) < 0.1);
    }
}

TEST_CASE("azimuth rotation equivariance of the ring pair") {
    // ring weights only (n = 0 port off): pattern rotates with phi0
    const ModeSpec& mc = find_mode(a2(), "F2");
    const ModeSpec& ms = find_mode(a2(), "F3");
    for (double phi0_deg : {10.0, 25.0, 70.0}) {
        const double phi0 = deg2rad(phi0_deg);
        for (double p = 0.0; p < kTwoPi; p += 0.41) {
            Complex2 steered;
            const Complex2 ec = eval_mode_farfield(mc, 5.76, deg2rad(60.0), p);
            const Complex2 es = eval_mode_farfield(ms, 5.76, deg2rad(60.0), p);
            steered.e_theta = std::cos(2 * phi0) * ec.e_theta + std::sin(2 * phi0) * es.e_theta;
            steered.e_phi = std::cos(2 * phi0) * ec.e_phi + std::sin(2 * phi0) * es.e_phi;
            const Complex2 base = eval_mode_farfield(mc, 5.76, deg2rad(60.0), p - phi0);
            CHECK(power_density(steered) ==
                  doctest::Approx(power_density(base)).epsilon(1e-9));
        }
    }
}

TEST_CASE("elevation steering reaches +-20 deg in both planes") {
    for (const CutPlane& plane : {CutPlane::xz(), CutPlane::yz()}) {
        for (double target : {20.0, -20.0}) {
            const SteeringSolution s = steer_elevation(a1(), plane, target, 5.7,
                                                       BendSpec::none(), all_ports(a1()));
            CHECK(std::fabs(s.achieved_peak_deg - target) < 3.0);
        }
    }
}

TEST_CASE("steering the flat anchor lands at the calibration target") {
    const SteeringSolution s = steer_elevation(a1(), CutPlane::xz(), 20.0, 5.7,
                                               BendSpec::none(), all_ports(a1()));
    CHECK(s.achieved_peak_deg == doctest::Approx(20.0).epsilon(0.03));
    CHECK(s.trace.port_pair == "F1+F3");
}

TEST_CASE("broadside target keeps the peak near zenith") {
    const SteeringSolution s = steer_elevation(a1(), CutPlane::xz(), 0.0, 5.7,
                                               BendSpec::none(), all_ports(a1()));
    CHECK(std::fabs(s.achieved_peak_deg) <= s.trace.grid_step_deg);
}

TEST_CASE("adding 180 deg to the TM21 port mirrors the cut exactly") {
    const SteeringSolution s = steer_elevation(a1(), CutPlane::xz(), 20.0, 5.7,
                                               BendSpec::none(), all_ports(a1()));
    ExcitationVector mirrored = s.excitation;
    mirrored.set("F3", -mirrored.get("F3"));
    const auto fm = synthesize(a1(), mirrored, 5.7, BendSpec::none());
    for (double t = 0.0; t <= 90.0; t += 2.5) {
        const double p_pos = power_density(s.field->eval(deg2rad(t), 0.0));
        const double p_neg = power_density(fm->eval(deg2rad(t), kPi));
        CHECK(p_pos == doctest::Approx(p_neg).epsilon(1e-10));
    }
    const PatternCut mc = make_cut(*fm, CutPlane::xz());
    CHECK(peak_direction(mc) == doctest::Approx(-s.achieved_peak_deg).epsilon(0.01));
}

TEST_CASE("elevation steering requires both mode families") {
    CHECK_THROWS_AS(steer_elevation(a1(), CutPlane::xz(), 20.0, 5.7, BendSpec::none(),
                                    {"F1", "F2"}),
                    InfeasibleError);
    CHECK_THROWS_AS(steer_elevation(a1(), CutPlane::xz(), 20.0, 5.7, BendSpec::none(),
                                    {"F3", "F4"}),
                    InfeasibleError);
    CHECK_THROWS_AS(steer_elevation(a1(), CutPlane::xz(), 75.0, 5.7, BendSpec::none(),
                                    all_ports(a1())),
                    ConfigError);
}

TEST_CASE("azimuth steering needs the n=0/n=2 mode set") {
    CHECK_THROWS_AS(steer_azimuth(a1(), 0.0, 5.7, BendSpec::none()), ConfigError);
}

TEST_CASE("phase sweep behaviors") {
    ExcitationVector base;
    base.set("F1", kJ); // near the broadside setting
    base.set("F3", {1.0, 0.0});
    const auto entries = phase_sweep(a1(), base, "F3", 5.7, BendSpec::none(), 24);
    CHECK(entries.size() == 24);
    // peak moves through broadside as the TM21 phase rotates
    double lo = 1e9, hi = -1e9;
    for (const PhaseSweepEntry& e : entries) {
        lo = std::min(lo, e.peak_direction_deg);
        hi = std::max(hi, e.peak_direction_deg);
    }
    CHECK(lo < 0.0);
    CHECK(hi > 0.0);

    const auto single = phase_sweep(a1(), base, "F3", 5.7, BendSpec::none(), 1);
    CHECK(single.size() == 1);
    CHECK(single[0].phase_rad == 0.0);

    // sweeping a zero-amplitude port leaves the peak fixed
    ExcitationVector with_zero = base;
    with_zero.set("F4", {0.0, 0.0});
    const auto fixed = phase_sweep(a1(), with_zero, "F4", 5.7, BendSpec::none(), 8);
    for (const PhaseSweepEntry& e : fixed)
        CHECK(e.peak_direction_deg == fixed.front().peak_direction_deg);

    CHECK_THROWS_AS(phase_sweep(a1(), base, "F2", 5.7, BendSpec::none(), 4),
                    ConfigError);
}
