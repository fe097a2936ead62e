#include "modebeam/beamform.hpp"
#include "modebeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace modebeam {

namespace {

std::complex<double> polar1(double phase_rad) {
    return {std::cos(phase_rad), std::sin(phase_rad)};
}

// Parabolic refinement of a periodic 1-D grid maximum.
double refine_phase(double best_deg, double step_deg, double p_prev, double p_best,
                    double p_next) {
    const double denom = p_prev - 2.0 * p_best + p_next;
    if (denom == 0.0) return best_deg;
    const double delta = 0.5 * (p_prev - p_next) / denom;
    return best_deg + std::clamp(delta, -1.0, 1.0) * step_deg;
}

} // namespace

std::shared_ptr<const FarField> synthesize(const AntennaLayout& layout,
                                           const ExcitationVector& exc, double f_ghz,
                                           const BendSpec& bend) {
    bool any_nonzero = false;
    auto field = std::make_shared<SuperposedField>();
    for (const auto& [port, w] : exc.weights) {
        (void)find_port(layout, port); // throws ConfigError on unknown ports
        if (w == std::complex<double>{0.0, 0.0}) continue;
        any_nonzero = true;
        field->add(w, make_port_field(layout, port, f_ghz, bend));
    }
    if (!any_nonzero) throw ConfigError("synthesize: all excitation weights are zero");
    return field;
}

SteeringSolution steer_azimuth(const AntennaLayout& layout, double phi0_deg,
                               double f_ghz, const BendSpec& bend,
                               double theta_eval_deg) {
    const ModeSpec* omni = nullptr;
    const ModeSpec* ring_cos = nullptr;
    const ModeSpec* ring_sin = nullptr;
    for (const ModeSpec& m : layout.modes) {
        if (m.azimuthal_order == 0) omni = &m;
        if (m.azimuthal_order == 2 && m.orientation == Orientation::cos_phi) ring_cos = &m;
        if (m.azimuthal_order == 2 && m.orientation == Orientation::sin_phi) ring_sin = &m;
    }
    if (!omni || !ring_cos || !ring_sin)
        throw ConfigError("steer_azimuth: layout lacks the n=0 / n=2 mode set");

    const double phi0 = deg2rad(phi0_deg);
    const double w_cos = std::cos(2.0 * phi0);
    const double w_sin = std::sin(2.0 * phi0);
    const auto f_omni = make_port_field(layout, omni->port, f_ghz, bend);
    const auto f_cos = make_port_field(layout, ring_cos->port, f_ghz, bend);
    const auto f_sin = make_port_field(layout, ring_sin->port, f_ghz, bend);

    const double theta_eval = deg2rad(theta_eval_deg);
    const Complex2 e_omni = f_omni->eval(theta_eval, phi0);
    Complex2 e_ring = f_cos->eval(theta_eval, phi0);
    {
        const Complex2 es = f_sin->eval(theta_eval, phi0);
        e_ring.e_theta = w_cos * e_ring.e_theta + w_sin * es.e_theta;
        e_ring.e_phi = w_cos * e_ring.e_phi + w_sin * es.e_phi;
    }

    // 1-deg scan of the n=0 relative phase, then parabolic refinement.
    const auto power_for = [&](double chi_rad) {
        const std::complex<double> wc = polar1(chi_rad);
        Complex2 e;
        e.e_theta = wc * e_omni.e_theta + e_ring.e_theta;
        e.e_phi = wc * e_omni.e_phi + e_ring.e_phi;
        return power_density(e);
    };
    int best = 0;
    std::vector<double> p(360);
    for (int i = 0; i < 360; ++i) {
        p[static_cast<std::size_t>(i)] = power_for(deg2rad(static_cast<double>(i)));
        if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(best)]) best = i;
    }
    const double chi_deg = refine_phase(static_cast<double>(best), 1.0,
                                        p[static_cast<std::size_t>((best + 359) % 360)],
                                        p[static_cast<std::size_t>(best)],
                                        p[static_cast<std::size_t>((best + 1) % 360)]);

    SteeringSolution sol;
    sol.target_deg = phi0_deg;
    sol.excitation.set(omni->port, polar1(deg2rad(chi_deg)));
    sol.excitation.set(ring_cos->port, {w_cos, 0.0});
    sol.excitation.set(ring_sin->port, {w_sin, 0.0});
    sol.trace.grid_step_deg = 1.0;
    sol.trace.candidates_searched = 360;
    sol.trace.relative_phase_deg = chi_deg;

    auto field = std::make_shared<SuperposedField>();
    field->add(sol.excitation.get(omni->port), f_omni);
    if (w_cos != 0.0) field->add({w_cos, 0.0}, f_cos);
    if (w_sin != 0.0) field->add({w_sin, 0.0}, f_sin);
    sol.field = field;
    sol.cut = make_cut(*field, CutPlane::horizontal(theta_eval_deg));
    sol.achieved_peak_deg = peak_direction(sol.cut);

    // Gain relative to the best single ring port on the same cut.
    double p_ref = 0.0;
    for (const auto& f : {f_cos, f_sin}) {
        const PatternCut c = make_cut(*f, CutPlane::horizontal(theta_eval_deg));
        double pk = 0.0;
        for (const Complex2& e : c.fields) pk = std::max(pk, power_density(e));
        p_ref = std::max(p_ref, pk);
    }
    double pk = 0.0;
    for (const Complex2& e : sol.cut.fields) pk = std::max(pk, power_density(e));
    sol.peak_gain_rel_db = 10.0 * std::log10(pk / p_ref);
    return sol;
}

SteeringSolution steer_elevation(const AntennaLayout& layout, const CutPlane& plane,
                                 double theta0_deg, double f_ghz, const BendSpec& bend,
                                 const std::set<std::string>& allowed_ports) {
    if (plane.kind == CutPlane::Kind::horizontal)
        throw ConfigError("steer_elevation: need an xz or yz plane");
    if (!(std::fabs(theta0_deg) <= 60.0))
        throw ConfigError("steer_elevation: |theta0| must be <= 60 deg");

    std::vector<const ModeSpec*> broadside, varying;
    for (const ModeSpec& m : layout.modes) {
        if (!allowed_ports.count(m.port)) continue;
        if (m.azimuthal_order == 1) broadside.push_back(&m);
        if (m.azimuthal_order == 2) varying.push_back(&m);
    }
    if (broadside.empty() || varying.empty())
        throw InfeasibleError("steer_elevation: allowed ports lack a broadside/TM21 pair");

    double theta_t, phi_t;
    cut_direction(plane, theta0_deg, theta_t, phi_t);

    struct Candidate {
        const ModeSpec* b = nullptr;
        const ModeSpec* v = nullptr; // null: broadside port alone
        double psi_deg = 0.0;
        double power = -1.0;
        double p_prev = 0.0, p_next = 0.0; // grid neighbors, for refinement
        std::shared_ptr<const FarField> fb, fv;
    } best;
    int searched = 0;

    // Single broadside ports go first so they win exact ties (a TM21 port
    // contributes nothing toward a zenith target, and the pair would only
    // add off-axis humps).
    for (const ModeSpec* b : broadside) {
        const auto fb = make_port_field(layout, b->port, f_ghz, bend);
        const double p = power_density(fb->eval(theta_t, phi_t));
        ++searched;
        if (p > best.power * (1.0 + 1e-12))
            best = {b, nullptr, 0.0, p, p, p, fb, nullptr};
    }

    constexpr double kStepDeg = 2.0;
    constexpr int kSteps = 180;
    for (const ModeSpec* b : broadside) {
        const auto fb = make_port_field(layout, b->port, f_ghz, bend);
        for (const ModeSpec* v : varying) {
            const auto fv = make_port_field(layout, v->port, f_ghz, bend);
            const Complex2 eb = fb->eval(theta_t, phi_t);
            const Complex2 ev = fv->eval(theta_t, phi_t);
            std::vector<double> p(kSteps);
            int ibest = 0;
            for (int i = 0; i < kSteps; ++i) {
                const std::complex<double> w = polar1(deg2rad(i * kStepDeg));
                Complex2 e;
                e.e_theta = w * eb.e_theta + ev.e_theta;
                e.e_phi = w * eb.e_phi + ev.e_phi;
                p[static_cast<std::size_t>(i)] = power_density(e);
                if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(ibest)])
                    ibest = i;
            }
            searched += kSteps;
            // Strictly-greater comparisons keep the first candidate on ties:
            // singles first, then lower port index, then smaller psi.
            if (p[static_cast<std::size_t>(ibest)] > best.power * (1.0 + 1e-12)) {
                best.b = b;
                best.v = v;
                best.psi_deg = ibest * kStepDeg;
                best.power = p[static_cast<std::size_t>(ibest)];
                best.p_prev = p[static_cast<std::size_t>((ibest + kSteps - 1) % kSteps)];
                best.p_next = p[static_cast<std::size_t>((ibest + 1) % kSteps)];
                best.fb = fb;
                best.fv = fv;
            }
        }
    }
    if (best.v)
        best.psi_deg =
            refine_phase(best.psi_deg, kStepDeg, best.p_prev, best.power, best.p_next);

    SteeringSolution sol;
    sol.target_deg = theta0_deg;
    sol.excitation.set(best.b->port, polar1(deg2rad(best.psi_deg)));
    if (best.v) sol.excitation.set(best.v->port, {1.0, 0.0});
    sol.trace.grid_step_deg = kStepDeg;
    sol.trace.candidates_searched = searched;
    sol.trace.relative_phase_deg = best.psi_deg;
    sol.trace.port_pair = best.v ? best.b->port + "+" + best.v->port : best.b->port;

    auto field = std::make_shared<SuperposedField>();
    field->add(sol.excitation.get(best.b->port), best.fb);
    if (best.v) field->add({1.0, 0.0}, best.fv);
    sol.field = field;
    sol.cut = make_cut(*field, plane);
    sol.achieved_peak_deg = peak_direction(sol.cut);

    // Reference: best single broadside port over the same cut.
    double p_ref = 0.0;
    for (const ModeSpec* b : broadside) {
        const auto fb = make_port_field(layout, b->port, f_ghz, bend);
        const PatternCut c = make_cut(*fb, plane);
        for (const Complex2& e : c.fields) p_ref = std::max(p_ref, power_density(e));
    }
    double pk = 0.0;
    for (const Complex2& e : sol.cut.fields) pk = std::max(pk, power_density(e));
    sol.peak_gain_rel_db = 10.0 * std::log10(pk / p_ref);
    return sol;
}

std::vector<PhaseSweepEntry> phase_sweep(const AntennaLayout& layout,
                                         const ExcitationVector& base_exc,
                                         const std::string& port, double f_ghz,
                                         const BendSpec& bend, int n_steps,
                                         const CutPlane& plane) {
    if (n_steps < 1) throw ConfigError("phase_sweep: need at least one step");
    if (!base_exc.weights.count(port))
        throw ConfigError("phase_sweep: port " + port + " absent from the base excitation");
    // A zero-amplitude port sweeps to a constant peak direction; allowed.
    const std::complex<double> w0 = base_exc.get(port);
    std::vector<PhaseSweepEntry> out;
    out.reserve(static_cast<std::size_t>(n_steps));
    for (int i = 0; i < n_steps; ++i) {
        const double phase = kTwoPi * i / n_steps;
        ExcitationVector exc = base_exc;
        exc.set(port, w0 * polar1(phase));
        const auto field = synthesize(layout, exc, f_ghz, bend);
        const PatternCut cut = make_cut(*field, plane);
        out.push_back({phase, peak_direction(cut)});
    }
    return out;
}

} // namespace modebeam
