#include "modebeam/metrics.hpp"
#include "modebeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace modebeam {

void cut_direction(const CutPlane& plane, double angle_deg,
                   double& theta_rad, double& phi_rad) {
    switch (plane.kind) {
        case CutPlane::Kind::xz:
            theta_rad = deg2rad(std::fabs(angle_deg));
            phi_rad = angle_deg >= 0.0 ? 0.0 : kPi;
            return;
        case CutPlane::Kind::yz:
            theta_rad = deg2rad(std::fabs(angle_deg));
            phi_rad = angle_deg >= 0.0 ? 0.5 * kPi : 1.5 * kPi;
            return;
        case CutPlane::Kind::horizontal:
            theta_rad = deg2rad(plane.theta_deg);
            phi_rad = deg2rad(angle_deg);
            return;
    }
}

PatternCut make_cut(const FarField& field, const CutPlane& plane,
                    double step_deg, Exec exec) {
    if (!(step_deg > 0.0 && step_deg <= 1.0))
        throw ConfigError("make_cut: step must be in (0, 1] deg");
    const bool horizontal = plane.kind == CutPlane::Kind::horizontal;
    const double start = horizontal ? 0.0 : -180.0;
    const int count = static_cast<int>(std::lround(360.0 / step_deg));
    PatternCut cut;
    cut.plane = plane;
    cut.angles_deg.resize(static_cast<std::size_t>(count));
    std::vector<double> thetas(cut.angles_deg.size()), phis(cut.angles_deg.size());
    for (int i = 0; i < count; ++i) {
        const double a = start + i * step_deg;
        cut.angles_deg[static_cast<std::size_t>(i)] = a;
        cut_direction(plane, a, thetas[static_cast<std::size_t>(i)],
                      phis[static_cast<std::size_t>(i)]);
    }
    cut.fields = eval_directions(field, thetas, phis, exec);
    cut.power_db.resize(cut.fields.size());
    double pmax = 0.0;
    for (const Complex2& e : cut.fields) pmax = std::max(pmax, power_density(e));
    if (!(pmax > 0.0)) throw DegenerateError("make_cut: zero field on the cut");
    const double floor_lin = std::pow(10.0, kPowerFloorDb / 10.0);
    for (std::size_t i = 0; i < cut.fields.size(); ++i) {
        const double rel = power_density(cut.fields[i]) / pmax;
        cut.power_db[i] = 10.0 * std::log10(std::max(rel, floor_lin));
    }
    return cut;
}

namespace {

std::size_t peak_index(const PatternCut& cut) {
    if (cut.power_db.empty()) throw DegenerateError("empty cut");
    std::size_t best = 0;
    bool all_equal = true;
    for (std::size_t i = 1; i < cut.power_db.size(); ++i) {
        if (cut.power_db[i] != cut.power_db[0]) all_equal = false;
        if (cut.power_db[i] > cut.power_db[best]) best = i; // ties keep smaller angle
    }
    if (all_equal) throw DegenerateError("peak_direction: cut has no distinct peak");
    return best;
}

} // namespace

double peak_direction(const PatternCut& cut) {
    const std::size_t i = peak_index(cut);
    const std::size_t n = cut.power_db.size();
    const double step = cut.angles_deg[1] - cut.angles_deg[0];
    // Parabolic refinement on linear power with periodic neighbors.
    const double y1 = std::pow(10.0, cut.power_db[(i + n - 1) % n] / 10.0);
    const double y2 = std::pow(10.0, cut.power_db[i] / 10.0);
    const double y3 = std::pow(10.0, cut.power_db[(i + 1) % n] / 10.0);
    const double denom = y1 - 2.0 * y2 + y3;
    const double delta = denom != 0.0 ? 0.5 * (y1 - y3) / denom : 0.0;
    return cut.angles_deg[i] + std::clamp(delta, -1.0, 1.0) * step;
}

double hpbw(const PatternCut& cut) {
    std::size_t ipk = 0;
    try {
        ipk = peak_index(cut);
    } catch (const DegenerateError&) {
        // flat cut: no -3 dB crossing anywhere
        throw OpenBeamError("hpbw: cut is isotropic, no -3 dB crossing");
    }
    const std::size_t n = cut.power_db.size();
    const double step = cut.angles_deg[1] - cut.angles_deg[0];
    const double half_db = 10.0 * std::log10(0.5); // -3.0103 below the peak
    const double threshold = cut.power_db[ipk] + half_db;
    const auto crossing = [&](int direction) -> double {
        for (std::size_t t = 1; t < n; ++t) {
            const std::size_t j = (ipk + n + direction * t) % n;
            const std::size_t jprev = (ipk + n + direction * (t - 1)) % n;
            if (cut.power_db[j] <= threshold) {
                const double span = cut.power_db[jprev] - cut.power_db[j];
                const double f = span > 0.0 ? (cut.power_db[jprev] - threshold) / span : 0.0;
                return (static_cast<double>(t - 1) + f) * step;
            }
        }
        return -1.0;
    };
    const double left = crossing(-1);
    const double right = crossing(+1);
    if (left < 0.0 || right < 0.0)
        throw OpenBeamError("hpbw: no -3 dB crossing within the cut span");
    return left + right;
}

double directivity_dbi(const SampledField& sampled) {
    double pmax = 0.0, ptot = 0.0;
    for (std::size_t i = 0; i < sampled.values.size(); ++i) {
        const double u = power_density(sampled.values[i]);
        pmax = std::max(pmax, u);
        ptot += u * sampled.grid->nodes[i].weight;
    }
    if (!(ptot > 0.0)) throw DegenerateError("directivity: zero total power");
    return 10.0 * std::log10(4.0 * kPi * pmax / ptot);
}

double directivity_dbi(const FarField& field, const SphereGrid& grid, Exec exec) {
    const SampledField s = sample_field(field, grid, exec);
    return directivity_dbi(s);
}

double ecc(const SampledField& a, const SampledField& b) {
    if (a.grid != b.grid || a.values.size() != b.values.size())
        throw ConfigError("ecc: fields sampled on different grids");
    std::complex<double> overlap{0.0, 0.0};
    double pa = 0.0, pb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double w = a.grid->nodes[i].weight;
        overlap += (a.values[i].e_theta * std::conj(b.values[i].e_theta) +
                    a.values[i].e_phi * std::conj(b.values[i].e_phi)) *
                   w;
        pa += power_density(a.values[i]) * w;
        pb += power_density(b.values[i]) * w;
    }
    if (!(pa > 0.0) || !(pb > 0.0)) throw DegenerateError("ecc: zero-power field");
    return std::norm(overlap) / (pa * pb);
}

double ecc(const FarField& a, const FarField& b, const SphereGrid& grid, Exec exec) {
    const SampledField sa = sample_field(a, grid, exec);
    const SampledField sb = sample_field(b, grid, exec);
    return ecc(sa, sb);
}

double front_to_back_db(const PatternCut& cut) {
    const std::size_t n = cut.power_db.size();
    const double step = cut.angles_deg[1] - cut.angles_deg[0];
    if (std::fabs(n * step - 360.0) > 1e-9)
        throw ConfigError("front_to_back: cut must span 360 deg");
    const std::size_t ipk = peak_index(cut);
    const std::size_t iback = (ipk + n / 2) % n;
    return cut.power_db[ipk] - cut.power_db[iback];
}

} // namespace modebeam
