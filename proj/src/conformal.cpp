#include "modebeam/conformal.hpp"
#include "modebeam/errors.hpp"

#include <cmath>
#include <string>

namespace modebeam {

ApertureSampleSet sample_aperture(const AntennaLayout& layout, const ModeSpec& mode,
                                  int n_samples) {
    const int n = mode.azimuthal_order;
    if (n_samples < 16 * (n + 1))
        throw ConfigError("sample_aperture: need at least " +
                          std::to_string(16 * (n + 1)) + " samples for order " +
                          std::to_string(n));
    (void)find_port(layout, mode.port); // the mode must belong to this layout
    ApertureSampleSet set;
    set.mode_port = mode.port;
    set.azimuthal_order = n;
    set.gain_scale = mode.gain_scale;
    set.effective_radius_mm = mode.effective_radius_mm;
    set.samples.reserve(static_cast<std::size_t>(n_samples));
    for (int m = 0; m < n_samples; ++m) {
        const double phi = kTwoPi * m / n_samples;
        const double c = std::cos(phi), s = std::sin(phi);
        ApertureSample smp;
        smp.position = {mode.effective_radius_mm * c, mode.effective_radius_mm * s, 0.0};
        smp.tangent = {-s, c, 0.0};
        smp.weight = mode.orientation == Orientation::cos_phi ? std::cos(n * phi)
                                                              : std::sin(n * phi);
        set.samples.push_back(smp);
    }
    return set;
}

ConformalField::ConformalField(ApertureSampleSet set, BendSpec bend, double f_ghz)
    : f_ghz_(f_ghz) {
    if (!(f_ghz > 0.0)) throw ConfigError("ConformalField: frequency must be > 0");
    validate_bend(bend);
    const std::size_t n = set.samples.size();
    positions_.reserve(n);
    tangents_.reserve(n);
    weights_.reserve(n);
    for (const ApertureSample& s : set.samples) {
        const BentPoint bp = bend_map(s.position, bend);
        positions_.push_back(bp.position);
        tangents_.push_back(bp.frame.apply(s.tangent));
        weights_.push_back(s.weight);
    }
    prefactor_mag_ = 2.0 * set.gain_scale / static_cast<double>(n);
    wavenumber_ = kTwoPi * f_ghz / kSpeedOfLightMmGhz;
    if (!bend.flat) {
        // Lossless bend: match the flat set's radiated power.
        static const SphereGrid norm_grid = make_sphere_grid(64, 128);
        const ConformalField flat(set, BendSpec::none(), f_ghz);
        double p_flat = 0.0, p_bent = 0.0;
        for (const SphereNode& node : norm_grid.nodes) {
            p_flat += power_density(flat.eval_raw(node.theta, node.phi)) * node.weight;
            p_bent += power_density(eval_raw(node.theta, node.phi)) * node.weight;
        }
        if (!(p_bent > 0.0)) throw NumericError("ConformalField: bent power vanished");
        scale_ = std::sqrt(p_flat / p_bent);
    }
}

Complex2 ConformalField::eval_raw(double theta_rad, double phi_rad) const {
    const double st = std::sin(theta_rad), ct = std::cos(theta_rad);
    const double sp = std::sin(phi_rad), cp = std::cos(phi_rad);
    const Vec3 rhat{st * cp, st * sp, ct};
    const Vec3 that{ct * cp, ct * sp, -st};
    const Vec3 phat{-sp, cp, 0.0};
    std::complex<double> l_phi{0.0, 0.0}, l_theta{0.0, 0.0};
    for (std::size_t m = 0; m < positions_.size(); ++m) {
        const double phase = wavenumber_ * dot(rhat, positions_[m]);
        const std::complex<double> e{std::cos(phase), std::sin(phase)};
        const std::complex<double> we = weights_[m] * e;
        l_phi += we * dot(tangents_[m], phat);
        l_theta += we * dot(tangents_[m], that);
    }
    // E_theta = -kappa L_phi, E_phi = -kappa L_theta with kappa = j 2G/N; this
    // reproduces the closed-form modal convention in the flat limit.
    const std::complex<double> kappa{0.0, prefactor_mag_};
    const double bl = back_lobe_factor(theta_rad);
    return {-kappa * l_phi * bl, -kappa * l_theta * bl};
}

Complex2 ConformalField::eval(double theta_rad, double phi_rad) const {
    Complex2 e = eval_raw(theta_rad, phi_rad);
    e.e_theta *= scale_;
    e.e_phi *= scale_;
    return e;
}

std::shared_ptr<const FarField> make_port_field(const AntennaLayout& layout,
                                                const std::string& port_id,
                                                double f_ghz, const BendSpec& bend) {
    const ModeSpec& mode = find_mode(layout, port_id);
    if (bend.flat) return std::make_shared<ModalField>(mode, f_ghz);
    return std::make_shared<ConformalField>(sample_aperture(layout, mode), bend, f_ghz);
}

} // namespace modebeam
