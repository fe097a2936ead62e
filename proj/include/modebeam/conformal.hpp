#ifndef MODEBEAM_CONFORMAL_HPP
#define MODEBEAM_CONFORMAL_HPP

#include "modebeam/farfield.hpp"
#include "modebeam/geometry.hpp"

#include <string>
#include <vector>

namespace modebeam {

/// One discretized element of a modal aperture: a short magnetic current
/// tangent to the equivalent ring, with a real cos/sin azimuthal weight.
struct ApertureSample {
    Vec3 position;  // mm, flat configuration (z = 0)
    Vec3 tangent;   // unit tangent of the ring at the sample
    double weight;  // cos(n phi') or sin(n phi')
};

struct ApertureSampleSet {
    std::string mode_port;
    int azimuthal_order = 0;
    double gain_scale = 1.0;
    double effective_radius_mm = 0.0;
    std::vector<ApertureSample> samples; // deterministic order from phi' = 0
};

inline constexpr int kDefaultApertureSamples = 256;

/// Equally spaced ring samples for one mode; requires
/// n_samples >= 16 * (n + 1).
ApertureSampleSet sample_aperture(const AntennaLayout& layout, const ModeSpec& mode,
                                  int n_samples = kDefaultApertureSamples);

/// Far field of a (possibly bent) sampled aperture. Each sample's position
/// and tangent frame are transformed by bend_map; the field at a direction is
/// the fixed-order sum of element patterns times e^{j k r_hat . r_m}.
///
/// Bending is treated as lossless: the bent field is rescaled so its total
/// radiated power equals the flat set's power (flat bends are untouched, so
/// the flat limit reproduces the closed-form mode exactly up to the ring
/// discretization, which is far below 0.05 dB at the default sampling).
class ConformalField final : public FarField {
public:
    ConformalField(ApertureSampleSet set, BendSpec bend, double f_ghz);

    Complex2 eval(double theta_rad, double phi_rad) const override;

    double frequency_ghz() const { return f_ghz_; }
    double power_rescale() const { return scale_; }

private:
    Complex2 eval_raw(double theta_rad, double phi_rad) const;

    std::vector<Vec3> positions_;
    std::vector<Vec3> tangents_;
    std::vector<double> weights_;
    double prefactor_mag_ = 0.0; // 2 G / N
    double wavenumber_ = 0.0;    // rad/mm
    double f_ghz_ = 0.0;
    double scale_ = 1.0;
};

/// Builds the far field of one port's mode under the given bend: the
/// closed-form modal field when flat, the conformal integral otherwise.
std::shared_ptr<const FarField> make_port_field(const AntennaLayout& layout,
                                                const std::string& port_id,
                                                double f_ghz, const BendSpec& bend);

} // namespace modebeam

#endif
