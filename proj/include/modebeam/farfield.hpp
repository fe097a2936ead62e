#ifndef MODEBEAM_FARFIELD_HPP
#define MODEBEAM_FARFIELD_HPP

#include "modebeam/modes.hpp"
#include "modebeam/numerics.hpp"

#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace modebeam {

/// Evaluator contract: complex (E_theta, E_phi) at any direction.
/// Implementations must be pure and safe for concurrent eval() calls.
class FarField {
public:
    virtual ~FarField() = default;
    virtual Complex2 eval(double theta_rad, double phi_rad) const = 0;
};

/// Closed-form single-mode field.
class ModalField final : public FarField {
public:
    ModalField(ModeSpec mode, double f_ghz) : mode_(std::move(mode)), f_ghz_(f_ghz) {}
    Complex2 eval(double theta_rad, double phi_rad) const override {
        return eval_mode_farfield(mode_, f_ghz_, theta_rad, phi_rad);
    }
    const ModeSpec& mode() const { return mode_; }
    double frequency_ghz() const { return f_ghz_; }

private:
    ModeSpec mode_;
    double f_ghz_;
};

/// Weighted superposition of port fields. Children are summed in storage
/// order, so results are reproducible bit for bit.
class SuperposedField final : public FarField {
public:
    void add(std::complex<double> weight, std::shared_ptr<const FarField> field) {
        terms_.emplace_back(weight, std::move(field));
    }
    Complex2 eval(double theta_rad, double phi_rad) const override {
        Complex2 acc;
        for (const auto& [w, f] : terms_) {
            const Complex2 e = f->eval(theta_rad, phi_rad);
            acc.e_theta += w * e.e_theta;
            acc.e_phi += w * e.e_phi;
        }
        return acc;
    }
    std::size_t size() const { return terms_.size(); }

private:
    std::vector<std::pair<std::complex<double>, std::shared_ptr<const FarField>>> terms_;
};

/// Execution policy for the grid kernels. Parallel runs split independent
/// output points across OpenMP threads; each point keeps its fixed-order
/// inner reduction, so serial and parallel results are bit-identical.
enum class Exec { serial, parallel };

/// Field sampled on a sphere grid (values in node order).
struct SampledField {
    const SphereGrid* grid = nullptr;
    std::vector<Complex2> values;
};

SampledField sample_field(const FarField& field, const SphereGrid& grid,
                          Exec exec = Exec::parallel);

/// Sum of |E|^2 * weight over the grid (serial reduction in node order).
double total_power(const SampledField& sampled);

/// Evaluates the field along precomputed (theta, phi) directions.
std::vector<Complex2> eval_directions(const FarField& field,
                                      const std::vector<double>& theta_rad,
                                      const std::vector<double>& phi_rad,
                                      Exec exec = Exec::parallel);

} // namespace modebeam

#endif
