#include "modebeam/farfield.hpp"
#include "modebeam/errors.hpp"

#include <cstdint>

namespace modebeam {

SampledField sample_field(const FarField& field, const SphereGrid& grid, Exec exec) {
    SampledField out;
    out.grid = &grid;
    out.values.resize(grid.nodes.size());
    const std::int64_t n = static_cast<std::int64_t>(grid.nodes.size());
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t i = 0; i < n; ++i) {
        const SphereNode& node = grid.nodes[static_cast<std::size_t>(i)];
        out.values[static_cast<std::size_t>(i)] = field.eval(node.theta, node.phi);
    }
    return out;
}

double total_power(const SampledField& sampled) {
    double power = 0.0;
    for (std::size_t i = 0; i < sampled.values.size(); ++i)
        power += power_density(sampled.values[i]) * sampled.grid->nodes[i].weight;
    return power;
}

std::vector<Complex2> eval_directions(const FarField& field,
                                      const std::vector<double>& theta_rad,
                                      const std::vector<double>& phi_rad,
                                      Exec exec) {
    if (theta_rad.size() != phi_rad.size())
        throw ConfigError("eval_directions: theta/phi size mismatch");
    std::vector<Complex2> out(theta_rad.size());
    const std::int64_t n = static_cast<std::int64_t>(out.size());
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        out[k] = field.eval(theta_rad[k], phi_rad[k]);
    }
    return out;
}

} // namespace modebeam
