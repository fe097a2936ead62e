// Benchmark comparing the OpenMP grid kernels against the serial reference.
// Also verifies the two paths agree bit for bit.

#include "modebeam/beamform.hpp"
#include "modebeam/conformal.hpp"
#include "modebeam/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#ifdef _OPENMP
#include <omp.h>
#endif

using namespace modebeam;

namespace {

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

bool bit_identical(const SampledField& a, const SampledField& b) {
    if (a.values.size() != b.values.size()) return false;
    return std::memcmp(a.values.data(), b.values.data(),
                       a.values.size() * sizeof(Complex2)) == 0;
}

void bench_case(const char* name, const FarField& field, const SphereGrid& grid,
                int reps) {
    double t0 = now_s();
    SampledField serial;
    for (int r = 0; r < reps; ++r) serial = sample_field(field, grid, Exec::serial);
    const double t_serial = (now_s() - t0) / reps;

    t0 = now_s();
    SampledField parallel;
    for (int r = 0; r < reps; ++r) parallel = sample_field(field, grid, Exec::parallel);
    const double t_parallel = (now_s() - t0) / reps;

    std::printf("%-28s serial %8.2f ms   parallel %8.2f ms   speedup %.2fx   %s\n",
                name, 1e3 * t_serial, 1e3 * t_parallel, t_serial / t_parallel,
                bit_identical(serial, parallel) ? "bit-identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    int reps = 3;
    if (argc > 1) reps = std::atoi(argv[1]);
#ifdef _OPENMP
    std::printf("OpenMP threads: %d, reps: %d\n", omp_get_max_threads(), reps);
#else
    std::printf("built without OpenMP; parallel == serial path, reps: %d\n", reps);
#endif

    const AntennaLayout a1 = build_antenna1();
    const SphereGrid grid = make_sphere_grid(64, 128);
    const SphereGrid fine = make_sphere_grid(128, 256);

    const ModalField modal(find_mode(a1, "F1"), a1.design_frequency_ghz);
    bench_case("modal TM11, 64x128", modal, grid, reps);

    const BendSpec bend = BendSpec::about_y(10.0);
    const ResonanceModel model = calibrate_slot_loading(a1, ResonanceModel{});
    const double f_bent = bent_frequency(a1.design_frequency_ghz, a1, bend, model);
    const ConformalField bent_tm11(sample_aperture(a1, find_mode(a1, "F1")), bend, f_bent);
    bench_case("conformal TM11, 64x128", bent_tm11, grid, reps);
    bench_case("conformal TM11, 128x256", bent_tm11, fine, reps);

    ExcitationVector exc;
    exc.set("F1", {0.0, 1.0});
    exc.set("F3", {1.0, 0.0});
    const auto steered = synthesize(a1, exc, f_bent, bend);
    bench_case("steered pair, 128x256", *steered, fine, reps);
    return 0;
}
