// Times the serial reference sweep against the OpenMP one on a large grid and
// confirms the two produce bitwise-identical samples (grid points are
// independent, so parallelization must not change a single bit).

#include "nlcs/observables.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

bool same_bits(const nlcs::ObservableSample& x, const nlcs::ObservableSample& y) {
    return x.t == y.t && x.F == y.F && x.G == y.G && x.varX1 == y.varX1 && x.varX2 == y.varX2 &&
           x.uncertainty_product == y.uncertainty_product && x.squeezed_X1 == y.squeezed_X1 &&
           x.squeezed_X2 == y.squeezed_X2 && x.g2 == y.g2 &&
           x.wronskian_defect == y.wronskian_defect;
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 400000;
    if (n < 2) {
        std::fprintf(stderr, "usage: bench_sweep [n_points >= 2]\n");
        return 2;
    }

    const nlcs::Nonlinearity nl{nlcs::NonlinearityKind::TrappedIon, 0.1};
    const nlcs::StateCoefficients st = nlcs::build_even({1.0, 0.0}, nl);
    const nlcs::MomentTable table = nlcs::moment_table(st, 4);
    std::vector<double> times(n);
    for (int i = 0; i < n; ++i) times[i] = 50.0 * i / (n - 1.0);
    const double kappa = 0.01;

    // warm-up (page faults, omp pool)
    {
        std::vector<double> small(times.begin(), times.begin() + 1024);
        (void)nlcs::sweep_observables_serial(table, kappa, small);
        (void)nlcs::sweep_observables(table, kappa, small);
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto serial = nlcs::sweep_observables_serial(table, kappa, times);
    const auto t1 = std::chrono::steady_clock::now();
    const auto parallel = nlcs::sweep_observables(table, kappa, times);
    const auto t2 = std::chrono::steady_clock::now();

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i)
        identical = same_bits(serial[i], parallel[i]);

    const double ts = seconds(t0, t1), tp = seconds(t1, t2);
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("grid points      : %d\n", n);
    std::printf("threads          : %d\n", threads);
    std::printf("serial reference : %.3f s  (%.1f ns/point)\n", ts, 1e9 * ts / n);
    std::printf("parallel sweep   : %.3f s  (%.1f ns/point)\n", tp, 1e9 * tp / n);
    std::printf("speedup          : %.2fx\n", tp > 0.0 ? ts / tp : 0.0);
    std::printf("bitwise identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
