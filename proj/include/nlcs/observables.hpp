#pragma once

#include "nlcs/dynamics.hpp"
#include "nlcs/states.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nlcs {

struct VacuumDivergence : std::runtime_error {
    explicit VacuumDivergence(const std::string& what) : std::runtime_error(what) {}
};

struct ObservableSample {
    double t = 0.0;
    double F = 0.5;  // quadrature factors in units of the vacuum level 1/2
    double G = 0.5;
    double varX1 = 0.5;  // independently expanded variances
    double varX2 = 0.5;
    double uncertainty_product = 0.25;  // F * G
    bool squeezed_X1 = false;           // F < 1/2
    bool squeezed_X2 = false;           // G < 1/2
    double g2 = 1.0;
    double wronskian_defect = 0.0;
};

// Closed-form route: F and G from the normally ordered moment grid,
//   F = [2/(kappa cos 2t + 4)] (eps^2 <A+A+> + eps*^2 <AA> + 2|eps|^2 <A+A> + |eps|^2),
//   G = same combination with eps -> deps/dt.
std::pair<double, double> squeezing_FG(const MomentTable& m, const FrameAtTime& fr);

// Mechanical route: expand a = u* A - v A^dag, a^dag = -v* A + u A^dag, square
// the quadratures X1 = (a + a^dag)/sqrt(2), X2 = (a - a^dag)/(i sqrt(2)), and
// reduce to normally ordered A-moments with [A, A^dag] = 1.  Returns
// (<X1^2> - <X1>^2, <X2^2> - <X2>^2).  Shares no algebra with squeezing_FG.
std::pair<double, double> variance_direct(const MomentTable& m, const FrameAtTime& fr);

// g2(t) = <a+ a+ a a> / <a+ a>^2 in the instantaneous frame, by the same
// mechanical expansion (16 A-words for the numerator before reduction).
// Throws VacuumDivergence when <a+ a> has no support to divide by.
double g2_instant(const MomentTable& m, const FrameAtTime& fr);

ObservableSample observables_at(const MomentTable& m, double kappa, double t);

struct SweepFailure {
    std::size_t index = 0;
    double t = 0.0;
    std::string what;
};

struct SweepError : std::runtime_error {
    std::vector<SweepFailure> failures;
    explicit SweepError(std::vector<SweepFailure> f);
};

// Reference serial sweep and the OpenMP twin.  Grid points are independent, so
// the parallel version is bitwise identical to the serial one; it exists for
// large scans and is exercised against the reference in the tests and the
// bench_sweep tool.  Per-point failures are collected (with index and time)
// and reported at the end as one SweepError.
std::vector<ObservableSample> sweep_observables_serial(const MomentTable& m, double kappa,
                                                       const std::vector<double>& times);
std::vector<ObservableSample> sweep_observables(const MomentTable& m, double kappa,
                                                const std::vector<double>& times);

// Times where the state is "intelligent": both F and G within tol of the
// vacuum level 1/2.  Scans the grid and refines every sign change of
// max(|F-1/2|, |G-1/2|) - tol by bisection; returns qualifying grid points
// plus refined interval boundaries, sorted.
std::vector<double> intelligent_times(const MomentTable& m, double kappa,
                                      const std::vector<double>& grid, double tol);

}  // namespace nlcs
