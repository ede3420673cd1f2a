#include "nlcs/observables.hpp"

#include "nlcs/fock_oracle.hpp"

#include "doctest.h"

#include <cmath>
#include <limits>

using namespace nlcs;

namespace {

const Nonlinearity kId{NonlinearityKind::Identity, 0.0};
const Nonlinearity kIon01{NonlinearityKind::TrappedIon, 0.1};

std::vector<double> grid(double t_max, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1.0);
    return t;
}

// independent route for g2: assemble the transformed mode as a dense matrix
double g2_matrix(const StateCoefficients& st, const FrameAtTime& fr) {
    const int dim = st.n_trunc + 8;
    const TruncatedOperator A = lowering_op(dim);
    const TruncatedOperator a =
        op_sub(op_scale(std::conj(fr.u), A), op_scale(fr.v, op_dagger(A)));
    const TruncatedOperator ad = op_dagger(a);
    std::vector<cplx> psi(dim, cplx(0.0, 0.0));
    for (std::size_t n = 0; n < st.coeffs.size(); ++n) psi[n] = st.coeffs[n];
    auto expect = [&](const TruncatedOperator& op) {
        const std::vector<cplx> phi = op_apply(op, psi);
        cplx acc(0.0, 0.0);
        for (int n = 0; n < dim; ++n) acc += std::conj(psi[n]) * phi[n];
        return std::real(acc);
    };
    const double num = expect(op_mul(op_mul(ad, ad), op_mul(a, a)));
    const double den = expect(op_mul(ad, a));
    return num / (den * den);
}

}  // namespace

TEST_CASE("vacuum levels") {
    const MomentTable vac = moment_table(build_even({0.0, 0.0}, kId), 4);
    const FrameAtTime fr = frame_at(0.0, 0.0);
    const auto [F, G] = squeezing_FG(vac, fr);
    CHECK(F == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(G == doctest::Approx(0.5).epsilon(1e-15));
    const auto [v1, v2] = variance_direct(vac, fr);
    CHECK(v1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(v2 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(g2_instant(vac, fr), VacuumDivergence);
}

TEST_CASE("one-quantum state: all observables static at kappa = 0") {
    const MomentTable one = moment_table(build_odd({0.0, 0.0}, kId), 4);
    const std::vector<double> times = grid(20.0, 400);
    const std::vector<ObservableSample> samples = sweep_observables_serial(one, 0.0, times);
    for (const auto& s : samples) {
        CHECK(std::abs(s.F - 1.5) <= 1e-12);
        CHECK(std::abs(s.G - 1.5) <= 1e-12);
        CHECK(std::abs(s.varX1 - 1.5) <= 1e-12);
        CHECK(std::abs(s.varX2 - 1.5) <= 1e-12);
        CHECK(std::abs(s.g2) <= 1e-12);
        CHECK(std::abs(s.uncertainty_product - 2.25) <= 1e-12);
        CHECK_FALSE(s.squeezed_X1);
        CHECK_FALSE(s.squeezed_X2);
    }
}

TEST_CASE("two quadrature routes agree") {
    const MomentTable table = moment_table(build_even({1.0, 0.0}, kIon01), 4);
    SUBCASE("identically at kappa = 0") {
        for (double t : grid(20.0, 201)) {
            const FrameAtTime fr = frame_at(t, 0.0);
            const auto [F, G] = squeezing_FG(table, fr);
            const auto [v1, v2] = variance_direct(table, fr);
            CHECK(std::abs(F - v1) <= 1e-12);
            CHECK(std::abs(G - v2) <= 1e-12);
        }
    }
    SUBCASE("to the frozen kappa bound under drive") {
        // the gap is exactly F times the Wronskian defect, so it is bounded by
        // (max F) kappa/4; c = 2 frozen with margin
        for (double kappa : {0.01, 0.05}) {
            for (double t : grid(20.0, 201)) {
                const FrameAtTime fr = frame_at(t, kappa);
                const auto [F, G] = squeezing_FG(table, fr);
                const auto [v1, v2] = variance_direct(table, fr);
                (void)G;
                CHECK(std::abs(v1 - F) <= 2.0 * kappa);
                CHECK(std::abs(v2 - G) <= 2.0 * kappa);
                const double wfac = 1.0 + 0.25 * kappa * std::cos(2.0 * t);
                CHECK(std::abs(v1 - F * wfac) <= 1e-12);
                CHECK(std::abs(v2 - G * wfac) <= 1e-12);
            }
        }
    }
}

TEST_CASE("undeformed cat-state closed forms at t = 0") {
    for (double a : {0.5, 1.0, 2.0}) {
        const double a2 = a * a;
        const double th = std::tanh(a2);
        const MomentTable even = moment_table(build_even({a, 0.0}, kId), 4);
        const MomentTable odd = moment_table(build_odd({a, 0.0}, kId), 4);
        const FrameAtTime fr = frame_at(0.0, 0.0);
        CHECK(std::real(even.at(1, 1)) == doctest::Approx(a2 * th).epsilon(1e-10));
        CHECK(std::real(odd.at(1, 1)) == doctest::Approx(a2 / th).epsilon(1e-10));
        CHECK(g2_instant(even, fr) == doctest::Approx(1.0 / (th * th)).epsilon(1e-8));
        CHECK(g2_instant(odd, fr) == doctest::Approx(th * th).epsilon(1e-8));
    }
    // spot pins
    const MomentTable even = moment_table(build_even({0.5, 0.0}, kId), 4);
    CHECK(std::real(even.at(1, 1)) == doctest::Approx(0.061229665600927).epsilon(1e-9));
    CHECK(g2_instant(even, frame_at(0.0, 0.0)) == doctest::Approx(16.670792360).epsilon(1e-8));
}

TEST_CASE("kappa = 0: free rotation moves F and G but preserves their sum and g2") {
    const MomentTable table = moment_table(build_even({1.0, 0.0}, kId), 4);
    const std::vector<ObservableSample> samples =
        sweep_observables_serial(table, 0.0, grid(20.0, 400));
    const double sum0 = samples[0].F + samples[0].G;
    double fmin = 1e9, fmax = -1e9;
    for (const auto& s : samples) {
        CHECK(std::abs(s.F + s.G - sum0) <= 1e-12);
        CHECK(std::abs(s.g2 - samples[0].g2) <= 1e-12);
        fmin = std::min(fmin, s.F);
        fmax = std::max(fmax, s.F);
    }
    CHECK(fmax - fmin > 1.0);  // the quadrature factors genuinely oscillate
    // frozen pins: F(0) = 1/2 + <n> + <A^2> with <n> = tanh(1), <A^2> = 1
    const auto [F0, G0] = squeezing_FG(table, frame_at(0.0, 0.0));
    CHECK(F0 == doctest::Approx(2.2615941559557649).epsilon(1e-12));
    const auto [Fq, Gq] = squeezing_FG(table, frame_at(M_PI / 4, 0.0));
    CHECK(Fq == doctest::Approx(1.2615941559557649).epsilon(1e-12));
    CHECK(Gq == doctest::Approx(1.2615941559557649).epsilon(1e-12));
    (void)G0;
}

TEST_CASE("uncertainty product floor") {
    for (double kappa : {0.0, 0.01}) {
        for (bool even : {true, false}) {
            const StateCoefficients st =
                even ? build_even({1.0, 0.0}, kIon01) : build_odd({0.8, 0.0}, kIon01);
            const MomentTable table = moment_table(st, 4);
            for (double t : grid(20.0, 200)) {
                const auto [F, G] = squeezing_FG(table, frame_at(t, kappa));
                CHECK(F * G >= 0.25 - 10.0 * kappa - 1e-12);
            }
        }
    }
}

TEST_CASE("g2 against the dense-matrix route") {
    struct Probe {
        StateCoefficients st;
        double kappa, t;
    };
    const Probe probes[] = {
        {build_even({1.0, 0.0}, kIon01), 0.01, 0.7},
        {build_odd({0.8, 0.0}, {NonlinearityKind::TrappedIon, 0.2}), 0.05, 1.3},
        {build_nlcs({1.2, 0.4}, kIon01), 0.01, 3.9},
    };
    for (const auto& p : probes) {
        const MomentTable table = moment_table(p.st, 4);
        const FrameAtTime fr = frame_at(p.t, p.kappa);
        const double series = g2_instant(table, fr);
        const double matrix = g2_matrix(p.st, fr);
        CHECK(std::abs(series - matrix) <= 1e-10 * std::max(1.0, std::abs(matrix)));
    }
}

TEST_CASE("intelligent times") {
    SUBCASE("vacuum at kappa = 0 qualifies everywhere") {
        const MomentTable vac = moment_table(build_even({0.0, 0.0}, kId), 4);
        const std::vector<double> g = grid(10.0, 50);
        CHECK(intelligent_times(vac, 0.0, g, 5e-3).size() == g.size());
    }
    SUBCASE("a bright cat at kappa = 0 never qualifies at tight tolerance") {
        const MomentTable table = moment_table(build_even({1.0, 0.0}, kId), 4);
        CHECK(intelligent_times(table, 0.0, grid(20.0, 400), 5e-3).empty());
    }
    SUBCASE("interval boundaries are refined onto the tolerance contour") {
        const MomentTable table = moment_table(build_even({0.5, 0.0}, kId), 4);
        const double tol = 0.2;
        const std::vector<double> g = grid(10.0, 200);
        const std::vector<double> times = intelligent_times(table, 0.0, g, tol);
        REQUIRE_FALSE(times.empty());
        int refined = 0;
        for (double t : times) {
            bool on_grid = false;
            for (double gt : g) on_grid |= gt == t;
            if (on_grid) continue;
            ++refined;
            const auto [F, G] = squeezing_FG(table, frame_at(t, 0.0));
            CHECK(std::abs(std::max(std::abs(F - 0.5), std::abs(G - 0.5)) - tol) <= 1e-9);
        }
        CHECK(refined > 0);
    }
}

TEST_CASE("parallel sweep is bitwise identical to the serial reference") {
    const MomentTable table = moment_table(build_even({1.0, 0.0}, kIon01), 4);
    const std::vector<double> times = grid(30.0, 1001);
    const auto serial = sweep_observables_serial(table, 0.01, times);
    const auto parallel = sweep_observables(table, 0.01, times);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].F == parallel[i].F);
        CHECK(serial[i].G == parallel[i].G);
        CHECK(serial[i].varX1 == parallel[i].varX1);
        CHECK(serial[i].varX2 == parallel[i].varX2);
        CHECK(serial[i].g2 == parallel[i].g2);
        CHECK(serial[i].wronskian_defect == parallel[i].wronskian_defect);
        CHECK(serial[i].squeezed_X1 == parallel[i].squeezed_X1);
        CHECK(serial[i].uncertainty_product == parallel[i].uncertainty_product);
    }
    // defect column carries the secular-branch signature
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(std::abs(serial[i].wronskian_defect -
                       0.0025 * std::abs(std::cos(2.0 * times[i]))) <= 1e-12);
}

TEST_CASE("sweep aggregates per-point failures with indices") {
    MomentTable broken;
    broken.jmax = 4;
    broken.m.assign(25, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
    const std::vector<double> times = grid(1.0, 7);
    try {
        (void)sweep_observables_serial(broken, 0.0, times);
        FAIL("expected SweepError");
    } catch (const SweepError& e) {
        REQUIRE(e.failures.size() == times.size());
        CHECK(e.failures.front().index == 0);
        CHECK(e.failures.back().index == times.size() - 1);
        CHECK(e.failures[2].t == times[2]);
        CHECK_FALSE(e.failures.front().what.empty());
    }
}

TEST_CASE("moment grids that are too small are rejected") {
    const MomentTable tiny = moment_table(build_even({0.5, 0.0}, kId), 1);
    CHECK_THROWS_AS(squeezing_FG(tiny, frame_at(0.0, 0.0)), std::invalid_argument);
    const MomentTable quad = moment_table(build_even({0.5, 0.0}, kId), 2);
    CHECK_THROWS_AS(g2_instant(quad, frame_at(0.0, 0.0)), std::invalid_argument);
}
