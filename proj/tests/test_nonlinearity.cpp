#include "nlcs/nonlinearity.hpp"

#include "nlcs/special_functions.hpp"

#include "doctest.h"

#include <cmath>

using namespace nlcs;

namespace {

// squared Lamb-Dicke value sitting on a zero of L_n^0, found by bisection down
// to adjacent doubles
double eta_on_zero(int n) {
    double lo = 0.01;
    double flo = laguerre(n, 0, lo);
    double hi = lo;
    for (;;) {
        hi += 0.005;
        const double fhi = laguerre(n, 0, hi);
        if ((flo > 0.0) != (fhi > 0.0)) break;
        lo = hi;
        flo = fhi;
        REQUIRE(lo < 10.0);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((laguerre(n, 0, mid) > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = laguerre(n, 0, mid);
        } else {
            hi = mid;
        }
    }
    const double x = std::abs(laguerre(n, 0, lo)) < std::abs(laguerre(n, 0, hi)) ? lo : hi;
    return std::sqrt(x);
}

}  // namespace

TEST_CASE("f_eval at pinned points") {
    CHECK(f_eval({NonlinearityKind::Identity, 0.0}, 7) == 1.0);
    CHECK(f_eval({NonlinearityKind::TrappedIon, 0.3}, 0) == 1.0);
    // f(1) = L_1^1(0.25) / (2 L_1^0(0.25)) = 1.75 / 1.5
    CHECK(f_eval({NonlinearityKind::TrappedIon, 0.5}, 1) ==
          doctest::Approx(1.75 / 1.5).epsilon(1e-15));
    CHECK_THROWS_AS(f_eval({NonlinearityKind::TrappedIon, 0.3}, -1), std::invalid_argument);
}

TEST_CASE("trapped-ion profile reduces to 1 + n eta^2/2 for small eta") {
    // expanding numerator and denominator in x = eta^2:
    //   L_n^1/(n+1) = 1 - (n/2) x + n(n-1)/12 x^2 + ...,
    //   L_n^0      = 1 -  n    x + n(n-1)/4  x^2 + ...
    // so f(n) = 1 + (n/2) x + [n^2/2 - n(n-1)/6] x^2 + O(x^3)
    const double x = 1e-4;
    const Nonlinearity nl{NonlinearityKind::TrappedIon, 0.01};
    for (int n = 0; n <= 15; ++n) {
        const double second = (0.5 * n * n - n * (n - 1) / 6.0) * x * x;
        CHECK(std::abs(f_eval(nl, n) - (1.0 + 0.5 * n * x + second)) <= 1e-8);
    }
}

TEST_CASE("ledger for the identity profile") {
    const CoefficientLedger led = coefficient_ledger({NonlinearityKind::Identity, 0.0}, 2);
    REQUIRE(led.n_max == 2);
    CHECK(led.log_abs_d[0] == 0.0);
    CHECK(led.log_abs_d[1] == 0.0);  // -0.5 ln 1 exactly
    CHECK(led.log_abs_d[2] == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(led.sign_d[0] == 1);
    CHECK(led.sign_d[1] == 1);
    CHECK(led.sign_d[2] == 1);
}

TEST_CASE("identity ledger matches 1/sqrt(n!) through n = 170") {
    const CoefficientLedger led = coefficient_ledger({NonlinearityKind::Identity, 0.0}, 170);
    double worst = 0.0;
    for (int n = 0; n <= 170; ++n) {
        const double want = std::exp(-0.5 * log_factorial(n));
        worst = std::max(worst, std::abs(std::exp(led.log_abs_d[n]) - want) / want);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("eta = 0 trapped-ion ledger is exactly the identity ledger") {
    const CoefficientLedger a = coefficient_ledger({NonlinearityKind::TrappedIon, 0.0}, 60);
    const CoefficientLedger b = coefficient_ledger({NonlinearityKind::Identity, 0.0}, 60);
    for (int n = 0; n <= 60; ++n) {
        CHECK(a.log_abs_d[n] == b.log_abs_d[n]);
        CHECK(a.sign_d[n] == b.sign_d[n]);
    }
}

TEST_CASE("ledger signs track sign flips of f") {
    // strong deformation: f goes negative within a few quanta
    const Nonlinearity nl{NonlinearityKind::TrappedIon, 0.9};
    const int n_max = 10;
    const CoefficientLedger led = coefficient_ledger(nl, n_max);
    int sign = 1;
    bool any_negative = false;
    for (int n = 1; n <= n_max; ++n) {
        const double fn = f_eval(nl, n);
        any_negative |= fn < 0.0;
        if (fn < 0.0) sign = -sign;
        CHECK(led.sign_d[n] == sign);
    }
    CHECK(any_negative);
}

TEST_CASE("singularity gate fires when eta^2 sits on a denominator zero") {
    const double eta = eta_on_zero(20);
    CHECK_THROWS_AS(f_eval({NonlinearityKind::TrappedIon, eta}, 20), NonlinearitySingular);
    try {
        (void)f_eval({NonlinearityKind::TrappedIon, eta}, 20);
    } catch (const NonlinearitySingular& e) {
        CHECK(e.n == 20);
    }
    // physical grid values stay far from the gate
    CHECK_NOTHROW(coefficient_ledger({NonlinearityKind::TrappedIon, 0.3}, 80));
}
