#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nlcs {

// Intensity-dependent deformation profile f(n) entering the deformed ladder
// operator B = A f(N).  TrappedIon is the sideband-coupling profile of a laser
// driven ion in the resolved regime,
//     f(n) = L_n^1(eta^2) / ((n+1) L_n^0(eta^2)),
// with eta the Lamb-Dicke parameter; Identity (f = 1) recovers ordinary
// coherent states.
enum class NonlinearityKind { Identity, TrappedIon };

struct Nonlinearity {
    NonlinearityKind kind = NonlinearityKind::Identity;
    double eta = 0.0;  // >= 0; unused for Identity
};

// Below this the computed L_n^0(eta^2) quotient carries O(1) relative error
// (the value sits inside the cancellation noise around a polynomial zero), so
// f(n) is numerically meaningless and construction must stop below n.
// Physical parameter ranges keep |L_n^0| many orders above the gate.
inline constexpr double kNonlinearitySingularGate = 1e-13;

struct NonlinearitySingular : std::runtime_error {
    int n;
    NonlinearitySingular(int n_, double eta)
        : std::runtime_error("f(" + std::to_string(n_) + ") singular: L_n(eta^2) ~ 0 at eta = " +
                             std::to_string(eta)),
          n(n_) {}
};

// f(n) for the given profile.  f(0) = 1 for every profile.  Throws
// NonlinearitySingular when the denominator Laguerre value is numerically dead.
double f_eval(const Nonlinearity& nl, int n);

// Prefactors d_n of the deformed coherent series |alpha, f> ~ sum d_n alpha^n |n>,
//     d_0 = 1,   d_n = d_{n-1} / (sqrt(n) f(n)).
// Stored as log|d_n| plus a sign so that n ~ 10^3 stays representable (the
// magnitudes underflow double well before the series converges for large alpha).
struct CoefficientLedger {
    std::vector<double> log_abs_d;  // size n_max + 1;  log_abs_d[0] = 0
    std::vector<int> sign_d;        // +1 / -1, sign_d[0] = +1
    int n_max = 0;
};

CoefficientLedger coefficient_ledger(const Nonlinearity& nl, int n_max);

}  // namespace nlcs
