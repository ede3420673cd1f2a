#pragma once

#include <stdexcept>
#include <string>

namespace nlcs {

// Degrees past this are a caller bug, not a physics regime: the coefficient
// series we feed these into has died off (or failed to) long before.
inline constexpr int kLaguerreDegreeCap = 4096;

struct DegreeCapExceeded : std::runtime_error {
    explicit DegreeCapExceeded(int n)
        : std::runtime_error("Laguerre degree " + std::to_string(n) + " exceeds cap " +
                             std::to_string(kLaguerreDegreeCap)) {}
};

// Generalized Laguerre polynomial L_n^m(x), computed by the stable upward
// three-term recurrence
//     (n+1) L_{n+1}^m = (2n+1+m-x) L_n^m - (n+m) L_{n-1}^m,
// L_0^m = 1, L_1^m = 1 + m - x.  Requires n, m >= 0; throws DegreeCapExceeded
// above the cap.
double laguerre(int n, int m, double x);

// ln(n!) as a cumulative sum of ln k.  Exactly zero for n = 0 and n = 1.
// Accuracy is eps-limited for large n: the sum itself is ~n ln n, so pairwise
// differences carry an absolute floor of about 0.5 ulp(sum) (e.g. ~7e-12 near
// n = 1e4); callers comparing against ln n must budget for that.
double log_factorial(int n);

}  // namespace nlcs
