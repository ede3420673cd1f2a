#include "nlcs/special_functions.hpp"

#include <cmath>

namespace nlcs {

double laguerre(int n, int m, double x) {
    if (n < 0 || m < 0) throw std::invalid_argument("laguerre: n and m must be >= 0");
    if (n > kLaguerreDegreeCap) throw DegreeCapExceeded(n);
    if (n == 0) return 1.0;
    double lkm1 = 1.0;           // L_0^m
    double lk = 1.0 + m - x;     // L_1^m
    for (int k = 1; k < n; ++k) {
        const double lkp1 = ((2.0 * k + 1.0 + m - x) * lk - (k + m) * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

double log_factorial(int n) {
    if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
    double s = 0.0;
    for (int k = 2; k <= n; ++k) s += std::log(static_cast<double>(k));
    return s;
}

}  // namespace nlcs
