#include "nlcs/nonlinearity.hpp"

#include "nlcs/special_functions.hpp"

#include <cmath>

namespace nlcs {

double f_eval(const Nonlinearity& nl, int n) {
    if (n < 0) throw std::invalid_argument("f_eval: n must be >= 0");
    if (nl.kind == NonlinearityKind::Identity) return 1.0;
    if (nl.eta < 0.0) throw std::invalid_argument("f_eval: eta must be >= 0");
    const double x = nl.eta * nl.eta;
    const double den = laguerre(n, 0, x);
    if (std::abs(den) < kNonlinearitySingularGate) throw NonlinearitySingular(n, nl.eta);
    return laguerre(n, 1, x) / ((n + 1.0) * den);
}

CoefficientLedger coefficient_ledger(const Nonlinearity& nl, int n_max) {
    if (n_max < 0) throw std::invalid_argument("coefficient_ledger: n_max must be >= 0");
    CoefficientLedger led;
    led.n_max = n_max;
    led.log_abs_d.resize(n_max + 1);
    led.sign_d.resize(n_max + 1);
    led.log_abs_d[0] = 0.0;
    led.sign_d[0] = 1;
    for (int n = 1; n <= n_max; ++n) {
        const double fn = f_eval(nl, n);
        // d_n = d_{n-1} / (sqrt(n) f(n)); a vanishing f would already have
        // tripped the singularity gate inside f_eval
        led.log_abs_d[n] = led.log_abs_d[n - 1] - 0.5 * std::log(static_cast<double>(n)) -
                           std::log(std::abs(fn));
        led.sign_d[n] = (fn < 0.0) ? -led.sign_d[n - 1] : led.sign_d[n - 1];
    }
    return led;
}

}  // namespace nlcs
