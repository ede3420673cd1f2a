#include "nlcs/states.hpp"

#include "nlcs/special_functions.hpp"

#include <algorithm>
#include <cmath>

namespace nlcs {

namespace {

// Truncation policy: keep growing until the next kLookahead parity-compatible
// terms are each below kTailPolicy relative to the mass retained so far.
constexpr double kTailPolicy = 1e-14;
constexpr int kLookahead = 10;

bool parity_keeps(Parity p, int n) {
    if (p == Parity::Any) return true;
    return (n % 2 == 0) == (p == Parity::Even);
}

// Indices of the parity class in ascending order up to n_hi inclusive.
std::vector<int> class_indices(Parity p, int n_hi) {
    std::vector<int> idx;
    idx.reserve(n_hi + 1);
    for (int n = 0; n <= n_hi; ++n)
        if (parity_keeps(p, n)) idx.push_back(n);
    return idx;
}

StateCoefficients build_impl(cplx alpha, const Nonlinearity& nl, Parity parity, int n_forced) {
    StateCoefficients s;
    s.alpha = alpha;
    s.parity = parity;
    s.nl = nl;

    const double abs_a = std::abs(alpha);
    if (abs_a == 0.0) {
        // alpha -> 0 limits: the even projection and the plain state collapse
        // to vacuum; the odd projection loses its leading term and the limit
        // is the one-quantum Fock state.
        if (parity == Parity::Odd) {
            s.coeffs = {cplx(0.0, 0.0), cplx(1.0, 0.0)};
            s.n_trunc = 1;
            s.degenerate = true;
        } else {
            s.coeffs = {cplx(1.0, 0.0)};
            s.n_trunc = 0;
        }
        s.tail_bound = 0.0;
        return s;
    }

    const double log_a = std::log(abs_a);
    const double theta = std::arg(alpha);

    // Grow the ledger geometrically until the lookahead window clears the tail
    // policy (or a forced index is supplied, which must still clear it).
    int n_hi = std::max({32, static_cast<int>(4.0 * abs_a * abs_a) + 24, n_forced + 2 * kLookahead + 2});
    n_hi = std::min(n_hi, kLaguerreDegreeCap);
    int chosen = -1;
    double tail = 0.0;
    CoefficientLedger led;
    std::vector<double> logw;  // log|d_n alpha^n| for all n

    for (;;) {
        led = coefficient_ledger(nl, n_hi);
        logw.assign(n_hi + 1, 0.0);
        for (int n = 0; n <= n_hi; ++n) logw[n] = led.log_abs_d[n] + n * log_a;

        const std::vector<int> idx = class_indices(parity, n_hi);
        // scaled running mass over the class, rescaled against its running max
        double lmax = -1e300;
        double mass = 0.0;  // sum of exp(2 (logw - lmax)) over class indices so far
        chosen = -1;
        for (std::size_t c = 0; c + kLookahead < idx.size() && chosen < 0; ++c) {
            const int n = idx[c];
            if (logw[n] > lmax) {
                mass *= std::exp(2.0 * (lmax - logw[n]));
                lmax = logw[n];
            }
            mass += std::exp(2.0 * (logw[n] - lmax));
            if (n_forced >= 0 && n < n_forced && c + 1 < idx.size() && idx[c + 1] <= n_forced)
                continue;  // honor the forced index: don't stop early
            double worst = 0.0;
            for (std::size_t w = c + 1; w <= c + kLookahead; ++w)
                worst = std::max(worst, std::exp(2.0 * (logw[idx[w]] - lmax)) / mass);
            if (worst <= kTailPolicy) {
                chosen = n;
                tail = worst;
            } else if (n_forced >= 0) {
                throw TruncationNotConverged(
                    "forced truncation index " + std::to_string(n_forced) +
                    " leaves a relative tail of " + std::to_string(worst) +
                    " (policy " + std::to_string(kTailPolicy) + ")");
            }
        }
        if (chosen >= 0) break;
        if (n_hi >= kLaguerreDegreeCap)
            throw TruncationNotConverged("series did not converge below the degree cap for |alpha| = " +
                                         std::to_string(abs_a));
        n_hi = std::min(2 * n_hi, kLaguerreDegreeCap);
    }

    s.n_trunc = chosen;
    s.tail_bound = tail;
    s.coeffs.assign(chosen + 1, cplx(0.0, 0.0));
    double lmax = -1e300;
    for (int n = 0; n <= chosen; ++n)
        if (parity_keeps(parity, n)) lmax = std::max(lmax, logw[n]);
    double norm2 = 0.0;
    for (int n = 0; n <= chosen; ++n) {
        if (!parity_keeps(parity, n)) continue;
        const double mag = std::exp(logw[n] - lmax);
        s.coeffs[n] = static_cast<double>(led.sign_d[n]) * mag * std::polar(1.0, n * theta);
        norm2 += mag * mag;
    }
    const double inv_norm = 1.0 / std::sqrt(norm2);
    for (auto& c : s.coeffs) c *= inv_norm;
    return s;
}

}  // namespace

StateCoefficients build_nlcs(cplx alpha, const Nonlinearity& nl, int n_forced) {
    return build_impl(alpha, nl, Parity::Any, n_forced);
}

StateCoefficients build_even(cplx alpha, const Nonlinearity& nl, int n_forced) {
    return build_impl(alpha, nl, Parity::Even, n_forced);
}

StateCoefficients build_odd(cplx alpha, const Nonlinearity& nl, int n_forced) {
    return build_impl(alpha, nl, Parity::Odd, n_forced);
}

cplx expect_word(const StateCoefficients& s, const std::vector<Ladder>& word) {
    if (word.size() > 8) throw std::invalid_argument("expect_word: word length must be <= 8");
    const std::size_t buf = s.coeffs.size() + word.size() + 1;
    std::vector<cplx> psi(buf, cplx(0.0, 0.0));
    std::copy(s.coeffs.begin(), s.coeffs.end(), psi.begin());
    std::vector<cplx> next(buf);
    // rightmost factor acts first
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        std::fill(next.begin(), next.end(), cplx(0.0, 0.0));
        if (*it == Ladder::Lower) {
            for (std::size_t n = 0; n + 1 < buf; ++n) next[n] = std::sqrt(n + 1.0) * psi[n + 1];
        } else {
            for (std::size_t n = 1; n < buf; ++n) next[n] = std::sqrt(static_cast<double>(n)) * psi[n - 1];
        }
        psi.swap(next);
    }
    cplx acc(0.0, 0.0);
    for (std::size_t n = 0; n < s.coeffs.size(); ++n) acc += std::conj(s.coeffs[n]) * psi[n];
    return acc;
}

cplx MomentTable::at(int j, int k) const {
    if (j < 0 || k < 0 || j > jmax || k > jmax) throw std::out_of_range("MomentTable::at");
    return m[static_cast<std::size_t>(j) * (jmax + 1) + k];
}

MomentTable moment_table(const StateCoefficients& s, int jmax) {
    if (jmax < 0 || 2 * jmax > 8)
        throw std::invalid_argument("moment_table: jmax must be in [0, 4]");
    MomentTable tab;
    tab.jmax = jmax;
    tab.m.assign(static_cast<std::size_t>(jmax + 1) * (jmax + 1), cplx(0.0, 0.0));
    for (int j = 0; j <= jmax; ++j) {
        for (int k = 0; k <= jmax; ++k) {
            std::vector<Ladder> word;
            word.insert(word.end(), j, Ladder::Raise);
            word.insert(word.end(), k, Ladder::Lower);
            tab.m[static_cast<std::size_t>(j) * (jmax + 1) + k] = expect_word(s, word);
        }
    }
    return tab;
}

double eigenstate_residual(const StateCoefficients& s) {
    // components of (A f(N) - alpha)|s> below the truncation corner;
    // A f(N) |n> = sqrt(n) f(n) |n-1>
    double acc = 0.0;
    for (int n = 0; n < s.n_trunc; ++n) {
        const cplx phi =
            std::sqrt(n + 1.0) * f_eval(s.nl, n + 1) * s.coeffs[n + 1] - s.alpha * s.coeffs[n];
        acc += std::norm(phi);
    }
    return std::sqrt(acc);
}

}  // namespace nlcs
