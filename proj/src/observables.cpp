#include "nlcs/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlcs {

namespace {

// --- tiny normal-ordering engine -------------------------------------------
//
// Everything quadratic/quartic in a, a^dag reduces to normally ordered words
// A^dag^j A^k with j, k <= 4.  A polynomial is a dense (j, k) coefficient grid;
// products are reduced on the fly with the boson reordering identity
//   A^k A^dag^j = sum_i C(k,i) C(j,i) i!  A^dag^{j-i} A^{k-i}.
// This is how the mechanical expansions (16 words for <a+ a+ a a>, 4 for
// <a+ a>) are generated programmatically instead of transcribed by hand.

constexpr int kDeg = 4;

struct NormalPoly {
    cplx c[(kDeg + 1) * (kDeg + 1)] = {};

    cplx& at(int j, int k) { return c[j * (kDeg + 1) + k]; }
    const cplx& at(int j, int k) const { return c[j * (kDeg + 1) + k]; }
};

constexpr double kFact[] = {1.0, 1.0, 2.0, 6.0, 24.0};

double binom_small(int n, int k) { return kFact[n] / (kFact[k] * kFact[n - k]); }

NormalPoly poly_add(const NormalPoly& p, const NormalPoly& q) {
    NormalPoly r;
    for (int i = 0; i < (kDeg + 1) * (kDeg + 1); ++i) r.c[i] = p.c[i] + q.c[i];
    return r;
}

NormalPoly poly_scale(cplx s, const NormalPoly& p) {
    NormalPoly r;
    for (int i = 0; i < (kDeg + 1) * (kDeg + 1); ++i) r.c[i] = s * p.c[i];
    return r;
}

NormalPoly poly_mul(const NormalPoly& p, const NormalPoly& q) {
    NormalPoly r;
    for (int j1 = 0; j1 <= kDeg; ++j1)
        for (int k1 = 0; k1 <= kDeg; ++k1) {
            const cplx c1 = p.at(j1, k1);
            if (c1 == cplx(0.0, 0.0)) continue;
            for (int j2 = 0; j2 <= kDeg; ++j2)
                for (int k2 = 0; k2 <= kDeg; ++k2) {
                    const cplx c2 = q.at(j2, k2);
                    if (c2 == cplx(0.0, 0.0)) continue;
                    const int imax = std::min(k1, j2);
                    for (int i = 0; i <= imax; ++i) {
                        const double w = binom_small(k1, i) * binom_small(j2, i) * kFact[i];
                        r.at(j1 + j2 - i, k1 + k2 - i) += w * c1 * c2;
                    }
                }
        }
    return r;
}

cplx poly_expect(const NormalPoly& p, const MomentTable& m) {
    cplx acc(0.0, 0.0);
    for (int j = 0; j <= kDeg; ++j)
        for (int k = 0; k <= kDeg; ++k) {
            const cplx c = p.at(j, k);
            if (c != cplx(0.0, 0.0)) acc += c * m.at(j, k);
        }
    return acc;
}

// a(t) = u* A - v A^dag and its adjoint, row-by-row from the Bogoliubov map
NormalPoly lower_mode(const FrameAtTime& fr) {
    NormalPoly p;
    p.at(0, 1) = std::conj(fr.u);
    p.at(1, 0) = -fr.v;
    return p;
}

NormalPoly raise_mode(const FrameAtTime& fr) {
    NormalPoly p;
    p.at(0, 1) = -std::conj(fr.v);
    p.at(1, 0) = fr.u;
    return p;
}

void require_quartic(const MomentTable& m) {
    if (m.jmax < 2) throw std::invalid_argument("observables: moment table must cover (2,0),(0,2),(1,1)");
}

}  // namespace

std::pair<double, double> squeezing_FG(const MomentTable& m, const FrameAtTime& fr) {
    require_quartic(m);
    const double pref = 2.0 / (fr.kappa * std::cos(2.0 * fr.t) + 4.0);
    auto combo = [&](cplx e) {
        const cplx val = e * e * m.at(2, 0) + std::conj(e) * std::conj(e) * m.at(0, 2) +
                         2.0 * std::norm(e) * m.at(1, 1) + std::norm(e);
        return pref * std::real(val);
    };
    return {combo(fr.eps), combo(fr.eps_dot)};
}

std::pair<double, double> variance_direct(const MomentTable& m, const FrameAtTime& fr) {
    if (m.jmax < 2) throw std::invalid_argument("variance_direct: moment table too small");
    const NormalPoly a = lower_mode(fr);
    const NormalPoly ad = raise_mode(fr);
    const cplx inv_sqrt2(1.0 / std::sqrt(2.0), 0.0);
    const cplx minus_i_inv_sqrt2(0.0, -1.0 / std::sqrt(2.0));
    const NormalPoly x1 = poly_scale(inv_sqrt2, poly_add(a, ad));
    const NormalPoly x2 = poly_scale(minus_i_inv_sqrt2, poly_add(a, poly_scale(-1.0, ad)));
    auto var = [&](const NormalPoly& x) {
        const cplx mean = poly_expect(x, m);
        const cplx second = poly_expect(poly_mul(x, x), m);
        return std::real(second) - std::norm(mean);
    };
    return {var(x1), var(x2)};
}

double g2_instant(const MomentTable& m, const FrameAtTime& fr) {
    if (m.jmax < 4) throw std::invalid_argument("g2_instant: moment table must cover words to length 4");
    const NormalPoly a = lower_mode(fr);
    const NormalPoly ad = raise_mode(fr);
    const double nbar = std::real(poly_expect(poly_mul(ad, a), m));
    if (!(nbar > 1e-300))
        throw VacuumDivergence("g2 undefined: <a+ a> = " + std::to_string(nbar));
    const NormalPoly quart = poly_mul(poly_mul(ad, ad), poly_mul(a, a));
    return std::real(poly_expect(quart, m)) / (nbar * nbar);
}

ObservableSample observables_at(const MomentTable& m, double kappa, double t) {
    const FrameAtTime fr = frame_at(t, kappa);
    ObservableSample s;
    s.t = t;
    std::tie(s.F, s.G) = squeezing_FG(m, fr);
    std::tie(s.varX1, s.varX2) = variance_direct(m, fr);
    s.uncertainty_product = s.F * s.G;
    s.squeezed_X1 = s.F < 0.5;
    s.squeezed_X2 = s.G < 0.5;
    s.g2 = g2_instant(m, fr);
    s.wronskian_defect = fr.wronskian_defect();

    auto bad = [](double x) { return !std::isfinite(x); };
    if (bad(s.F) || bad(s.G) || bad(s.varX1) || bad(s.varX2) || bad(s.g2))
        throw std::runtime_error("observable sample is not finite");
    if (!(s.varX1 > 0.0) || !(s.varX2 > 0.0))
        throw std::runtime_error("quadrature variance must be positive");
    if (s.g2 < 0.0) throw std::runtime_error("g2 must be nonnegative");
    return s;
}

SweepError::SweepError(std::vector<SweepFailure> f)
    : std::runtime_error("sweep failed at " + std::to_string(f.size()) + " grid point(s), first at t = " +
                         (f.empty() ? std::string("?") : std::to_string(f.front().t)) + ": " +
                         (f.empty() ? std::string("?") : f.front().what)),
      failures(std::move(f)) {}

namespace {

std::vector<ObservableSample> sweep_impl(const MomentTable& m, double kappa,
                                         const std::vector<double>& times, bool parallel) {
    const std::size_t n = times.size();
    std::vector<ObservableSample> out(n);
    std::vector<std::string> errs(n);
    std::vector<char> failed(n, 0);

    // grid points are independent; identical arithmetic on both paths keeps
    // the parallel result bitwise equal to the serial reference
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            out[i] = observables_at(m, kappa, times[i]);
        } catch (const std::exception& e) {
            failed[i] = 1;
            errs[i] = e.what();
        }
    }
    (void)parallel;

    std::vector<SweepFailure> failures;
    for (std::size_t i = 0; i < n; ++i)
        if (failed[i]) failures.push_back({i, times[i], errs[i]});
    if (!failures.empty()) throw SweepError(std::move(failures));
    return out;
}

}  // namespace

std::vector<ObservableSample> sweep_observables_serial(const MomentTable& m, double kappa,
                                                       const std::vector<double>& times) {
    return sweep_impl(m, kappa, times, false);
}

std::vector<ObservableSample> sweep_observables(const MomentTable& m, double kappa,
                                                const std::vector<double>& times) {
    return sweep_impl(m, kappa, times, true);
}

std::vector<double> intelligent_times(const MomentTable& m, double kappa,
                                      const std::vector<double>& grid, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("intelligent_times: tol must be > 0");
    require_quartic(m);
    auto dev = [&](double t) {
        const auto [F, G] = squeezing_FG(m, frame_at(t, kappa));
        return std::max(std::abs(F - 0.5), std::abs(G - 0.5)) - tol;
    };
    std::vector<double> out;
    std::vector<double> d(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        d[i] = dev(grid[i]);
        if (d[i] <= 0.0) out.push_back(grid[i]);
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if ((d[i] > 0.0) == (d[i + 1] > 0.0)) continue;
        double lo = grid[i], hi = grid[i + 1];
        double dlo = d[i];
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double dm = dev(mid);
            if ((dm > 0.0) == (dlo > 0.0)) {
                lo = mid;
                dlo = dm;
            } else {
                hi = mid;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace nlcs
