#include "nlcs/dynamics.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <tuple>

namespace nlcs {

namespace {

void check_kappa(double kappa) {
    if (kappa < 0.0 || kappa >= 1.0)
        throw std::invalid_argument("kappa must be in [0, 1), got " + std::to_string(kappa));
}

}  // namespace

double omega(double t, double kappa) {
    check_kappa(kappa);
    return (1.0 + kappa * std::cos(2.0 * t)) / (1.0 + kappa);
}

EpsilonValue epsilon_analytic(double t, double kappa) {
    check_kappa(kappa);
    EpsilonValue ev;
    ev.kappa_warning = kappa > 0.1;
    const double q = 0.25 * kappa;
    const double ch = std::cosh(q * t);
    const double sh = std::sinh(q * t);
    const cplx i(0.0, 1.0);
    const cplx ep(std::cos(t), std::sin(t));  // e^{+it}
    const cplx em = std::conj(ep);            // e^{-it}
    ev.eps = ch * ep + i * (sh * em);
    ev.eps_dot = (q * sh) * ep + i * (ch * ep) + i * ((q * ch) * em) + sh * em;
    return ev;
}

std::pair<cplx, cplx> bogoliubov(cplx eps, cplx eps_dot) {
    const cplx i(0.0, 1.0);
    return {0.5 * (eps - i * eps_dot), -0.5 * (eps + i * eps_dot)};
}

double FrameAtTime::wronskian_defect() const {
    // W = eps eps_dot* - eps* eps_dot is purely imaginary; W/(-2i) = Im(eps* eps_dot)
    return std::abs(std::imag(std::conj(eps) * eps_dot) - 1.0);
}

FrameAtTime frame_at(double t, double kappa) {
    const EpsilonValue ev = epsilon_analytic(t, kappa);
    FrameAtTime fr;
    fr.t = t;
    fr.kappa = kappa;
    fr.omega = omega(t, kappa);
    fr.eps = ev.eps;
    fr.eps_dot = ev.eps_dot;
    std::tie(fr.u, fr.v) = bogoliubov(ev.eps, ev.eps_dot);
    fr.kappa_warning = ev.kappa_warning;
    return fr;
}

OdeSolution epsilon_ode(const std::function<double(double)>& omega_fn, double t_end, double tol,
                        int n_points) {
    if (t_end <= 0.0) throw std::invalid_argument("epsilon_ode: t_end must be > 0");
    if (tol < 1e-12 || tol > 1e-4)
        throw std::invalid_argument("epsilon_ode: tol must be in [1e-12, 1e-4]");
    if (n_points < 2) throw std::invalid_argument("epsilon_ode: n_points must be >= 2");

    using state_type = std::array<double, 4>;  // Re eps, Im eps, Re eps', Im eps'
    auto rhs = [&omega_fn](const state_type& y, state_type& dydt, double t) {
        const double w = omega_fn(t);
        const double w2 = w * w;
        dydt[0] = y[2];
        dydt[1] = y[3];
        dydt[2] = -w2 * y[0];
        dydt[3] = -w2 * y[1];
    };

    OdeSolution sol;
    sol.tol = tol;
    sol.times.resize(n_points);
    for (int i = 0; i < n_points; ++i) sol.times[i] = t_end * i / (n_points - 1.0);
    sol.epsilon_num.reserve(n_points);
    sol.epsilon_dot_num.reserve(n_points);

    // The Wronskian of (eps, eps*) is conserved by the flow, so its drift on
    // the returned grid is integration error only.  Running the controller a
    // factor 20 below the requested budget keeps the accumulated drift safely
    // under 10 tol end to end.
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(tol / 20.0, tol / 20.0,
                                        ode::runge_kutta_fehlberg78<state_type>());
    state_type y{1.0, 0.0, 0.0, 1.0};
    try {
        ode::integrate_times(stepper, rhs, y, sol.times.begin(), sol.times.end(), 1e-3,
                             [&sol](const state_type& s, double) {
                                 sol.epsilon_num.emplace_back(s[0], s[1]);
                                 sol.epsilon_dot_num.emplace_back(s[2], s[3]);
                             });
    } catch (const std::exception& e) {
        throw StepFailure(std::string("epsilon_ode: integration failed: ") + e.what());
    }

    // a NaN in the frequency profile poisons the state without tripping the
    // step controller (every accept test compares false), so check the output
    if (sol.epsilon_num.size() != sol.times.size())
        throw StepFailure("epsilon_ode: integrator returned a short grid");
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
        const cplx e = sol.epsilon_num[i], de = sol.epsilon_dot_num[i];
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()) ||
            !std::isfinite(de.real()) || !std::isfinite(de.imag()))
            throw StepFailure("epsilon_ode: non-finite mode function at t = " +
                              std::to_string(sol.times[i]));
    }
    return sol;
}

OdeSolution epsilon_ode(double t_end, double kappa, double tol, int n_points) {
    check_kappa(kappa);
    return epsilon_ode([kappa](double t) { return omega(t, kappa); }, t_end, tol, n_points);
}

}  // namespace nlcs
