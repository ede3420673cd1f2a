#include "nlcs/cli.hpp"

#include "nlcs/dynamics.hpp"
#include "nlcs/fock_oracle.hpp"
#include "nlcs/observables.hpp"
#include "nlcs/special_functions.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace nlcs {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(cplx z) { return fmt(z.real()) + "," + fmt(z.imag()); }

const char* family_name(StateFamily f) {
    switch (f) {
        case StateFamily::Even: return "even";
        case StateFamily::Odd: return "odd";
        default: return "nlcs";
    }
}

const char* kind_name(NonlinearityKind k) {
    return k == NonlinearityKind::Identity ? "identity" : "trapped-ion";
}

std::vector<double> time_grid(const RunConfig& cfg) {
    std::vector<double> t(cfg.steps);
    for (int i = 0; i < cfg.steps; ++i) t[i] = cfg.t_max * i / (cfg.steps - 1.0);
    return t;
}

StateCoefficients build_family(StateFamily family, cplx alpha, const Nonlinearity& nl,
                               int truncation) {
    switch (family) {
        case StateFamily::Even: return build_even(alpha, nl, truncation);
        case StateFamily::Odd: return build_odd(alpha, nl, truncation);
        default: return build_nlcs(alpha, nl, truncation);
    }
}

std::string config_echo(const RunConfig& cfg) {
    std::ostringstream os;
    os << "state=" << family_name(cfg.state) << " alpha=" << fmt(cfg.alpha) << " eta=" << fmt(cfg.eta)
       << " kappa=" << fmt(cfg.kappa) << " nonlinearity=" << kind_name(cfg.nonlinearity)
       << " tmax=" << fmt(cfg.t_max) << " steps=" << cfg.steps << " truncation="
       << (cfg.truncation < 0 ? std::string("auto") : std::to_string(cfg.truncation))
       << " format=" << (cfg.format == OutputFormat::Csv ? "csv" : "json");
    return os.str();
}

void write_csv(std::ostream& os, const RunConfig& cfg, const StateCoefficients& st,
               const std::vector<ObservableSample>& samples) {
    double wmax = 0.0;
    for (const auto& s : samples) wmax = std::max(wmax, s.wronskian_defect);
    os << "# nlcs sweep schema=1\n";
    os << "# " << config_echo(cfg) << "\n";
    os << "# n_trunc=" << st.n_trunc << " tail_bound=" << fmt(st.tail_bound);
    if (st.degenerate) os << " degenerate: odd state at alpha=0 resolves to Fock |1>";
    os << "\n";
    os << "# wronskian_defect_max=" << fmt(wmax) << "\n";
    os << "t,F,G,varX1,varX2,product,squeezed_X1,squeezed_X2,g2,wronskian_defect\n";
    for (const auto& s : samples) {
        os << fmt(s.t) << ',' << fmt(s.F) << ',' << fmt(s.G) << ',' << fmt(s.varX1) << ','
           << fmt(s.varX2) << ',' << fmt(s.uncertainty_product) << ',' << (s.squeezed_X1 ? 1 : 0)
           << ',' << (s.squeezed_X2 ? 1 : 0) << ',' << fmt(s.g2) << ',' << fmt(s.wronskian_defect)
           << '\n';
    }
}

void write_json(std::ostream& os, const RunConfig& cfg, const StateCoefficients& st,
                const std::vector<ObservableSample>& samples) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["config"] = {{"state", family_name(cfg.state)},
                   {"alpha_re", cfg.alpha.real()},
                   {"alpha_im", cfg.alpha.imag()},
                   {"eta", cfg.eta},
                   {"kappa", cfg.kappa},
                   {"nonlinearity", kind_name(cfg.nonlinearity)},
                   {"tmax", cfg.t_max},
                   {"steps", cfg.steps},
                   {"truncation", cfg.truncation < 0 ? "auto" : std::to_string(cfg.truncation)}};
    j["n_trunc"] = st.n_trunc;
    j["tail_bound"] = st.tail_bound;
    j["degenerate"] = st.degenerate;
    double wmax = 0.0;
    for (const auto& s : samples) wmax = std::max(wmax, s.wronskian_defect);
    j["wronskian_defect_max"] = wmax;
    auto arr = nlohmann::json::array();
    for (const auto& s : samples) {
        arr.push_back({{"t", s.t},
                       {"F", s.F},
                       {"G", s.G},
                       {"varX1", s.varX1},
                       {"varX2", s.varX2},
                       {"product", s.uncertainty_product},
                       {"squeezed_X1", s.squeezed_X1},
                       {"squeezed_X2", s.squeezed_X2},
                       {"g2", s.g2},
                       {"wronskian_defect", s.wronskian_defect}});
    }
    j["samples"] = std::move(arr);
    os << j.dump(2) << "\n";
}

bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

// Locate a Lamb-Dicke parameter whose squared value sits on a zero of the
// degree-n denominator Laguerre polynomial (to the last bit), used to exercise
// the singularity guard.
double singular_eta(int n) {
    double lo = 0.01, hi = lo;
    double flo = laguerre(n, 0, lo);
    for (;;) {
        hi = lo + 0.005;
        const double fhi = laguerre(n, 0, hi);
        if ((flo > 0.0) != (fhi > 0.0)) break;
        lo = hi;
        flo = fhi;
        if (lo > 10.0) throw std::runtime_error("no sign change found for L_n");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = laguerre(n, 0, mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double x = std::abs(laguerre(n, 0, lo)) < std::abs(laguerre(n, 0, hi)) ? lo : hi;
    return std::sqrt(x);
}

int report_numerical_failure(std::ostream& err, const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    if (const auto* se = dynamic_cast<const SweepError*>(&e)) {
        std::size_t shown = 0;
        for (const auto& f : se->failures) {
            err << "  point " << f.index << " (t = " << fmt(f.t) << "): " << f.what << "\n";
            if (++shown == 5) {
                if (se->failures.size() > shown)
                    err << "  ... " << (se->failures.size() - shown) << " more\n";
                break;
            }
        }
    }
    return kExitNumerical;
}

}  // namespace

cplx parse_alpha(const std::string& text) {
    const auto bad = [&] { return ConfigError("alpha must be 're' or 're,im', got '" + text + "'"); };
    if (text.empty()) throw bad();
    std::size_t pos = 0;
    double re = 0.0, im = 0.0;
    try {
        re = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw bad();
    }
    if (pos < text.size()) {
        if (text[pos] != ',') throw bad();
        std::size_t pos2 = 0;
        const std::string rest = text.substr(pos + 1);
        try {
            im = std::stod(rest, &pos2);
        } catch (const std::exception&) {
            throw bad();
        }
        if (pos2 != rest.size()) throw bad();
    }
    return {re, im};
}

void validate_config(const RunConfig& cfg) {
    if (cfg.kappa < 0.0 || cfg.kappa > 0.1)
        throw ConfigError("kappa must be in [0, 0.1], got " + fmt(cfg.kappa));
    if (!(cfg.t_max > 0.0)) throw ConfigError("tmax must be > 0");
    if (cfg.steps < 2) throw ConfigError("steps must be >= 2");
    if (cfg.eta < 0.0) throw ConfigError("eta must be >= 0");
    if (cfg.truncation < -1) throw ConfigError("truncation must be 'auto' or a nonnegative integer");
    if (!(cfg.tol > 0.0)) throw ConfigError("tol must be > 0");
    if (!cfg.out.empty()) {
        if (cfg.format == OutputFormat::Csv && has_suffix(cfg.out, ".json"))
            throw ConfigError("output path ends in .json but format is csv");
        if (cfg.format == OutputFormat::Json && has_suffix(cfg.out, ".csv"))
            throw ConfigError("output path ends in .csv but format is json");
    }
}

int cmd_sweep(const RunConfig& cfg, std::ostream& fallback, std::ostream& err) {
    try {
        validate_config(cfg);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        const Nonlinearity nl{cfg.nonlinearity, cfg.eta};
        const StateCoefficients st = build_family(cfg.state, cfg.alpha, nl, cfg.truncation);
        const MomentTable table = moment_table(st, 4);
        const std::vector<ObservableSample> samples =
            sweep_observables(table, cfg.kappa, time_grid(cfg));

        std::ofstream file;
        if (!cfg.out.empty()) {
            file.open(cfg.out, std::ios::binary);
            if (!file) {
                err << "configuration error: cannot open output path '" << cfg.out << "'\n";
                return kExitConfig;
            }
        }
        std::ostream& os = cfg.out.empty() ? fallback : file;
        if (cfg.format == OutputFormat::Csv)
            write_csv(os, cfg, st, samples);
        else
            write_json(os, cfg, st, samples);
        return kExitOk;
    } catch (const std::exception& e) {
        return report_numerical_failure(err, e);
    }
}

namespace {

struct ParitySignals {
    std::vector<double> t, F, G;
    std::vector<std::optional<double>> g2;  // empty where the ratio diverges
    bool degenerate = false;
};

ParitySignals scan_signals(const StateCoefficients& st, double kappa,
                           const std::vector<double>& times) {
    ParitySignals sig;
    sig.degenerate = st.degenerate;
    const MomentTable table = moment_table(st, 4);
    for (double t : times) {
        const FrameAtTime frame = frame_at(t, kappa);
        const auto [F, G] = squeezing_FG(table, frame);
        sig.t.push_back(t);
        sig.F.push_back(F);
        sig.G.push_back(G);
        try {
            sig.g2.push_back(g2_instant(table, frame));
        } catch (const VacuumDivergence&) {
            sig.g2.push_back(std::nullopt);
        }
    }
    return sig;
}

// reported squeezing threshold: the vacuum itself lands an ulp below 1/2 at
// some grid times, so dips smaller than this band are rounding noise, not
// physics.  The raw strict comparison stays in ObservableSample.squeezed_*.
constexpr double kSqueezeBand = 1e-9;

void print_intervals(std::ostream& out, const char* label, const std::vector<double>& t,
                     const std::vector<double>& val) {
    out << label;
    bool any = false;
    std::size_t i = 0;
    while (i < val.size()) {
        if (val[i] < 0.5 - kSqueezeBand) {
            std::size_t j = i;
            while (j + 1 < val.size() && val[j + 1] < 0.5 - kSqueezeBand) ++j;
            out << (any ? ", " : " ") << "[" << fmt(t[i]) << ", " << fmt(t[j]) << "]";
            any = true;
            i = j + 1;
        } else {
            ++i;
        }
    }
    out << (any ? "\n" : " none\n");
}

}  // namespace

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate_config(cfg);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        const Nonlinearity nl{cfg.nonlinearity, cfg.eta};
        const std::vector<double> times = time_grid(cfg);
        const StateCoefficients st = build_family(cfg.state, cfg.alpha, nl, cfg.truncation);
        const ParitySignals sig = scan_signals(st, cfg.kappa, times);

        out << "report: " << config_echo(cfg) << "\n";
        if (sig.degenerate) out << "note: odd state at alpha=0 resolves to Fock |1>\n";
        out << "grid: " << cfg.steps << " points on [0, " << fmt(cfg.t_max) << "]\n";
        print_intervals(out, "X1 squeezing intervals (F < 1/2):", sig.t, sig.F);
        print_intervals(out, "X2 squeezing intervals (G < 1/2):", sig.t, sig.G);

        const MomentTable table = moment_table(st, 4);
        const std::vector<double> it = intelligent_times(table, cfg.kappa, times, cfg.tol);
        std::size_t on_grid = 0;
        for (double t : times) {
            const auto [F, G] = squeezing_FG(table, frame_at(t, cfg.kappa));
            if (std::max(std::abs(F - 0.5), std::abs(G - 0.5)) <= cfg.tol) ++on_grid;
        }
        out << "intelligent times (tol " << fmt(cfg.tol) << "): ";
        if (on_grid == times.size()) {
            out << "intelligent at all sampled times\n";
        } else if (it.empty()) {
            out << "none\n";
        } else {
            out << it.size() << " found:";
            for (std::size_t i = 0; i < it.size() && i < 8; ++i) out << " " << fmt(it[i]);
            if (it.size() > 8) out << " ...";
            out << "\n";
        }

        bool g2_defined = true;
        double g2min = 0.0, g2max = 0.0;
        bool first = true;
        for (const auto& g : sig.g2) {
            if (!g) {
                g2_defined = false;
                continue;
            }
            g2min = first ? *g : std::min(g2min, *g);
            g2max = first ? *g : std::max(g2max, *g);
            first = false;
        }
        if (first)
            out << "g2 range: undefined (no quanta in the detection mode)\n";
        else
            out << "g2 range: [" << fmt(g2min) << ", " << fmt(g2max) << "]"
                << (g2_defined ? "" : " (undefined at some points)") << "\n";

        // headline claims, evaluated on both parity projections of this config
        const ParitySignals even_sig = scan_signals(build_even(cfg.alpha, nl, -1), cfg.kappa, times);
        const ParitySignals odd_sig = scan_signals(build_odd(cfg.alpha, nl, -1), cfg.kappa, times);
        bool even_squeezes = false, odd_squeezes = false;
        for (std::size_t i = 0; i < times.size(); ++i) {
            even_squeezes |= even_sig.F[i] < 0.5 - kSqueezeBand || even_sig.G[i] < 0.5 - kSqueezeBand;
            odd_squeezes |= odd_sig.F[i] < 0.5 - kSqueezeBand || odd_sig.G[i] < 0.5 - kSqueezeBand;
        }
        bool even_never_antibunches = true;
        bool even_g2_defined = true;
        for (const auto& g : even_sig.g2) {
            if (!g)
                even_g2_defined = false;
            else
                even_never_antibunches &= *g >= 1.0;
        }
        const bool odd_antibunches = odd_sig.g2.front() && *odd_sig.g2.front() < 1.0;

        auto verdict = [&out](const char* name, bool holds) {
            out << "claim " << name << ": " << (holds ? "holds" : "fails") << "\n";
        };
        verdict("even-state squeezing (F or G < 1/2 somewhere)", even_squeezes);
        verdict("odd-state antibunching (g2 < 1 at the start)", odd_antibunches);
        verdict("odd states never squeeze", !odd_squeezes);
        if (even_g2_defined)
            verdict("even states never antibunch (g2 >= 1 throughout)", even_never_antibunches);
        else
            out << "claim even states never antibunch (g2 >= 1 throughout): undefined (g2 divergent)\n";
        return kExitOk;
    } catch (const std::exception& e) {
        return report_numerical_failure(err, e);
    }
}

// ---------------------------------------------------------------------------
// validate: the oracle-equivalence and invariant suite at desk scale

namespace {

using PropertyFn = std::function<bool(std::string&)>;

// independent Laguerre oracle: direct evaluation of the finite sum
//   L_n^m(x) = sum_i (-1)^i C(n+m, n-i) x^i / i!
double laguerre_sum(int n, int m, double x) {
    auto binom = [](int N, int K) {
        double b = 1.0;
        for (int j = 1; j <= K; ++j) b = b * (N - K + j) / j;
        return b;
    };
    double term = 1.0;
    double acc = binom(n + m, n);
    for (int i = 1; i <= n; ++i) {
        term *= -x / i;
        acc += binom(n + m, n - i) * term;
    }
    return acc;
}

std::vector<std::vector<Ladder>> words_up_to(int len) {
    std::vector<std::vector<Ladder>> out{{}};
    std::vector<std::vector<Ladder>> level{{}};
    for (int l = 1; l <= len; ++l) {
        std::vector<std::vector<Ladder>> next;
        for (const auto& w : level)
            for (Ladder x : {Ladder::Lower, Ladder::Raise}) {
                auto v = w;
                v.push_back(x);
                next.push_back(v);
            }
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

bool prop_laguerre_oracle(std::string& detail) {
    double worst = 0.0;
    for (int n = 0; n <= 30; ++n)
        for (int m = 0; m <= 4; ++m)
            for (double x : {0.01, 0.25, 1.0}) {
                const double a = laguerre(n, m, x);
                const double b = laguerre_sum(n, m, x);
                worst = std::max(worst, std::abs(a - b) / std::max(1e-30, std::abs(b)));
            }
    detail = "max rel dev " + fmt(worst);
    return worst <= 1e-9;
}

bool prop_identity_ledger(std::string& detail) {
    const CoefficientLedger led = coefficient_ledger({NonlinearityKind::Identity, 0.0}, 170);
    double worst = 0.0;
    for (int n = 0; n <= 170; ++n) {
        const double a = std::exp(led.log_abs_d[n]);
        const double b = std::exp(-0.5 * log_factorial(n));
        worst = std::max(worst, std::abs(a - b) / b);
    }
    detail = "max rel dev " + fmt(worst);
    return worst <= 1e-12;
}

bool prop_f_small_eta(std::string& detail) {
    const Nonlinearity nl{NonlinearityKind::TrappedIon, 0.01};
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n)
        worst = std::max(worst, std::abs(f_eval(nl, n) - (1.0 + 0.5 * n * nl.eta * nl.eta)));
    detail = "max dev from 1 + n eta^2/2: " + fmt(worst);
    return worst <= 5e-6;
}

bool prop_analytic_wronskian(std::string& detail) {
    double worst_err = 0.0, worst_band = 0.0;
    for (double kappa : {0.01, 0.05}) {
        for (int i = 0; i <= 1000; ++i) {
            const double t = 20.0 * i / 1000.0;
            const FrameAtTime fr = frame_at(t, kappa);
            const double defect = fr.wronskian_defect();
            worst_err = std::max(
                worst_err, std::abs(defect - 0.25 * kappa * std::abs(std::cos(2.0 * t))));
            worst_band = std::max(worst_band, defect / (5.0 * kappa));
        }
    }
    detail = "defect matches (kappa/4)|cos 2t| to " + fmt(worst_err);
    return worst_err <= 1e-12 && worst_band <= 1.0;
}

bool prop_ode_wronskian(std::string& detail) {
    double worst = 0.0;
    for (double kappa : {0.0, 0.01, 0.05})
        for (double tol : {1e-8, 1e-10}) {
            const OdeSolution sol = epsilon_ode(10.0, kappa, tol, 101);
            for (std::size_t i = 0; i < sol.times.size(); ++i) {
                const double w =
                    std::imag(std::conj(sol.epsilon_num[i]) * sol.epsilon_dot_num[i]);
                worst = std::max(worst, std::abs(w - 1.0) / (10.0 * tol));
            }
        }
    detail = "max drift / (10 tol) = " + fmt(worst);
    return worst <= 1.0;
}

bool prop_ode_vs_analytic(std::string& detail) {
    const OdeSolution sol = epsilon_ode(1.0, 0.01, 1e-10, 11);
    const EpsilonValue ev = epsilon_analytic(1.0, 0.01);
    const double dev = std::abs(sol.epsilon_num.back() - ev.eps);
    detail = "|eps_ode - eps_analytic| at t=1: " + fmt(dev);
    return dev <= 5e-4;
}

bool prop_series_vs_matrix(std::string& detail) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mag(0.2, 1.5), phase(0.0, 6.283185307179586),
        eta_d(0.0, 0.3);
    const auto words = words_up_to(4);
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        const cplx alpha = std::polar(mag(rng), phase(rng));
        const Nonlinearity nl{NonlinearityKind::TrappedIon, eta_d(rng)};
        const Parity p = draw % 3 == 0 ? Parity::Any : (draw % 3 == 1 ? Parity::Even : Parity::Odd);
        const StateCoefficients st = p == Parity::Any   ? build_nlcs(alpha, nl)
                                     : p == Parity::Even ? build_even(alpha, nl)
                                                         : build_odd(alpha, nl);
        const int dim = st.n_trunc + 6;
        for (const auto& w : words) {
            const cplx a = expect_word(st, w);
            const cplx b = oracle_expect(st, w, dim);
            const double scale = std::max(1e-2, std::abs(b));
            worst = std::max(worst, std::abs(a - b) / scale);
        }
    }
    detail = "max rel dev " + fmt(worst);
    return worst <= 1e-10;
}

bool prop_eigenstate(std::string& detail) {
    double worst = 0.0;
    for (double a : {0.5, 1.0, 1.5})
        for (double eta : {0.0, 0.1, 0.3}) {
            const Nonlinearity nl{eta == 0.0 ? NonlinearityKind::Identity : NonlinearityKind::TrappedIon,
                                  eta};
            const StateCoefficients st = build_nlcs(cplx(a, 0.0), nl);
            worst = std::max(worst, eigenstate_residual(st));
            worst = std::max(worst, oracle_B_eigencheck(st, st.n_trunc + 8));
        }
    detail = "max residual " + fmt(worst);
    return worst <= 1e-10;
}

bool prop_cat_closed_forms(std::string& detail) {
    const Nonlinearity id{NonlinearityKind::Identity, 0.0};
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0}) {
        const double a2 = a * a;
        const double th = std::tanh(a2);
        const StateCoefficients even = build_even(cplx(a, 0.0), id);
        const StateCoefficients odd = build_odd(cplx(a, 0.0), id);
        const MomentTable me = moment_table(even, 4), mo = moment_table(odd, 4);
        const FrameAtTime fr = frame_at(0.0, 0.0);
        worst = std::max(worst, std::abs(std::real(me.at(1, 1)) - a2 * th));
        worst = std::max(worst, std::abs(std::real(mo.at(1, 1)) - a2 / th));
        worst = std::max(worst, std::abs(g2_instant(me, fr) - 1.0 / (th * th)));
        worst = std::max(worst, std::abs(g2_instant(mo, fr) - th * th));
    }
    detail = "max dev from tanh/coth forms " + fmt(worst);
    return worst <= 1e-8;
}

bool prop_two_path(std::string& detail) {
    const Nonlinearity nl{NonlinearityKind::TrappedIon, 0.1};
    const MomentTable table = moment_table(build_even(cplx(1.0, 0.0), nl), 4);
    double worst0 = 0.0, worstk = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double t = 20.0 * i / 200.0;
        {
            const FrameAtTime fr = frame_at(t, 0.0);
            const auto [F, G] = squeezing_FG(table, fr);
            const auto [v1, v2] = variance_direct(table, fr);
            worst0 = std::max({worst0, std::abs(F - v1), std::abs(G - v2)});
        }
        for (double kappa : {0.01, 0.05}) {
            const FrameAtTime fr = frame_at(t, kappa);
            const auto [F, G] = squeezing_FG(table, fr);
            const auto [v1, v2] = variance_direct(table, fr);
            (void)G;
            (void)v2;
            worstk = std::max(worstk, std::abs(v1 - F) / (2.0 * kappa));
        }
    }
    detail = "kappa=0 gap " + fmt(worst0) + ", driven gap / (2 kappa) = " + fmt(worstk);
    return worst0 <= 1e-12 && worstk <= 1.0;
}

bool prop_uncertainty_floor(std::string& detail) {
    const Nonlinearity nl{NonlinearityKind::TrappedIon, 0.1};
    double worst = 1e9;
    for (double kappa : {0.0, 0.01})
        for (double a : {0.5, 1.0})
            for (bool even : {true, false}) {
                const StateCoefficients st =
                    even ? build_even(cplx(a, 0.0), nl) : build_odd(cplx(a, 0.0), nl);
                const MomentTable table = moment_table(st, 4);
                for (int i = 0; i <= 200; ++i) {
                    const double t = 20.0 * i / 200.0;
                    const auto [F, G] = squeezing_FG(table, frame_at(t, kappa));
                    worst = std::min(worst, F * G - (0.25 - 10.0 * kappa));
                }
            }
    detail = "min margin above floor " + fmt(worst);
    return worst >= -1e-12;
}

bool prop_vacuum_guard(std::string& detail) {
    const MomentTable table = moment_table(build_even(cplx(0.0, 0.0), {NonlinearityKind::Identity, 0.0}), 4);
    try {
        (void)g2_instant(table, frame_at(0.0, 0.0));
    } catch (const VacuumDivergence&) {
        detail = "VacuumDivergence raised as required";
        return true;
    }
    detail = "no divergence raised for the vacuum";
    return false;
}

bool prop_singular_gate(std::string& detail) {
    const double eta = singular_eta(20);
    try {
        (void)f_eval({NonlinearityKind::TrappedIon, eta}, 20);
    } catch (const NonlinearitySingular& e) {
        detail = "gate fired at n = " + std::to_string(e.n) + ", eta = " + fmt(eta);
        return e.n == 20;
    }
    detail = "gate did not fire at eta = " + fmt(eta);
    return false;
}

bool prop_truncated_commutator(std::string& detail) {
    const int dim = 16;
    const TruncatedOperator a = lowering_op(dim);
    const TruncatedOperator c = op_sub(op_mul(a, op_dagger(a)), op_mul(op_dagger(a), a));
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double expect = i != j ? 0.0 : (i == dim - 1 ? -(dim - 1.0) : 1.0);
            worst = std::max(worst, std::abs(c.at(i, j) - expect));
        }
    detail = "max dev from truncated identity " + fmt(worst);
    return worst <= 1e-12;
}

}  // namespace

int cmd_validate(bool inject_singular, std::ostream& out, std::ostream& err) {
    if (inject_singular) {
        const double eta = singular_eta(20);
        err << "injecting eta = " << fmt(eta) << " (squared value on a zero of the order-20 "
            << "denominator polynomial)\n";
        try {
            (void)build_nlcs(cplx(1.0, 0.0), {NonlinearityKind::TrappedIon, eta});
            err << "error: singular nonlinearity was not detected\n";
            return kExitNumerical;
        } catch (const NonlinearitySingular& e) {
            err << "numerical failure surfaced cleanly: " << e.what() << "\n";
            return kExitNumerical;
        }
    }

    const std::pair<const char*, PropertyFn> props[] = {
        {"laguerre matches the explicit finite-sum oracle", prop_laguerre_oracle},
        {"identity ledger matches 1/sqrt(n!)", prop_identity_ledger},
        {"trapped-ion f has the small-eta expansion", prop_f_small_eta},
        {"analytic mode function Wronskian band", prop_analytic_wronskian},
        {"ODE Wronskian conserved to 10 tol", prop_ode_wronskian},
        {"ODE matches the closed form at weak drive", prop_ode_vs_analytic},
        {"series and matrix moments agree (20 random draws)", prop_series_vs_matrix},
        {"deformed coherent states are ladder eigenstates", prop_eigenstate},
        {"undeformed cat-state closed forms", prop_cat_closed_forms},
        {"variance two-path consistency", prop_two_path},
        {"uncertainty product floor", prop_uncertainty_floor},
        {"vacuum g2 guard fires", prop_vacuum_guard},
        {"singularity gate fires on a denominator zero", prop_singular_gate},
        {"truncated ladder commutator", prop_truncated_commutator},
    };

    const auto t0 = std::chrono::steady_clock::now();
    int failed = 0;
    for (const auto& [name, fn] : props) {
        std::string detail;
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (ok) {
            out << "pass: " << name << " (" << detail << ")\n";
        } else {
            out << "FAIL: " << name << " (" << detail << ")\n";
            ++failed;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << (failed == 0 ? "validate: all properties pass" : "validate: FAILURES present") << " ("
        << fmt(secs) << " s)\n";
    if (failed != 0) err << failed << " validation propert" << (failed == 1 ? "y" : "ies")
                         << " failed\n";
    return failed == 0 ? kExitOk : kExitNumerical;
}

}  // namespace nlcs
