#pragma once

#include "nlcs/nonlinearity.hpp"
#include "nlcs/states.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace nlcs {

// Command logic lives here (not in main) so the tests can drive the exact
// production code paths in-process and the binary stays a thin argv adapter.

enum class StateFamily { Even, Odd, Nlcs };
enum class OutputFormat { Csv, Json };

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
    StateFamily state = StateFamily::Even;
    cplx alpha{1.0, 0.0};
    double eta = 0.0;
    double kappa = 0.0;
    NonlinearityKind nonlinearity = NonlinearityKind::TrappedIon;
    double t_max = 10.0;
    int steps = 400;
    int truncation = -1;  // -1 = adaptive
    std::string out;      // empty = stdout
    OutputFormat format = OutputFormat::Csv;
    double tol = 5e-3;  // intelligent-times tolerance (report)
};

// "re,im" or plain "re"; throws ConfigError on anything else.
cplx parse_alpha(const std::string& text);

// Throws ConfigError on out-of-range fields (kappa outside [0, 0.1], t_max <= 0,
// steps < 2, eta < 0, format/extension mismatch on `out`).
void validate_config(const RunConfig& cfg);

// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Time sweep of all observables; CSV (header + '#' config echo and Wronskian
// summary) or JSON (schema_version tagged) to cfg.out or `fallback`.
int cmd_sweep(const RunConfig& cfg, std::ostream& fallback, std::ostream& err);

// Squeezing intervals, intelligent times, g2 range and the headline claims
// evaluated for this configuration (both parities are built for the claims).
int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Self-contained verification suite at desk scale (< 1 min), one pass/fail
// line per property.  inject_singular = true instead drives the pipeline into
// a deliberately singular nonlinearity to demonstrate the failure surfaces as
// a clean nonzero exit.
int cmd_validate(bool inject_singular, std::ostream& out, std::ostream& err);

}  // namespace nlcs
