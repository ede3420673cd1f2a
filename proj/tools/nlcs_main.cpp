#include "nlcs/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"even/odd nonlinear coherent states of a parametrically driven oscillator"};
    app.set_config("--config", "", "key=value configuration file (flags override file values)");
    app.fallthrough(true);
    app.require_subcommand(1);

    std::string state_text = "even";
    std::string alpha_text = "1";
    std::string nl_text = "trapped-ion";
    std::string format_text = "csv";
    std::string trunc_text = "auto";
    nlcs::RunConfig cfg;

    app.add_option("--state", state_text, "state family")
        ->check(CLI::IsMember({"even", "odd", "nlcs"}));
    app.add_option("--alpha", alpha_text, "coherent amplitude, 're' or 're,im'");
    app.add_option("--eta", cfg.eta, "Lamb-Dicke parameter (trapped-ion nonlinearity)");
    app.add_option("--kappa", cfg.kappa, "pump modulation depth, in [0, 0.1]");
    app.add_option("--nonlinearity", nl_text, "deformation profile")
        ->check(CLI::IsMember({"trapped-ion", "identity"}));
    app.add_option("--tmax", cfg.t_max, "end of the time grid (> 0)");
    app.add_option("--steps", cfg.steps, "number of grid points (>= 2)");
    app.add_option("--truncation", trunc_text, "'auto' or a fixed Fock cutoff index");
    app.add_option("--out", cfg.out, "output path (stdout when omitted)");
    app.add_option("--format", format_text, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol", cfg.tol, "intelligent-times tolerance (report)");

    CLI::App* sweep = app.add_subcommand("sweep", "time sweep of the observable set");
    CLI::App* report = app.add_subcommand("report", "squeezing/antibunching summary");
    CLI::App* validate = app.add_subcommand("validate", "self-check suite");
    bool inject = false;
    validate->add_flag("--inject-singular", inject,
                       "drive the pipeline into a singular nonlinearity on purpose");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nlcs::kExitConfig;
    }

    try {
        cfg.alpha = nlcs::parse_alpha(alpha_text);
        cfg.state = state_text == "even"  ? nlcs::StateFamily::Even
                    : state_text == "odd" ? nlcs::StateFamily::Odd
                                          : nlcs::StateFamily::Nlcs;
        cfg.nonlinearity = nl_text == "identity" ? nlcs::NonlinearityKind::Identity
                                                 : nlcs::NonlinearityKind::TrappedIon;
        cfg.format = format_text == "json" ? nlcs::OutputFormat::Json : nlcs::OutputFormat::Csv;
        if (trunc_text == "auto") {
            cfg.truncation = -1;
        } else {
            std::size_t pos = 0;
            cfg.truncation = std::stoi(trunc_text, &pos);
            if (pos != trunc_text.size() || cfg.truncation < 0)
                throw nlcs::ConfigError("truncation must be 'auto' or a nonnegative integer");
        }
    } catch (const nlcs::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return nlcs::kExitConfig;
    } catch (const std::exception&) {
        std::cerr << "configuration error: truncation must be 'auto' or a nonnegative integer\n";
        return nlcs::kExitConfig;
    }

    if (sweep->parsed()) return nlcs::cmd_sweep(cfg, std::cout, std::cerr);
    if (report->parsed()) return nlcs::cmd_report(cfg, std::cout, std::cerr);
    if (validate->parsed()) return nlcs::cmd_validate(inject, std::cout, std::cerr);
    std::cerr << "configuration error: no subcommand\n";
    return nlcs::kExitConfig;
}
