// zitterlab command-line driver: verify | simulate | perturb | spectrum.

#include "zitterlab/report.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using zitterlab::RunConfig;

// Flag values parsed by CLI11 land in per-flag storage and are only copied
// into RunConfig after the config file has been applied.
class Overrides {
public:
    template <typename T>
    CLI::Option* add(CLI::App* app, const std::string& flag, T RunConfig::*member, const std::string& help) {
        auto value = std::make_shared<T>();
        auto* opt = app->add_option(flag, *value, help);
        setters_.push_back([opt, value, member](RunConfig& c) {
            if (opt->count() > 0) c.*member = *value;
        });
        return opt;
    }

    CLI::Option* add_flag(CLI::App* app, const std::string& flag, bool RunConfig::*member, const std::string& help) {
        auto value = std::make_shared<bool>(false);
        auto* opt = app->add_flag(flag, *value, help);
        setters_.push_back([opt, value, member](RunConfig& c) {
            if (opt->count() > 0) c.*member = *value;
        });
        return opt;
    }

    void add_checks(CLI::App* app) {
        auto value = std::make_shared<std::string>();
        auto* opt = app->add_option("--checks", *value, "comma-separated check groups (default: all)");
        setters_.push_back([opt, value](RunConfig& c) {
            if (opt->count() == 0) return;
            c.checks.clear();
            std::size_t start = 0;
            while (start <= value->size()) {
                const auto end = value->find(',', start);
                auto item = value->substr(start, end == std::string::npos ? std::string::npos : end - start);
                if (!item.empty()) c.checks.push_back(item);
                if (end == std::string::npos) break;
                start = end + 1;
            }
        });
    }

    void apply(RunConfig& config) const {
        for (const auto& s : setters_) s(config);
    }

private:
    std::vector<std::function<void(RunConfig&)>> setters_;
};

struct Command {
    std::string name;
    CLI::App* app;
    Overrides overrides;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zitterbewegung toolkit: verification checks, wave-packet simulation, g-factor table, spectra"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "zitterlab report_version " + std::to_string(zitterlab::kReportVersion));

    std::string config_path;
    std::string out_dir;
    std::string units;
    std::uint64_t seed = 0;
    auto* config_opt = app.add_option("--config", config_path, "JSON config file (flags override it)");
    auto* out_opt = app.add_option("--out", out_dir, "output directory (default $ZITTERLAB_OUT or zitterlab_out)");
    auto* units_opt = app.add_option("--units", units, "natural | si");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed for randomized checks");

    std::vector<std::unique_ptr<Command>> commands;
    auto make = [&](const std::string& name, const std::string& help) -> Command& {
        auto cmd = std::make_unique<Command>();
        cmd->name = name;
        cmd->app = app.add_subcommand(name, help);
        commands.push_back(std::move(cmd));
        return *commands.back();
    };

    auto& verify = make("verify", "run the numerical check suite and write verify_report.json");
    verify.overrides.add_checks(verify.app);
    verify.overrides.add_flag(verify.app, "--inject-alpha-fault", &RunConfig::inject_alpha_fault,
                              "perturb alpha by 1% (the g checks must then fail)");
    verify.overrides.add(verify.app, "--mass", &RunConfig::mass, "particle mass in electron masses");
    verify.overrides.add(verify.app, "--cutoff-k", &RunConfig::cutoff_k, "extra momentum cutoff k/mc for <v^2>_k");
    verify.overrides.add(verify.app, "--b-field", &RunConfig::b_field, "Landau cross-check field e hbar B/m^2c^2");
    verify.overrides.add(verify.app, "--landau-levels", &RunConfig::landau_levels, "Landau truncation N");

    auto& simulate = make("simulate", "evolve a Gaussian packet and write trajectory.csv");
    simulate.overrides.add(simulate.app, "--mass", &RunConfig::mass, "particle mass in electron masses");
    simulate.overrides.add(simulate.app, "--sigma-p", &RunConfig::sigma_p, "momentum width in mc");
    simulate.overrides.add(simulate.app, "--mixing", &RunConfig::mixing, "negative-energy fraction f");
    simulate.overrides.add(simulate.app, "--center-p", &RunConfig::center_p, "packet centre momentum p_x in mc");
    simulate.overrides.add(simulate.app, "--samples", &RunConfig::samples, "number of time samples");
    simulate.overrides.add(simulate.app, "--periods", &RunConfig::periods, "ZB periods covered");

    auto& perturb = make("perturb", "write the g-factor derivation table");
    perturb.overrides.add(perturb.app, "--b-field", &RunConfig::b_field, "field in m^2c^2/(e hbar)");
    perturb.overrides.add(perturb.app, "--pi-sq", &RunConfig::pi_sq, "pi^2 in (mc)^2");
    perturb.overrides.add_flag(perturb.app, "--inject-alpha-fault", &RunConfig::inject_alpha_fault,
                               "perturb alpha by 1%");

    auto& spectrum = make("spectrum", "diagonalize an operator and write spectrum_<selector>.json");
    spectrum.overrides.add(spectrum.app, "--selector", &RunConfig::selector,
                           "alpha_x | alpha_y | alpha_z | phidot | x2 | hamiltonian");
    spectrum.overrides.add(spectrum.app, "--mass", &RunConfig::mass, "particle mass in electron masses");
    spectrum.overrides.add(spectrum.app, "--phi", &RunConfig::phi, "azimuth for phidot");
    spectrum.overrides.add(spectrum.app, "--radius", &RunConfig::radius, "radius for phidot (0: hbar/2mc)");
    spectrum.overrides.add(spectrum.app, "--px", &RunConfig::px, "momentum p_x in mc");
    spectrum.overrides.add(spectrum.app, "--py", &RunConfig::py, "momentum p_y in mc");
    spectrum.overrides.add(spectrum.app, "--pz", &RunConfig::pz, "momentum p_z in mc");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? zitterlab::kExitOk : zitterlab::kExitUsage;
    }

    for (const auto& cmd : commands) {
        if (!cmd->app->parsed()) continue;
        try {
            RunConfig config;
            config.out_dir = zitterlab::default_out_dir();
            if (config_opt->count() > 0)
                zitterlab::apply_config_section(config, zitterlab::load_config_file(config_path), cmd->name);
            if (out_opt->count() > 0) config.out_dir = out_dir;
            if (units_opt->count() > 0) config.units = units;
            if (seed_opt->count() > 0) config.seed = seed;
            cmd->overrides.apply(config);

            zitterlab::CommandOutcome outcome;
            if (cmd->name == "verify") outcome = zitterlab::cmd_verify(config);
            else if (cmd->name == "simulate") outcome = zitterlab::cmd_simulate(config);
            else if (cmd->name == "perturb") outcome = zitterlab::cmd_perturb(config);
            else outcome = zitterlab::cmd_spectrum(config);

            if (cmd->name == "verify") {
                const auto& s = outcome.summary;
                std::cout << "checks: " << s["passed"] << "/" << s["total"] << " passed\n";
            }
            for (const auto& f : outcome.files) std::cout << "wrote " << f.string() << "\n";
            return outcome.exit_code;
        } catch (const zitterlab::UsageError& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return zitterlab::kExitUsage;
        } catch (const zitterlab::IoError& e) {
            std::cerr << "i/o error: " << e.what() << "\n";
            return zitterlab::kExitIo;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return zitterlab::kExitCheckFailure;
        }
    }
    return zitterlab::kExitUsage;
}
