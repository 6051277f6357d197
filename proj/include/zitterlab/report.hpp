#pragma once

// Command implementations behind the zitterlab CLI: verification report,
// wave-packet simulation, g-factor derivation table and operator spectra.

#include "zitterlab/check.hpp"
#include "zitterlab/constants.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace zitterlab {

inline constexpr int kReportVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitCheckFailure = 1, kExitUsage = 2, kExitIo = 3 };

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All check groups run by `verify`, in report order.
const std::vector<std::string>& check_groups();

struct RunConfig {
    std::string units = "natural";
    std::uint64_t seed = 20240607;
    std::filesystem::path out_dir = "zitterlab_out";

    // Natural units throughout: hbar = c = 1, energies in units of the
    // electron rest energy; `mass` rescales the particle mass.
    double mass = 1.0;
    double cutoff_k = 100.0;
    double b_field = 0.01;
    std::size_t landau_levels = 64;
    double pi_sq = 0.0;

    double sigma_p = 0.01;
    double mixing = 0.5;  // negative-energy fraction
    double center_p = 0.0;
    std::size_t samples = 512;
    double periods = 8.0;

    std::vector<std::string> checks = check_groups();
    bool inject_alpha_fault = false;

    std::string selector = "alpha_z";
    double phi = 0.0;
    double radius = 0.0;  // 0 selects hbar / 2mc
    double px = 0.0, py = 0.0, pz = 0.0;

    /// Throws UsageError on out-of-range values.
    void validate(const std::string& command) const;
    nlohmann::json to_json(const std::string& command) const;
};

/// Output directory default: $ZITTERLAB_OUT if set, else "zitterlab_out".
std::filesystem::path default_out_dir();

/// Applies the object for `command` from a config document (keys mirror the
/// CLI flag names with '-' replaced by '_').
void apply_config_section(RunConfig& config, const nlohmann::json& document, const std::string& command);
nlohmann::json load_config_file(const std::filesystem::path& path);

/// Runs the selected check groups; results are sorted by name.
std::vector<CheckResult> run_checks(const RunConfig& config);

/// Throws std::logic_error when the document violates the report schema.
void validate_report(const nlohmann::json& report);

struct CommandOutcome {
    int exit_code = kExitOk;
    std::vector<std::filesystem::path> files;
    nlohmann::json summary;
};

CommandOutcome cmd_verify(const RunConfig& config);
CommandOutcome cmd_simulate(const RunConfig& config);
CommandOutcome cmd_perturb(const RunConfig& config);
CommandOutcome cmd_spectrum(const RunConfig& config);

/// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_double(double value);

}  // namespace zitterlab
