#pragma once

#include <bijumble/inherit.hpp>
#include <bijumble/report.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bijumble
{
    /// Settings shared by every subcommand.
    struct RunConfig
    {
        std::uint64_t seed = 1;
        double tolerance = 1e-9;            ///< relative; the absolute floor stays 1e-12
        double spectral_tolerance = 1e-9;
        unsigned workers = 1;
        int exact_limit = exact_side_limit;
        std::filesystem::path out = "bijumble-runs";
        Mode mode = Mode::strict;

        /// Throws ParameterError on a nonpositive tolerance or limit.
        auto validate() const -> void;
    };

    using KeyValues = std::map<std::string, std::string>;

    /// Reads `key = value` lines; '#' starts a comment. Throws ParseError
    /// on a line without '=' or a repeated key.
    auto parse_key_values(std::string_view text) -> KeyValues;
    auto read_key_values_file(const std::string & path) -> KeyValues;

    /// Applies the recognised run keys (seed, tolerance,
    /// spectral_tolerance, workers, exact_limit, out, mode) on top of
    /// `base`. Other keys are left for the subcommands.
    auto apply_run_config(const KeyValues & values, RunConfig base = {}) -> RunConfig;

    /// Experiment plan keys: side, nx, ny, nz (or n for all three), p, d,
    /// eps_prime, seed, repetitions, mode, ceiling, method, trials, refine,
    /// base_eps, certificates, plant_fraction, plant_boost.
    auto plan_from_config(const KeyValues & values, ExperimentPlan base = {}) -> ExperimentPlan;

    enum ExitCode : int
    {
        exit_pass = 0,
        exit_fail = 1,
        exit_usage = 2,
        exit_capacity = 3,
        exit_io = 4,
    };

    /// Runs one subcommand. Output goes to `out`, diagnostics to `err`.
    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
    auto run_cli(int argc, char ** argv) -> int;
}
