#pragma once

// Command-line front end. Every command returns one of the exit codes below
// and never calls std::exit, so tests can drive it in-process.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ucblt/simulator.hpp"

namespace ucblt::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalid = 1,  ///< invalid config or parameters
    kIoFailure = 2,
    kCheckFailed = 3,  ///< verify-tail found a cell above its bound
};

/// Header plus one row per (checkpoint, policy); reals with 17 significant
/// digits; `bound` left empty for policies other than Ucb1Lt.
std::string format_csv(const std::vector<RegretCurve>& curves);

/// Writes to a sibling temp file and renames it over `path`. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

int cmd_simulate(const std::filesystem::path& config_path, unsigned workers, std::ostream& out, std::ostream& err);
int cmd_bound(const std::vector<double>& gaps, double a1, double a2, const std::vector<double>& horizons,
              std::ostream& out, std::ostream& err);
int cmd_verify_tail(const std::string& dist_json, const std::vector<std::uint64_t>& ts,
                    const std::vector<double>& epsilons, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                    std::ostream& out, std::ostream& err);
int cmd_params(const std::string& dist_json, const std::string& u0, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ucblt::cli
