#pragma once

// JSON experiment configuration for the `simulate` command.
//
// {
//   "arms": [{"family": "Gaussian", "mu": 0.5, "sigma2": 1.0, "u0": "inf"}, ...],
//   "policy": {"kind": "Ucb1Lt", "a1": 8.0} | "Ucb1" | [ ...one or more of these... ],
//   "horizon": 10000, "episodes": 1000, "master_seed": 7,
//   "checkpoints": [10, 100, 1000, 10000],      (optional)
//   "output_path": "regret.csv"
// }
//
// Per-family parameters: PointMass{value}, Bernoulli{p}, UniformBounded{lo, hi},
// Gaussian{mu, sigma2}, Exponential{lambda}, Poisson{lambda}, Laplace{mu, b}.
// "u0" is a positive number or the string "inf".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucblt/arms.hpp"
#include "ucblt/policies.hpp"

namespace ucblt {

struct ArmConfig {
    DistributionSpec dist;
    std::optional<MgfRadius> u0;

    friend bool operator==(const ArmConfig&, const ArmConfig&) = default;
};

struct PolicyConfig {
    std::string kind;  ///< "Ucb1", "Ucb1Lt" or "UniformRandom"
    std::optional<double> a1;
    std::optional<double> a2;
    std::optional<double> zeta;
    std::optional<MgfRadius> u0;

    friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

struct SimConfig {
    std::vector<ArmConfig> arms;
    std::vector<PolicyConfig> policies;
    std::uint64_t horizon = 0;
    std::uint64_t episodes = 0;
    std::uint64_t master_seed = 0;
    std::optional<std::vector<std::uint64_t>> checkpoints;
    std::string output_path;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// The objects a validated config resolves to.
struct Experiment {
    ArmSet arms;
    std::vector<PolicyKind> policies;
    std::vector<std::uint64_t> checkpoints;
};

/// Throws ConfigError naming the offending field.
DistributionSpec parse_distribution(const nlohmann::json& j, const std::string& field = "dist");
/// Accepts a positive number or "inf"/"infinity". Throws ConfigError.
MgfRadius parse_u0(const nlohmann::json& j, const std::string& field = "u0");

nlohmann::json to_json(const DistributionSpec& dist);
nlohmann::json to_json(const MgfRadius& u0);

/// Structural parse; throws ConfigError naming the offending field.
SimConfig parse_config(const nlohmann::json& j);
/// Throws IoError if the file cannot be read, ConfigError if it is not valid.
SimConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const SimConfig& config);

/// Checks every precondition of the modules the config feeds and resolves
/// default tail certificates and policy constants. For Ucb1Lt the common
/// certificate is the largest zeta and smallest u0 over the arms, overridable.
Experiment resolve(const SimConfig& config);

}  // namespace ucblt
