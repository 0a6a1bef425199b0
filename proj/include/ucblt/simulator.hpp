#pragma once

// Single bandit episodes and seeded Monte Carlo batches of them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ucblt/arms.hpp"
#include "ucblt/policies.hpp"

namespace ucblt {

struct EpisodeResult {
    std::vector<std::size_t> choices;  ///< arm played at t = 1..T (0-based arm index)
    std::vector<double> rewards;
    std::vector<std::uint64_t> final_counts;
    /// Entry t-1 is sum_n gap_n * (plays of n in the first t steps).
    std::vector<double> pseudo_regret_curve;
    double realized_regret_final = 0.0;  ///< T * best mean - sum of rewards
    BranchTally branches;                ///< index-branch evaluations (Ucb1Lt only)

    friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

/// Runs T steps of select -> sample -> update. Arm n draws rewards from the
/// stream derive_seed(seed, n + 1) and the policy from derive_seed(seed, 0),
/// so the k-th reward of an arm is the same under every policy.
/// Throws ConfigError when T < N.
EpisodeResult run_episode(const ArmSet& arms, const PolicyKind& kind, std::uint64_t horizon, std::uint64_t seed);

/// Gap-weighted pull counts recomputed from a choice sequence.
std::vector<double> pseudo_regret_from_choices(const ArmSet& arms, std::span<const std::size_t> choices);

struct RegretCurve {
    std::string policy;
    std::vector<std::uint64_t> checkpoints;
    std::vector<double> mean_pseudo_regret;
    std::vector<double> ci_halfwidth;  ///< 1.96 s / sqrt(episodes); 0 for one episode
    std::vector<double> mean_final_counts;
    std::uint64_t episodes = 0;
    /// Regret bound at each checkpoint; empty unless the policy is Ucb1Lt.
    std::vector<double> bound_curve;
    double mean_realized_regret = 0.0;

    friend bool operator==(const RegretCurve&, const RegretCurve&) = default;
};

inline std::uint64_t episode_seed(std::uint64_t master_seed, std::uint64_t episode) {
    return derive_seed(master_seed, episode);
}

/// 20 log-spaced times in [1, T) plus T, deduplicated and sorted.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon);

/// Episode i uses episode_seed(master_seed, i). Aggregation runs in episode
/// order after all episodes finish, so the result does not depend on
/// `workers` (0 = all cores).
RegretCurve monte_carlo(const ArmSet& arms, const PolicyKind& kind, std::uint64_t horizon,
                        std::uint64_t episodes, std::span<const std::uint64_t> checkpoints,
                        std::uint64_t master_seed, unsigned workers = 0);

/// One curve per policy; every policy sees the same per-episode seeds.
std::vector<RegretCurve> compare_policies(const ArmSet& arms, std::span<const PolicyKind> kinds,
                                          std::uint64_t horizon, std::uint64_t episodes,
                                          std::span<const std::uint64_t> checkpoints, std::uint64_t master_seed,
                                          unsigned workers = 0);

}  // namespace ucblt
