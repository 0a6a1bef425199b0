#pragma once

// Arm-selection policies as pure index computations over running statistics.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "ucblt/arms.hpp"
#include "ucblt/rng.hpp"

namespace ucblt {

/// Constants of the light-tailed UCB1 policy. Invariants enforced by make():
/// a1 >= 8 zeta; a2 >= a1 / (zeta u0) for finite u0, a2 == 0 for infinite u0.
class PolicyParams {
public:
    /// Throws std::invalid_argument naming the violated constraint. Comparisons
    /// allow a relative slack of kParamTolerance so that decimal inputs such as
    /// zeta = 0.3, a1 = 2.4 are accepted.
    static PolicyParams make(double a1, double a2, double zeta, MgfRadius u0);

    /// Smallest admissible constants: a1 = 8 zeta, a2 = a1 / (zeta u0).
    static PolicyParams minimal(const TailParams& tail);

    double a1() const noexcept { return a1_; }
    double a2() const noexcept { return a2_; }
    double zeta() const noexcept { return zeta_; }
    const MgfRadius& u0() const noexcept { return u0_; }

    friend bool operator==(const PolicyParams&, const PolicyParams&) = default;

private:
    PolicyParams(double a1, double a2, double zeta, MgfRadius u0) : a1_(a1), a2_(a2), zeta_(zeta), u0_(u0) {}
    double a1_;
    double a2_;
    double zeta_;
    MgfRadius u0_;
};

inline constexpr double kParamTolerance = 1e-12;

struct Ucb1 {
    friend bool operator==(const Ucb1&, const Ucb1&) = default;
};
struct Ucb1Lt {
    PolicyParams params;
    friend bool operator==(const Ucb1Lt&, const Ucb1Lt&) = default;
};
struct UniformRandom {
    friend bool operator==(const UniformRandom&, const UniformRandom&) = default;
};

using PolicyKind = std::variant<Ucb1, Ucb1Lt, UniformRandom>;

std::string_view policy_name(const PolicyKind& kind) noexcept;

/// Running statistics at a decision point. t is 1-based; counts[n] is the
/// number of plays of arm n strictly before t, so sum(counts) == t - 1.
/// A mean is empty until its arm has been played.
class PolicyState {
public:
    explicit PolicyState(std::size_t arms);

    /// Builds a state from explicit statistics; t = sum(counts) + 1. Throws
    /// std::invalid_argument if sizes differ or a mean's presence does not
    /// match its count.
    static PolicyState from_statistics(std::vector<std::uint64_t> counts,
                                       std::vector<std::optional<double>> means);

    std::uint64_t t() const noexcept { return t_; }
    std::size_t arms() const noexcept { return counts_.size(); }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    const std::vector<std::optional<double>>& means() const noexcept { return means_; }

    /// counts[arm] += 1; mean += (reward - mean) / count; t += 1.
    void record(std::size_t arm, double reward);

private:
    std::uint64_t t_ = 1;
    std::vector<std::uint64_t> counts_;
    std::vector<std::optional<double>> means_;
};

/// Value-returning form of PolicyState::record.
PolicyState update(PolicyState state, std::size_t arm, double reward);

/// mean + sqrt(2 ln t / tau).
double ucb1_index(double mean, double t, std::uint64_t tau);

enum class IndexBranch {
    SqrtRadius,    ///< mean + sqrt(a1 ln t / tau)
    LinearRadius,  ///< mean + a2 ln t / tau
};

struct IndexValue {
    double value;
    IndexBranch branch;
};

/// Uses the square-root radius r = sqrt(a1 ln t / tau) when u0 is infinite or
/// r < zeta u0, and the linear radius a2 ln t / tau otherwise.
IndexValue ucb1lt_index_detail(double mean, double t, std::uint64_t tau, const PolicyParams& params);

inline double ucb1lt_index(double mean, double t, std::uint64_t tau, const PolicyParams& params) {
    return ucb1lt_index_detail(mean, t, tau, params).value;
}

/// Per-branch evaluation counts, accumulated by select_arm when requested.
struct BranchTally {
    std::uint64_t sqrt_radius = 0;
    std::uint64_t linear_radius = 0;

    friend bool operator==(const BranchTally&, const BranchTally&) = default;
};

/// Lowest-index unplayed arm if one exists; otherwise the argmax of the
/// policy's index (lowest index on ties) or a uniform draw. Only
/// UniformRandom consumes rng.
std::size_t select_arm(const PolicyState& state, const PolicyKind& kind, Rng& rng,
                       BranchTally* tally = nullptr);

}  // namespace ucblt
