#pragma once

// Analytic bounds for light-tailed sample means and for the regret of the
// light-tailed UCB1 policy, plus a Monte Carlo oracle for the tail bound.

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "ucblt/arms.hpp"

namespace ucblt {

struct TailBoundQuery {
    double epsilon;  ///< deviation, > 0
    std::uint64_t t; ///< sample count, >= 1
    double zeta;
    MgfRadius u0;
};

enum class BernsteinBranch {
    Quadratic,  ///< epsilon < zeta u0: exp(-t eps^2 / (2 zeta))
    Linear,     ///< epsilon >= zeta u0: exp(-t u0 eps / 2)
};

BernsteinBranch bernstein_branch(const TailBoundQuery& q);

/// Upper bound on P(mean_t - theta >= eps), and by symmetry on
/// P(mean_t - theta <= -eps). Throws std::invalid_argument on an invalid query.
double bernstein_bound(const TailBoundQuery& q);

/// sqrt(p (1 - p) / trials).
double binomial_standard_error(double p, std::uint64_t trials);

struct TailFrequency {
    double upper;  ///< fraction of trials with mean_t - theta >= eps
    double lower;  ///< fraction of trials with mean_t - theta <= -eps
};

inline constexpr std::uint64_t kMinTailTrials = 1000;
inline constexpr std::uint64_t kTailBlockSize = 1024;

/// Monte Carlo tail frequencies of the t-sample mean. Trials are split into
/// fixed blocks of kTailBlockSize, block b drawing from derive_seed(seed, b),
/// so results depend on seed only, not on the worker count (0 = all cores).
TailFrequency empirical_tail_frequency(const DistributionSpec& dist, std::uint64_t t, double epsilon,
                                       std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

/// Same as empirical_tail_frequency for several deviations at once, reusing
/// each simulated mean. Element i matches empirical_tail_frequency(..., eps[i], ...).
std::vector<TailFrequency> empirical_tail_frequencies(const DistributionSpec& dist, std::uint64_t t,
                                                      std::span<const double> epsilons, std::uint64_t trials,
                                                      std::uint64_t seed, unsigned workers = 0);

/// 1 + pi^2/3, the additive constant of the expected-pulls bound.
inline constexpr double kPullsConstant = 1.0 + std::numbers::pi * std::numbers::pi / 3.0;

/// max{4 a1 ln T / gap^2, 2 a2 ln T / gap} + 1 + pi^2/3: bound on the expected
/// number of plays of an arm with the given gap up to horizon T (> 1).
double expected_pulls_bound(double gap, double a1, double a2, double horizon);

struct RegretBoundQuery {
    std::vector<double> gaps;  ///< suboptimal arms only, each > 0
    double a1;
    double a2;
    double horizon;  ///< T > 1
};

/// Sum over gaps of gap * expected_pulls_bound(gap, a1, a2, T).
double regret_bound(const RegretBoundQuery& q);

namespace detail {
/// Regret-bound formula without argument checks; defined for T >= 1.
double regret_bound_formula(std::span<const double> gaps, double a1, double a2, double horizon);
}  // namespace detail

}  // namespace ucblt
