#include "ucblt/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ucblt/parallel.hpp"
#include "ucblt/rng.hpp"

namespace ucblt {
namespace {

void validate(const TailBoundQuery& q) {
    if (!(q.epsilon > 0.0) || !std::isfinite(q.epsilon)) throw std::invalid_argument("epsilon must be > 0");
    if (q.t < 1) throw std::invalid_argument("t must be >= 1");
    if (!(q.zeta > 0.0) || !std::isfinite(q.zeta)) throw std::invalid_argument("zeta must be > 0");
}

void validate_bound_args(double a1, double a2, double horizon) {
    if (!(a1 > 0.0) || !std::isfinite(a1)) throw std::invalid_argument("a1 must be positive");
    if (!(a2 >= 0.0) || !std::isfinite(a2)) throw std::invalid_argument("a2 must be non-negative");
    if (!(horizon > 1.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon T must be > 1");
}

double pulls_formula(double gap, double a1, double a2, double log_horizon) {
    const double sqrt_term = 4.0 * a1 * log_horizon / (gap * gap);
    const double linear_term = 2.0 * a2 * log_horizon / gap;
    return std::max(sqrt_term, linear_term) + kPullsConstant;
}

}  // namespace

BernsteinBranch bernstein_branch(const TailBoundQuery& q) {
    if (q.u0.is_infinite() || q.epsilon < q.zeta * q.u0.value()) return BernsteinBranch::Quadratic;
    return BernsteinBranch::Linear;
}

double bernstein_bound(const TailBoundQuery& q) {
    validate(q);
    const double t = static_cast<double>(q.t);
    if (bernstein_branch(q) == BernsteinBranch::Quadratic) {
        return std::exp(-t * q.epsilon * q.epsilon / (2.0 * q.zeta));
    }
    return std::exp(-t * q.u0.value() * q.epsilon / 2.0);
}

double binomial_standard_error(double p, std::uint64_t trials) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::vector<TailFrequency> empirical_tail_frequencies(const DistributionSpec& dist, std::uint64_t t,
                                                      std::span<const double> epsilons, std::uint64_t trials,
                                                      std::uint64_t seed, unsigned workers) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (trials < kMinTailTrials) {
        throw std::invalid_argument("trials must be >= " + std::to_string(kMinTailTrials));
    }
    for (double eps : epsilons) {
        if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("epsilon must be > 0");
    }

    const double theta = dist.mean();
    const std::size_t n_eps = epsilons.size();
    const std::uint64_t blocks = (trials + kTailBlockSize - 1) / kTailBlockSize;
    // [block][eps][upper, lower]
    std::vector<std::uint64_t> hits(blocks * n_eps * 2, 0);

    parallel_for(blocks, workers, [&](std::size_t b) {
        Rng rng = make_rng(derive_seed(seed, b));
        const std::uint64_t begin = b * kTailBlockSize;
        const std::uint64_t end = std::min<std::uint64_t>(trials, begin + kTailBlockSize);
        std::uint64_t* slot = hits.data() + b * n_eps * 2;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            double sum = 0.0;
            for (std::uint64_t k = 0; k < t; ++k) sum += sample(dist, rng);
            const double deviation = sum / static_cast<double>(t) - theta;
            for (std::size_t e = 0; e < n_eps; ++e) {
                if (deviation >= epsilons[e]) ++slot[2 * e];
                if (deviation <= -epsilons[e]) ++slot[2 * e + 1];
            }
        }
    });

    std::vector<TailFrequency> out(n_eps, TailFrequency{0.0, 0.0});
    const double denom = static_cast<double>(trials);
    for (std::size_t e = 0; e < n_eps; ++e) {
        std::uint64_t upper = 0;
        std::uint64_t lower = 0;
        for (std::uint64_t b = 0; b < blocks; ++b) {
            upper += hits[(b * n_eps + e) * 2];
            lower += hits[(b * n_eps + e) * 2 + 1];
        }
        out[e] = TailFrequency{static_cast<double>(upper) / denom, static_cast<double>(lower) / denom};
    }
    return out;
}

TailFrequency empirical_tail_frequency(const DistributionSpec& dist, std::uint64_t t, double epsilon,
                                       std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    const double eps[] = {epsilon};
    return empirical_tail_frequencies(dist, t, eps, trials, seed, workers).front();
}

double expected_pulls_bound(double gap, double a1, double a2, double horizon) {
    validate_bound_args(a1, a2, horizon);
    if (!(gap > 0.0) || !std::isfinite(gap)) throw std::invalid_argument("gap must be > 0");
    return pulls_formula(gap, a1, a2, std::log(horizon));
}

double regret_bound(const RegretBoundQuery& q) {
    validate_bound_args(q.a1, q.a2, q.horizon);
    for (double g : q.gaps) {
        if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("every gap must be > 0");
    }
    return detail::regret_bound_formula(q.gaps, q.a1, q.a2, q.horizon);
}

namespace detail {
double regret_bound_formula(std::span<const double> gaps, double a1, double a2, double horizon) {
    const double log_horizon = std::log(horizon);
    double total = 0.0;
    for (double g : gaps) total += g * pulls_formula(g, a1, a2, log_horizon);
    return total;
}
}  // namespace detail

}  // namespace ucblt
