#include "ucblt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ucblt/concentration.hpp"
#include "ucblt/errors.hpp"
#include "ucblt/parallel.hpp"
#include "ucblt/rng.hpp"

namespace ucblt {
namespace {

double gap_weighted(const std::vector<double>& gaps, const std::vector<std::uint64_t>& counts) {
    double total = 0.0;
    for (std::size_t n = 0; n < gaps.size(); ++n) total += gaps[n] * static_cast<double>(counts[n]);
    return total;
}

void check_checkpoints(std::span<const std::uint64_t> checkpoints, std::uint64_t horizon) {
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1 || checkpoints[i] > horizon) {
            throw ConfigError("checkpoints", "every checkpoint must lie in [1, horizon]");
        }
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
            throw ConfigError("checkpoints", "checkpoints must be strictly increasing");
        }
    }
}

struct EpisodeSummary {
    std::vector<double> pseudo_at_checkpoints;
    std::vector<std::uint64_t> final_counts;
    double realized = 0.0;
};

}  // namespace

EpisodeResult run_episode(const ArmSet& arms, const PolicyKind& kind, std::uint64_t horizon, std::uint64_t seed) {
    const std::size_t n_arms = arms.size();
    if (horizon < n_arms) {
        throw ConfigError("horizon", "horizon T = " + std::to_string(horizon) + " is smaller than the " +
                                         std::to_string(n_arms) + " arms that must each be played once");
    }

    Rng policy_rng = make_rng(derive_seed(seed, 0));
    std::vector<Rng> arm_rngs;
    arm_rngs.reserve(n_arms);
    for (std::size_t n = 0; n < n_arms; ++n) arm_rngs.push_back(make_rng(derive_seed(seed, n + 1)));

    EpisodeResult result;
    result.choices.reserve(horizon);
    result.rewards.reserve(horizon);
    result.pseudo_regret_curve.reserve(horizon);

    PolicyState state(n_arms);
    const auto& gaps = arms.gaps();
    double reward_sum = 0.0;
    for (std::uint64_t step = 0; step < horizon; ++step) {
        const std::size_t arm = select_arm(state, kind, policy_rng, &result.branches);
        const double reward = sample(arms[arm], arm_rngs[arm]);
        state.record(arm, reward);
        reward_sum += reward;
        result.choices.push_back(arm);
        result.rewards.push_back(reward);
        result.pseudo_regret_curve.push_back(gap_weighted(gaps, state.counts()));
    }
    result.final_counts = state.counts();
    result.realized_regret_final = static_cast<double>(horizon) * arms[arms.best()].mean() - reward_sum;
    return result;
}

std::vector<double> pseudo_regret_from_choices(const ArmSet& arms, std::span<const std::size_t> choices) {
    std::vector<std::uint64_t> counts(arms.size(), 0);
    std::vector<double> curve;
    curve.reserve(choices.size());
    for (std::size_t arm : choices) {
        ++counts.at(arm);
        curve.push_back(gap_weighted(arms.gaps(), counts));
    }
    return curve;
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon) {
    if (horizon < 1) return {};
    std::set<std::uint64_t> points;
    const double log_h = std::log(static_cast<double>(horizon));
    for (int k = 0; k < 20; ++k) {
        const auto t = static_cast<std::uint64_t>(std::llround(std::exp(log_h * k / 20.0)));
        points.insert(std::clamp<std::uint64_t>(t, 1, horizon));
    }
    points.insert(horizon);
    return {points.begin(), points.end()};
}

RegretCurve monte_carlo(const ArmSet& arms, const PolicyKind& kind, std::uint64_t horizon,
                        std::uint64_t episodes, std::span<const std::uint64_t> checkpoints,
                        std::uint64_t master_seed, unsigned workers) {
    if (episodes < 1) throw ConfigError("episodes", "at least one episode is required");
    if (horizon < arms.size()) {
        throw ConfigError("horizon", "horizon must be at least the number of arms");
    }
    check_checkpoints(checkpoints, horizon);

    std::vector<EpisodeSummary> summaries(episodes);
    parallel_for(episodes, workers, [&](std::size_t i) {
        const EpisodeResult ep = run_episode(arms, kind, horizon, episode_seed(master_seed, i));
        EpisodeSummary& s = summaries[i];
        s.pseudo_at_checkpoints.reserve(checkpoints.size());
        for (std::uint64_t c : checkpoints) s.pseudo_at_checkpoints.push_back(ep.pseudo_regret_curve[c - 1]);
        s.final_counts = ep.final_counts;
        s.realized = ep.realized_regret_final;
    });

    const double n = static_cast<double>(episodes);
    RegretCurve curve;
    curve.policy = std::string(policy_name(kind));
    curve.checkpoints.assign(checkpoints.begin(), checkpoints.end());
    curve.episodes = episodes;

    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        double sum = 0.0;
        for (const auto& s : summaries) sum += s.pseudo_at_checkpoints[c];
        const double mean = sum / n;
        double halfwidth = 0.0;
        if (episodes > 1) {
            double ss = 0.0;
            for (const auto& s : summaries) {
                const double d = s.pseudo_at_checkpoints[c] - mean;
                ss += d * d;
            }
            halfwidth = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        }
        curve.mean_pseudo_regret.push_back(mean);
        curve.ci_halfwidth.push_back(halfwidth);
    }

    curve.mean_final_counts.assign(arms.size(), 0.0);
    double realized = 0.0;
    for (const auto& s : summaries) {
        for (std::size_t a = 0; a < arms.size(); ++a) curve.mean_final_counts[a] += static_cast<double>(s.final_counts[a]);
        realized += s.realized;
    }
    for (double& v : curve.mean_final_counts) v /= n;
    curve.mean_realized_regret = realized / n;

    if (const auto* lt = std::get_if<Ucb1Lt>(&kind)) {
        const std::vector<double> gaps = arms.positive_gaps();
        for (std::uint64_t c : checkpoints) {
            curve.bound_curve.push_back(
                detail::regret_bound_formula(gaps, lt->params.a1(), lt->params.a2(), static_cast<double>(c)));
        }
    }
    return curve;
}

std::vector<RegretCurve> compare_policies(const ArmSet& arms, std::span<const PolicyKind> kinds,
                                          std::uint64_t horizon, std::uint64_t episodes,
                                          std::span<const std::uint64_t> checkpoints, std::uint64_t master_seed,
                                          unsigned workers) {
    std::vector<RegretCurve> out;
    out.reserve(kinds.size());
    for (const auto& kind : kinds) {
        out.push_back(monte_carlo(arms, kind, horizon, episodes, checkpoints, master_seed, workers));
    }
    return out;
}

}  // namespace ucblt
