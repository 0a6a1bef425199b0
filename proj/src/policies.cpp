#include "ucblt/policies.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ucblt {

PolicyParams PolicyParams::make(double a1, double a2, double zeta, MgfRadius u0) {
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (!(zeta > 0.0) || !std::isfinite(zeta)) fail("zeta must be positive and finite");
    if (!std::isfinite(a1) || !(a1 > 0.0)) fail("a1 must be positive and finite");
    if (!std::isfinite(a2) || a2 < 0.0) fail("a2 must be non-negative and finite");

    const double a1_min = 8.0 * zeta;
    if (a1 < a1_min * (1.0 - kParamTolerance)) {
        std::ostringstream os;
        os << "a1 must satisfy a1 >= 8*zeta (got a1 = " << a1 << ", 8*zeta = " << a1_min << ")";
        fail(os.str());
    }
    if (u0.is_infinite()) {
        if (a2 != 0.0) fail("a2 must be 0 when u0 is infinite");
    } else {
        const double a2_min = a1 / (zeta * u0.value());
        if (a2 < a2_min * (1.0 - kParamTolerance)) {
            std::ostringstream os;
            os << "a2 must satisfy a2 >= a1/(zeta*u0) (got a2 = " << a2 << ", a1/(zeta*u0) = " << a2_min << ")";
            fail(os.str());
        }
    }
    return PolicyParams{a1, a2, zeta, u0};
}

PolicyParams PolicyParams::minimal(const TailParams& tail) {
    const double a1 = 8.0 * tail.zeta;
    const double a2 = tail.u0.is_infinite() ? 0.0 : a1 / (tail.zeta * tail.u0.value());
    return make(a1, a2, tail.zeta, tail.u0);
}

std::string_view policy_name(const PolicyKind& kind) noexcept {
    switch (kind.index()) {
        case 0: return "Ucb1";
        case 1: return "Ucb1Lt";
        default: return "UniformRandom";
    }
}

PolicyState::PolicyState(std::size_t arms) : counts_(arms, 0), means_(arms) {
    if (arms == 0) throw std::invalid_argument("policy state needs at least one arm");
}

PolicyState PolicyState::from_statistics(std::vector<std::uint64_t> counts,
                                         std::vector<std::optional<double>> means) {
    if (counts.size() != means.size()) throw std::invalid_argument("counts and means differ in length");
    PolicyState state(counts.size());
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if ((counts[i] > 0) != means[i].has_value()) {
            throw std::invalid_argument("a mean must be present exactly when its count is positive");
        }
        total += counts[i];
    }
    state.counts_ = std::move(counts);
    state.means_ = std::move(means);
    state.t_ = total + 1;
    return state;
}

void PolicyState::record(std::size_t arm, double reward) {
    if (arm >= counts_.size()) throw std::out_of_range("arm index out of range");
    const std::uint64_t n = ++counts_[arm];
    auto& m = means_[arm];
    if (!m) {
        m = reward;
    } else {
        *m += (reward - *m) / static_cast<double>(n);
    }
    ++t_;
}

PolicyState update(PolicyState state, std::size_t arm, double reward) {
    state.record(arm, reward);
    return state;
}

double ucb1_index(double mean, double t, std::uint64_t tau) {
    return mean + std::sqrt(2.0 * std::log(t) / static_cast<double>(tau));
}

IndexValue ucb1lt_index_detail(double mean, double t, std::uint64_t tau, const PolicyParams& params) {
    const double log_t = std::log(t);
    const double n = static_cast<double>(tau);
    const double radius = std::sqrt(params.a1() * log_t / n);
    if (params.u0().is_infinite() || radius < params.zeta() * params.u0().value()) {
        return {mean + radius, IndexBranch::SqrtRadius};
    }
    return {mean + params.a2() * log_t / n, IndexBranch::LinearRadius};
}

std::size_t select_arm(const PolicyState& state, const PolicyKind& kind, Rng& rng, BranchTally* tally) {
    const auto& counts = state.counts();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) return i;
    }

    if (std::holds_alternative<UniformRandom>(kind)) {
        return std::uniform_int_distribution<std::size_t>{0, counts.size() - 1}(rng);
    }

    const double t = static_cast<double>(state.t());
    const auto* lt = std::get_if<Ucb1Lt>(&kind);
    std::size_t best = 0;
    double best_index = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double mean = *state.means()[i];
        double index;
        if (lt) {
            const IndexValue v = ucb1lt_index_detail(mean, t, counts[i], lt->params);
            if (tally) {
                (v.branch == IndexBranch::SqrtRadius ? tally->sqrt_radius : tally->linear_radius) += 1;
            }
            index = v.value;
        } else {
            index = ucb1_index(mean, t, counts[i]);
        }
        if (i == 0 || index > best_index) {
            best = i;
            best_index = index;
        }
    }
    return best;
}

}  // namespace ucblt
