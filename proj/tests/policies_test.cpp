#include "ucblt/policies.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

namespace ucblt {
namespace {

const double kE = std::numbers::e;

PolicyParams lt(double a1, double a2, double zeta, MgfRadius u0) { return PolicyParams::make(a1, a2, zeta, u0); }

TEST(Ucb1Index, DirectSubstitution) {
    EXPECT_EQ(ucb1_index(0.5, 1.0, 1), 0.5);
    EXPECT_NEAR(ucb1_index(0.0, kE * kE, 4), 1.0, 1e-15);
    EXPECT_NEAR(ucb1_index(0.2, 10.0, 3), 1.4389740629499461, 1e-14);
}

TEST(Ucb1LtIndex, SqrtBranchWithInfiniteRadius) {
    const auto p = lt(8, 0, 1, MgfRadius::infinite());
    const IndexValue v = ucb1lt_index_detail(0.0, kE * kE, 8, p);
    EXPECT_NEAR(v.value, std::sqrt(2.0), 1e-15);
    EXPECT_EQ(v.branch, IndexBranch::SqrtRadius);
}

TEST(Ucb1LtIndex, LinearBranch) {
    const auto p = lt(8, 16, 1, MgfRadius::finite(0.5));
    const IndexValue v = ucb1lt_index_detail(0.0, kE, 4, p);
    EXPECT_EQ(v.branch, IndexBranch::LinearRadius);
    EXPECT_NEAR(v.value, 4.0, 1e-14);
}

TEST(Ucb1LtIndex, EqualityUsesLinearBranch) {
    // r = sqrt(a1 ln t / tau) with a1 = 8, t = e^2, tau = 16 gives exactly 1 = zeta * u0.
    const auto p = lt(8, 8, 1, MgfRadius::finite(1.0));
    const double t = std::exp(2.0);
    const double r = std::sqrt(8.0 * std::log(t) / 16.0);
    ASSERT_EQ(r, 1.0);
    EXPECT_EQ(ucb1lt_index_detail(0.0, t, 16, p).branch, IndexBranch::LinearRadius);
}

TEST(Ucb1LtIndex, ReducesToUcb1) {
    const auto p = lt(2, 0, 0.25, MgfRadius::infinite());
    for (double mean : {-1.0, 0.0, 0.37}) {
        for (double t : {1.0, 2.0, 17.0, 1e6}) {
            for (std::uint64_t tau : {1u, 3u, 1000u}) {
                EXPECT_EQ(ucb1lt_index(mean, t, tau, p), ucb1_index(mean, t, tau));
            }
        }
    }
}

TEST(Ucb1LtIndex, MonotoneInTimeAndCount) {
    const auto p = lt(8, 20, 1, MgfRadius::finite(0.4));
    for (std::uint64_t tau = 1; tau < 200; tau += 7) {
        double prev = -INFINITY;
        for (double t = 2; t < 5000; t *= 1.3) {
            const double v = ucb1lt_index(0.1, t, tau, p);
            EXPECT_GE(v, prev);
            prev = v;
        }
    }
    for (double t : {3.0, 50.0, 4000.0}) {
        double prev = INFINITY;
        for (std::uint64_t tau = 1; tau < 500; ++tau) {
            const double v = ucb1lt_index(0.1, t, tau, p);
            EXPECT_LE(v, prev);
            prev = v;
        }
    }
}

TEST(PolicyParams, ConstraintsEnforced) {
    EXPECT_THROW(lt(4, 0, 1, MgfRadius::infinite()), std::invalid_argument);
    EXPECT_THROW(lt(8, 15.9, 1, MgfRadius::finite(0.5)), std::invalid_argument);
    EXPECT_THROW(lt(8, 1, 1, MgfRadius::infinite()), std::invalid_argument);
    EXPECT_NO_THROW(lt(2.4, 0, 0.3, MgfRadius::infinite()));
    try {
        lt(4, 0, 1, MgfRadius::infinite());
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("a1 >= 8*zeta"), std::string::npos);
    }
}

TEST(PolicyParams, MinimalConstants) {
    const auto sub = PolicyParams::minimal(TailParams{MgfRadius::infinite(), 2.0});
    EXPECT_EQ(sub.a1(), 16.0);
    EXPECT_EQ(sub.a2(), 0.0);
    const auto light = PolicyParams::minimal(TailParams{MgfRadius::finite(0.5), 1.0});
    EXPECT_EQ(light.a1(), 8.0);
    EXPECT_EQ(light.a2(), 16.0);
}

TEST(SelectArm, InitializationPlaysLowestUnplayedArm) {
    Rng rng = make_rng(0);
    const PolicyKind kind = Ucb1Lt{lt(8, 0, 1, MgfRadius::infinite())};
    PolicyState state(3);
    EXPECT_EQ(select_arm(state, kind, rng), 0u);
    state.record(0, 1.0);
    EXPECT_EQ(select_arm(state, kind, rng), 1u);
    const auto gap = PolicyState::from_statistics({2, 0, 1}, {0.3, std::nullopt, 0.1});
    EXPECT_EQ(select_arm(gap, UniformRandom{}, rng), 1u);
}

TEST(SelectArm, ArgmaxByMeanWithEqualRadii) {
    Rng rng = make_rng(0);
    const auto state = PolicyState::from_statistics({1, 1}, {1.0, 0.0});
    EXPECT_EQ(state.t(), 3u);
    EXPECT_EQ(select_arm(state, Ucb1{}, rng), 0u);
    EXPECT_EQ(select_arm(state, Ucb1Lt{lt(8, 0, 1, MgfRadius::infinite())}, rng), 0u);
    const auto reversed = PolicyState::from_statistics({1, 1}, {0.0, 1.0});
    EXPECT_EQ(select_arm(reversed, Ucb1{}, rng), 1u);
}

TEST(SelectArm, ExactTieGoesToLowestIndex) {
    Rng rng = make_rng(0);
    const auto state = PolicyState::from_statistics({1, 1}, {0.0, 0.0});
    EXPECT_EQ(select_arm(state, Ucb1{}, rng), 0u);
    EXPECT_EQ(select_arm(state, Ucb1Lt{lt(8, 16, 1, MgfRadius::finite(0.5))}, rng), 0u);
}

TEST(SelectArm, IndexPoliciesDoNotConsumeRandomness) {
    Rng rng = make_rng(5);
    const Rng before = rng;
    const auto state = PolicyState::from_statistics({3, 4, 2}, {0.1, 0.5, 0.2});
    select_arm(state, Ucb1{}, rng);
    select_arm(state, Ucb1Lt{lt(8, 0, 1, MgfRadius::infinite())}, rng);
    EXPECT_EQ(rng, before);
}

TEST(SelectArm, PureInItsInputs) {
    const auto state = PolicyState::from_statistics({3, 4, 2}, {0.1, 0.5, 0.2});
    for (const PolicyKind& kind : {PolicyKind{Ucb1{}}, PolicyKind{UniformRandom{}},
                                   PolicyKind{Ucb1Lt{lt(8, 16, 1, MgfRadius::finite(0.5))}}}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng a = make_rng(seed);
            Rng b = make_rng(seed);
            EXPECT_EQ(select_arm(state, kind, a), select_arm(state, kind, b));
        }
    }
}

TEST(SelectArm, UniformRandomCoversAllArms) {
    Rng rng = make_rng(11);
    const auto state = PolicyState::from_statistics({1, 1, 1, 1}, {0.0, 0.0, 0.0, 0.0});
    std::vector<int> hits(4, 0);
    for (int i = 0; i < 4000; ++i) ++hits[select_arm(state, UniformRandom{}, rng)];
    for (int h : hits) EXPECT_NEAR(h, 1000, 150);
}

TEST(SelectArm, InitializationForEveryPolicyKind) {
    for (const PolicyKind& kind : {PolicyKind{Ucb1{}}, PolicyKind{UniformRandom{}},
                                   PolicyKind{Ucb1Lt{lt(8, 0, 1, MgfRadius::infinite())}}}) {
        for (std::size_t n : {1u, 2u, 5u, 13u}) {
            Rng rng = make_rng(n);
            PolicyState state(n);
            for (std::size_t step = 0; step < n; ++step) {
                const std::size_t arm = select_arm(state, kind, rng);
                EXPECT_EQ(arm, step);
                state.record(arm, 0.5);
            }
            for (auto c : state.counts()) EXPECT_GE(c, 1u);
        }
    }
}

TEST(Update, IncrementalMean) {
    PolicyState s(1);
    s = update(s, 0, 0.7);
    EXPECT_EQ(s.counts()[0], 1u);
    EXPECT_EQ(*s.means()[0], 0.7);

    auto two = PolicyState::from_statistics({1}, {1.0});
    two = update(two, 0, 0.0);
    EXPECT_EQ(two.counts()[0], 2u);
    EXPECT_EQ(*two.means()[0], 0.5);
    EXPECT_EQ(two.t(), 3u);
}

TEST(Update, SumOfCountsTracksTime) {
    PolicyState s(3);
    Rng rng = make_rng(3);
    for (int i = 0; i < 100; ++i) {
        s.record(static_cast<std::size_t>(i % 3), 1.0);
        EXPECT_EQ(std::accumulate(s.counts().begin(), s.counts().end(), std::uint64_t{0}), s.t() - 1);
    }
    EXPECT_THROW(s.record(3, 1.0), std::out_of_range);
}

TEST(Update, DriftAgainstBatchMean) {
    PolicyState s(1);
    Rng rng = make_rng(42);
    std::normal_distribution<double> normal;
    long double batch = 0.0L;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double x = normal(rng);
        batch += x;
        s.record(0, x);
    }
    EXPECT_LT(std::abs(*s.means()[0] - static_cast<double>(batch / n)), 1e-10);
}

TEST(PolicyState, RejectsInconsistentStatistics) {
    EXPECT_THROW(PolicyState::from_statistics({1, 0}, {0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(PolicyState::from_statistics({1}, {std::nullopt}), std::invalid_argument);
    EXPECT_THROW(PolicyState::from_statistics({1, 1}, {0.5}), std::invalid_argument);
    EXPECT_THROW(PolicyState(0), std::invalid_argument);
}

}  // namespace
}  // namespace ucblt
