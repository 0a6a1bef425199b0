// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucblt/arms.hpp"
#include "ucblt/cli.hpp"
#include "ucblt/concentration.hpp"
#include "ucblt/policies.hpp"
#include "ucblt/simulator.hpp"

namespace {

using namespace ucblt;

struct Outcome {
    bool pass;
    std::string detail;
};

constexpr std::uint64_t kMasterSeed = 20240601;

ArmSet gaussian_pair() {
    std::vector<ArmModel> arms;
    arms.emplace_back(DistributionSpec{Gaussian{0.5, 1.0}});
    arms.emplace_back(DistributionSpec{Gaussian{0.0, 1.0}});
    return ArmSet{std::move(arms)};
}

// Criteria 2, 3 and 8 share one coupled Monte Carlo run.
struct GaussianPairRun {
    RegretCurve lt;
    RegretCurve uniform;
};

const GaussianPairRun& gaussian_pair_run() {
    static const GaussianPairRun run = [] {
        const ArmSet arms = gaussian_pair();
        const TailParams tail = arms.common_tail();  // zeta = 1, u0 = inf
        const std::vector<PolicyKind> kinds{Ucb1Lt{PolicyParams::minimal(tail)}, UniformRandom{}};
        const auto cps = default_checkpoints(10000);
        auto curves = compare_policies(arms, kinds, 10000, 1000, cps, kMasterSeed);
        return GaussianPairRun{curves[0], curves[1]};
    }();
    return run;
}

double at_checkpoint(const RegretCurve& c, std::uint64_t t) {
    for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
        if (c.checkpoints[i] == t) return c.mean_pseudo_regret[i];
    }
    return NAN;
}

Outcome tail_bound_certification() {
    const std::vector<DistributionSpec> families{
        DistributionSpec{Gaussian{0, 1}}, DistributionSpec{UniformBounded{0, 1}}, DistributionSpec{Exponential{1}},
        DistributionSpec{Laplace{0, 1}},  DistributionSpec{Poisson{1}},
    };
    const std::vector<std::uint64_t> ts{10, 50, 200};
    const std::vector<double> eps{0.1, 0.3, 0.8};
    const std::uint64_t trials = 100000;
    int cells = 0;
    int failures = 0;
    double worst_margin = -INFINITY;
    std::ostringstream bad;
    for (std::size_t f = 0; f < families.size(); ++f) {
        const auto& d = families[f];
        const TailParams tail = derive_tail_params(d, default_u0(d));
        for (std::uint64_t t : ts) {
            const auto freqs = empirical_tail_frequencies(d, t, eps, trials, derive_seed(kMasterSeed, f * 1000 + t));
            for (std::size_t e = 0; e < eps.size(); ++e) {
                const double bound = bernstein_bound({eps[e], t, tail.zeta, tail.u0});
                const double limit = bound + 3.0 * binomial_standard_error(bound, trials);
                const double worst = std::max(freqs[e].upper, freqs[e].lower);
                worst_margin = std::max(worst_margin, worst - limit);
                ++cells;
                if (worst > limit) {
                    ++failures;
                    bad << ' ' << d.family_name() << "(t=" << t << ",eps=" << eps[e] << ")";
                }
            }
        }
    }
    std::ostringstream detail;
    detail << cells << " cells, " << failures << " above bound + 3se; max(freq - limit) = " << worst_margin << bad.str();
    return {failures == 0, detail.str()};
}

Outcome regret_bound_certification() {
    const RegretCurve& c = gaussian_pair_run().lt;
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
        if (c.mean_pseudo_regret[i] > c.bound_curve[i]) {
            ok = false;
            detail << "t=" << c.checkpoints[i] << " regret " << c.mean_pseudo_regret[i] << " > bound "
                   << c.bound_curve[i] << "; ";
        }
    }
    const double pulls = c.mean_final_counts[1];
    const double pulls_limit = expected_pulls_bound(0.5, 8.0, 0.0, 10000.0) + 1.0;
    ok = ok && pulls <= pulls_limit;
    detail << "regret(T)=" << c.mean_pseudo_regret.back() << " bound(T)=" << c.bound_curve.back()
           << "; suboptimal pulls " << pulls << " <= " << pulls_limit;
    return {ok, detail.str()};
}

Outcome logarithmic_order() {
    const RegretCurve& c = gaussian_pair_run().lt;
    const double r3 = at_checkpoint(c, 1000) / std::log(1000.0);
    const double r4 = at_checkpoint(c, 10000) / std::log(10000.0);
    std::ostringstream detail;
    detail << "R(1e4)/ln(1e4) = " << r4 << ", 1.5 * R(1e3)/ln(1e3) = " << 1.5 * r3;
    return {std::isfinite(r3) && r4 <= 1.5 * r3, detail.str()};
}

Outcome ucb1_reduction() {
    std::vector<ArmModel> models;
    models.emplace_back(DistributionSpec{Bernoulli{0.7}});
    models.emplace_back(DistributionSpec{Bernoulli{0.3}});
    const ArmSet arms{std::move(models)};
    const PolicyKind reduced = Ucb1Lt{PolicyParams::make(2.0, 0.0, 0.25, MgfRadius::infinite())};
    int identical = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const std::uint64_t seed = episode_seed(kMasterSeed, i);
        if (run_episode(arms, reduced, 1000, seed).choices == run_episode(arms, Ucb1{}, 1000, seed).choices) {
            ++identical;
        }
    }
    return {identical == 100, std::to_string(identical) + "/100 episodes with identical choice sequences"};
}

Outcome branch_continuity() {
    const std::vector<std::uint64_t> ts{1, 3, 10, 50, 200};
    const std::vector<double> zetas{0.1, 0.25, 1.0, 2.5, 6.0};
    const std::vector<double> u0s{0.05, 0.3, 1.0, 2.0};
    double worst = 0.0;
    int points = 0;
    for (auto t : ts) {
        for (double zeta : zetas) {
            for (double u0 : u0s) {
                const double eps = zeta * u0;
                const double td = static_cast<double>(t);
                const double quadratic = std::exp(-td * eps * eps / (2.0 * zeta));
                const double linear = std::exp(-td * u0 * eps / 2.0);
                const double evaluated = bernstein_bound({eps, t, zeta, MgfRadius::finite(u0)});
                worst = std::max({worst, std::abs(quadratic - linear), std::abs(evaluated - quadratic)});
                ++points;
            }
        }
    }
    std::ostringstream detail;
    detail << points << " grid points, max gap " << worst;
    return {points == 100 && worst < 1e-12, detail.str()};
}

Outcome mgf_certificate() {
    const std::vector<DistributionSpec> families{
        DistributionSpec{PointMass{0.7}},   DistributionSpec{Bernoulli{0.3}}, DistributionSpec{UniformBounded{0, 1}},
        DistributionSpec{Gaussian{0, 1}},   DistributionSpec{Exponential{1}}, DistributionSpec{Poisson{1}},
        DistributionSpec{Laplace{0, 1}},
    };
    int violations = 0;
    std::ostringstream detail;
    for (const auto& d : families) {
        const TailParams tail = derive_tail_params(d, default_u0(d));
        const double half = tail.u0.is_infinite() ? 10.0 : tail.u0.value();
        for (int i = 0; i <= 1000; ++i) {
            const double u = -half + 2.0 * half * i / 1000.0;
            if (mgf(d, u) > std::exp(tail.zeta * u * u / 2.0) + 1e-9) ++violations;
        }
        detail << d.family_name() << "(zeta=" << tail.zeta << ") ";
    }
    detail << "-> " << violations << " violations over 7 x 1001 points";
    return {violations == 0, detail.str()};
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ucblt_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto write_config = [&](const std::string& name) {
        nlohmann::json cfg = {
            {"arms", {{{"family", "Gaussian"}, {"mu", 0.5}, {"sigma2", 1.0}},
                      {{"family", "Exponential"}, {"lambda", 2.5}},
                      {{"family", "Gaussian"}, {"mu", 0.0}, {"sigma2", 1.0}}}},
            {"policy", nlohmann::json::array({"Ucb1Lt", "Ucb1", "UniformRandom"})},
            {"horizon", 2000},
            {"episodes", 200},
            {"master_seed", 99},
            {"output_path", (dir / (name + ".csv")).string()},
        };
        std::ofstream(dir / (name + ".json")) << cfg.dump();
        return (dir / (name + ".json")).string();
    };
    std::ostringstream sink;
    const int a = cli::cmd_simulate(write_config("a"), 1, sink, sink);
    const int b = cli::cmd_simulate(write_config("b"), 8, sink, sink);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string csv_a = slurp(dir / "a.csv");
    const std::string csv_b = slurp(dir / "b.csv");
    fs::remove_all(dir);
    const bool ok = a == 0 && b == 0 && !csv_a.empty() && csv_a == csv_b;
    return {ok, "workers 1 vs 8: " + std::to_string(csv_a.size()) + " bytes, " +
                    (csv_a == csv_b ? "identical" : "DIFFERENT")};
}

Outcome baseline_separation() {
    const auto& run = gaussian_pair_run();
    const double lt = run.lt.mean_pseudo_regret.back();
    const double uniform = run.uniform.mean_pseudo_regret.back();
    std::ostringstream detail;
    detail << "Ucb1Lt " << lt << " vs UniformRandom " << uniform << " (threshold " << 0.1 * uniform << ")";
    return {lt < 0.1 * uniform, detail.str()};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"1 tail-bound certification", tail_bound_certification},
        {"2 regret-bound certification", regret_bound_certification},
        {"3 logarithmic order", logarithmic_order},
        {"4 UCB1 reduction", ucb1_reduction},
        {"5 branch continuity", branch_continuity},
        {"6 MGF certificate", mgf_certificate},
        {"7 determinism", determinism},
        {"8 baseline separation", baseline_separation},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
