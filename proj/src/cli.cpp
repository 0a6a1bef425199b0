#include "ucblt/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ucblt/concentration.hpp"
#include "ucblt/config.hpp"
#include "ucblt/errors.hpp"

namespace ucblt::cli {
namespace {

std::string real17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string real10(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string radius_text(const MgfRadius& r) { return r.is_infinite() ? "inf" : real10(r.value()); }

// Distribution from a JSON string, plus its optional "u0" entry.
std::pair<DistributionSpec, std::optional<MgfRadius>> parse_dist_arg(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("dist", std::string("not valid JSON: ") + e.what());
    }
    DistributionSpec dist = parse_distribution(j, "dist");
    std::optional<MgfRadius> u0;
    if (const auto it = j.find("u0"); it != j.end() && !it->is_null()) u0 = parse_u0(*it, "dist.u0");
    return {dist, u0};
}

std::vector<double> parse_real_list(const std::string& text, const std::string& field) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(field, "'" + item + "' is not a number");
        }
    }
    return out;
}

}  // namespace

std::string format_csv(const std::vector<RegretCurve>& curves) {
    std::string csv = "t,mean_pseudo_regret,ci_halfwidth,bound,policy\n";
    if (curves.empty()) return csv;
    const std::size_t rows = curves.front().checkpoints.size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (const auto& curve : curves) {
            csv += std::to_string(curve.checkpoints[r]);
            csv += ',';
            csv += real17(curve.mean_pseudo_regret[r]);
            csv += ',';
            csv += real17(curve.ci_halfwidth[r]);
            csv += ',';
            if (!curve.bound_curve.empty()) csv += real17(curve.bound_curve[r]);
            csv += ',';
            csv += curve.policy;
            csv += '\n';
        }
    }
    return csv;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot move result into '" + path.string() + "': " + ec.message());
    }
}

int cmd_simulate(const std::filesystem::path& config_path, unsigned workers, std::ostream& out, std::ostream& err) {
    try {
        const SimConfig config = load_config(config_path);
        const Experiment exp = resolve(config);
        const std::vector<RegretCurve> curves = compare_policies(exp.arms, exp.policies, config.horizon,
                                                                 config.episodes, exp.checkpoints,
                                                                 config.master_seed, workers);
        write_file_atomic(config.output_path, format_csv(curves));

        std::ostringstream line;
        line << "episodes=" << config.episodes << " T=" << config.horizon;
        for (const auto& c : curves) {
            line << " | " << c.policy << " mean_pseudo_regret=" << real10(c.mean_pseudo_regret.back())
                 << " bound=" << (c.bound_curve.empty() ? std::string("n/a") : real10(c.bound_curve.back()));
        }
        out << line.str() << '\n';
        return kOk;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::exception& e) {
        err << "invalid config: " << e.what() << '\n';
        return kInvalid;
    }
}

int cmd_bound(const std::vector<double>& gaps, double a1, double a2, const std::vector<double>& horizons,
              std::ostream& out, std::ostream& err) {
    try {
        if (horizons.empty()) throw std::invalid_argument("at least one horizon is required");
        std::ostringstream text;
        for (double horizon : horizons) {
            const double regret = regret_bound(RegretBoundQuery{gaps, a1, a2, horizon});
            text << "T=" << real10(horizon) << " regret_bound=" << real10(regret) << " expected_pulls=";
            for (std::size_t i = 0; i < gaps.size(); ++i) {
                if (i) text << ',';
                text << real10(expected_pulls_bound(gaps[i], a1, a2, horizon));
            }
            text << '\n';
        }
        out << text.str();
        return kOk;
    } catch (const std::exception& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kInvalid;
    }
}

int cmd_verify_tail(const std::string& dist_json, const std::vector<std::uint64_t>& ts,
                    const std::vector<double>& epsilons, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                    std::ostream& out, std::ostream& err) {
    bool all_pass = true;
    try {
        const auto [dist, u0_request] = parse_dist_arg(dist_json);
        const TailParams tail = derive_tail_params(dist, u0_request.value_or(default_u0(dist)));
        if (ts.empty() || epsilons.empty()) throw std::invalid_argument("t and eps lists must be non-empty");
        if (trials < kMinTailTrials) {
            throw std::invalid_argument("trials must be >= " + std::to_string(kMinTailTrials));
        }
        out << dist.family_name() << " u0=" << radius_text(tail.u0) << " zeta=" << real10(tail.zeta) << '\n';
        for (std::uint64_t t : ts) {
            const auto freqs = empirical_tail_frequencies(dist, t, epsilons, trials, seed, workers);
            for (std::size_t e = 0; e < epsilons.size(); ++e) {
                const TailBoundQuery q{epsilons[e], t, tail.zeta, tail.u0};
                const double bound = bernstein_bound(q);
                const double limit = bound + 3.0 * binomial_standard_error(bound, trials);
                const bool pass = freqs[e].upper <= limit && freqs[e].lower <= limit;
                all_pass = all_pass && pass;
                out << "t=" << t << " eps=" << real10(epsilons[e]) << " upper=" << real10(freqs[e].upper)
                    << " lower=" << real10(freqs[e].lower) << " bound=" << real10(bound) << " branch="
                    << (bernstein_branch(q) == BernsteinBranch::Quadratic ? "quadratic" : "linear") << ' '
                    << (pass ? "PASS" : "FAIL") << '\n';
            }
        }
    } catch (const std::exception& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kInvalid;
    }
    return all_pass ? kOk : kCheckFailed;
}

int cmd_params(const std::string& dist_json, const std::string& u0, std::ostream& out, std::ostream& err) {
    try {
        auto [dist, u0_request] = parse_dist_arg(dist_json);
        if (!u0.empty()) {
            nlohmann::json j;
            if (u0 == "inf" || u0 == "infinity") {
                j = "inf";
            } else {
                j = parse_real_list(u0, "u0").at(0);
            }
            u0_request = parse_u0(j, "u0");
        }
        const TailParams tail = derive_tail_params(dist, u0_request.value_or(default_u0(dist)));
        const PolicyParams params = PolicyParams::minimal(tail);
        out << "u0=" << radius_text(tail.u0) << " zeta=" << real10(tail.zeta) << " a1=" << real10(params.a1())
            << " a2=" << real10(params.a2()) << '\n';
        return kOk;
    } catch (const std::exception& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kInvalid;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Light-tailed UCB1 bandit simulation and bound verification"};
    app.require_subcommand(1);

    std::string config_path;
    unsigned workers = 0;
    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo regret experiment from a JSON config");
    simulate->add_option("--config", config_path, "Path to the experiment config")->required();
    simulate->add_option("--workers", workers, "Worker threads (0 = all cores)");

    std::string gaps_text;
    double a1 = 0.0;
    double a2 = 0.0;
    std::vector<double> horizons;
    auto* bound = app.add_subcommand("bound", "Evaluate the finite-time regret bound");
    bound->add_option("--gaps", gaps_text, "Comma-separated positive gaps (may be empty)")->required();
    bound->add_option("--a1", a1, "Square-root radius constant")->required();
    bound->add_option("--a2", a2, "Linear radius constant");
    bound->add_option("--horizons", horizons, "Comma-separated horizons T > 1")->required()->delimiter(',');

    std::string dist_json;
    std::vector<std::uint64_t> ts;
    std::vector<double> epsilons;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify-tail", "Compare empirical tail frequencies with the tail bound");
    verify->add_option("--dist", dist_json, "Distribution as JSON")->required();
    verify->add_option("--t", ts, "Comma-separated sample counts")->required()->delimiter(',');
    verify->add_option("--eps", epsilons, "Comma-separated deviations")->required()->delimiter(',');
    verify->add_option("--trials", trials, "Monte Carlo trials per cell");
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--workers", workers, "Worker threads (0 = all cores)");

    std::string u0_text;
    auto* params = app.add_subcommand("params", "Derive (u0, zeta) and the minimal policy constants");
    params->add_option("--dist", dist_json, "Distribution as JSON")->required();
    params->add_option("--u0", u0_text, "Requested u0 (number or inf)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalid;
    }

    if (simulate->parsed()) return cmd_simulate(config_path, workers, out, err);
    if (bound->parsed()) {
        std::vector<double> gaps;
        try {
            gaps = parse_real_list(gaps_text, "gaps");
        } catch (const std::exception& e) {
            err << "invalid parameters: " << e.what() << '\n';
            return kInvalid;
        }
        return cmd_bound(gaps, a1, a2, horizons, out, err);
    }
    if (verify->parsed()) return cmd_verify_tail(dist_json, ts, epsilons, trials, seed, workers, out, err);
    return cmd_params(dist_json, u0_text, out, err);
}

}  // namespace ucblt::cli
