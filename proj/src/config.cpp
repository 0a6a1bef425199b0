#include "ucblt/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ucblt/errors.hpp"
#include "ucblt/simulator.hpp"

namespace ucblt {
namespace {

using nlohmann::json;

double real_field(const json& obj, const std::string& key, const std::string& field) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(field + "." + key, "missing required field");
    if (!it->is_number()) throw ConfigError(field + "." + key, "must be a number");
    return it->get<double>();
}

// nlohmann stores literals built in C++ as signed, parsed text as unsigned.
bool is_non_negative_integer(const json& j) {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

std::uint64_t unsigned_field(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(key, "missing required field");
    if (!is_non_negative_integer(*it)) throw ConfigError(key, "must be a non-negative integer");
    return it->get<std::uint64_t>();
}

std::optional<double> optional_real(const json& obj, const std::string& key, const std::string& field) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) throw ConfigError(field + "." + key, "must be a number");
    return it->get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& field) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError(field.empty() ? key : field + "." + key, "unknown field");
    }
}

PolicyConfig parse_policy(const json& j, const std::string& field) {
    PolicyConfig p;
    if (j.is_string()) {
        p.kind = j.get<std::string>();
    } else if (j.is_object()) {
        reject_unknown(j, {"kind", "a1", "a2", "zeta", "u0"}, field);
        const auto kind = j.find("kind");
        if (kind == j.end() || !kind->is_string()) throw ConfigError(field + ".kind", "must be a policy name");
        p.kind = kind->get<std::string>();
        p.a1 = optional_real(j, "a1", field);
        p.a2 = optional_real(j, "a2", field);
        p.zeta = optional_real(j, "zeta", field);
        if (const auto u0 = j.find("u0"); u0 != j.end() && !u0->is_null()) p.u0 = parse_u0(*u0, field + ".u0");
    } else {
        throw ConfigError(field, "must be a policy name or object");
    }
    if (p.kind != "Ucb1" && p.kind != "Ucb1Lt" && p.kind != "UniformRandom") {
        throw ConfigError(field + ".kind", "unknown policy '" + p.kind + "' (expected Ucb1, Ucb1Lt or UniformRandom)");
    }
    return p;
}

json policy_to_json(const PolicyConfig& p) {
    json j = {{"kind", p.kind}};
    if (p.a1) j["a1"] = *p.a1;
    if (p.a2) j["a2"] = *p.a2;
    if (p.zeta) j["zeta"] = *p.zeta;
    if (p.u0) j["u0"] = to_json(*p.u0);
    return j;
}

PolicyKind resolve_policy(const PolicyConfig& p, const ArmSet& arms, const std::string& field) {
    if (p.kind == "Ucb1" || p.kind == "UniformRandom") {
        if (p.a1 || p.a2 || p.zeta || p.u0) {
            throw ConfigError(field, "parameter overrides apply only to Ucb1Lt");
        }
        return p.kind == "Ucb1" ? PolicyKind{Ucb1{}} : PolicyKind{UniformRandom{}};
    }
    const TailParams common = arms.common_tail();
    const double zeta = p.zeta.value_or(common.zeta);
    const MgfRadius u0 = p.u0.value_or(common.u0);
    if (!(zeta > 0.0) || !std::isfinite(zeta)) throw ConfigError(field + ".zeta", "zeta must be positive");
    const double a1 = p.a1.value_or(8.0 * zeta);
    const double a2 = p.a2.value_or(u0.is_infinite() ? 0.0 : a1 / (zeta * u0.value()));
    try {
        return Ucb1Lt{PolicyParams::make(a1, a2, zeta, u0)};
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        const std::string sub = what.rfind("a1", 0) == 0 ? ".a1" : what.rfind("a2", 0) == 0 ? ".a2" : "";
        throw ConfigError(field + sub, what);
    }
}

}  // namespace

MgfRadius parse_u0(const json& j, const std::string& field) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinity" || s == "Infinity") return MgfRadius::infinite();
        throw ConfigError(field, "must be a positive number or \"inf\"");
    }
    if (!j.is_number()) throw ConfigError(field, "must be a positive number or \"inf\"");
    try {
        return MgfRadius::finite(j.get<double>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
    }
}

json to_json(const MgfRadius& u0) {
    if (u0.is_infinite()) return "inf";
    return u0.value();
}

DistributionSpec parse_distribution(const json& j, const std::string& field) {
    if (!j.is_object()) throw ConfigError(field, "must be an object with a \"family\" field");
    const auto fam = j.find("family");
    if (fam == j.end() || !fam->is_string()) throw ConfigError(field + ".family", "missing family name");
    const std::string name = fam->get<std::string>();

    auto build = [&]() -> DistributionSpec::Family {
        if (name == "PointMass") {
            reject_unknown(j, {"family", "value", "u0"}, field);
            return PointMass{real_field(j, "value", field)};
        }
        if (name == "Bernoulli") {
            reject_unknown(j, {"family", "p", "u0"}, field);
            return Bernoulli{real_field(j, "p", field)};
        }
        if (name == "UniformBounded") {
            reject_unknown(j, {"family", "lo", "hi", "u0"}, field);
            return UniformBounded{real_field(j, "lo", field), real_field(j, "hi", field)};
        }
        if (name == "Gaussian") {
            reject_unknown(j, {"family", "mu", "sigma2", "u0"}, field);
            return Gaussian{real_field(j, "mu", field), real_field(j, "sigma2", field)};
        }
        if (name == "Exponential") {
            reject_unknown(j, {"family", "lambda", "u0"}, field);
            return Exponential{real_field(j, "lambda", field)};
        }
        if (name == "Poisson") {
            reject_unknown(j, {"family", "lambda", "u0"}, field);
            return Poisson{real_field(j, "lambda", field)};
        }
        if (name == "Laplace") {
            reject_unknown(j, {"family", "mu", "b", "u0"}, field);
            return Laplace{real_field(j, "mu", field), real_field(j, "b", field)};
        }
        throw ConfigError(field + ".family", "unknown distribution family '" + name + "'");
    };
    const DistributionSpec::Family family = build();
    try {
        return DistributionSpec{family};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
    }
}

json to_json(const DistributionSpec& dist) {
    json j = {{"family", std::string(dist.family_name())}};
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                j["value"] = d.value;
            } else if constexpr (std::is_same_v<T, Bernoulli>) {
                j["p"] = d.p;
            } else if constexpr (std::is_same_v<T, UniformBounded>) {
                j["lo"] = d.lo;
                j["hi"] = d.hi;
            } else if constexpr (std::is_same_v<T, Gaussian>) {
                j["mu"] = d.mu;
                j["sigma2"] = d.sigma2;
            } else if constexpr (std::is_same_v<T, Laplace>) {
                j["mu"] = d.mu;
                j["b"] = d.b;
            } else {
                j["lambda"] = d.lambda;
            }
        },
        dist.family());
    return j;
}

SimConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
    reject_unknown(j, {"arms", "policy", "horizon", "episodes", "master_seed", "checkpoints", "output_path"}, "");

    SimConfig config;
    const auto arms = j.find("arms");
    if (arms == j.end() || !arms->is_array()) throw ConfigError("arms", "must be a list of distributions");
    for (std::size_t i = 0; i < arms->size(); ++i) {
        const std::string field = "arms[" + std::to_string(i) + "]";
        const json& entry = (*arms)[i];
        ArmConfig arm{parse_distribution(entry, field), std::nullopt};
        if (const auto u0 = entry.find("u0"); u0 != entry.end() && !u0->is_null()) {
            arm.u0 = parse_u0(*u0, field + ".u0");
        }
        config.arms.push_back(arm);
    }

    const auto policy = j.find("policy");
    if (policy == j.end()) throw ConfigError("policy", "missing required field");
    if (policy->is_array()) {
        for (std::size_t i = 0; i < policy->size(); ++i) {
            config.policies.push_back(parse_policy((*policy)[i], "policy[" + std::to_string(i) + "]"));
        }
    } else {
        config.policies.push_back(parse_policy(*policy, "policy"));
    }

    config.horizon = unsigned_field(j, "horizon");
    config.episodes = unsigned_field(j, "episodes");
    config.master_seed = unsigned_field(j, "master_seed");

    if (const auto cps = j.find("checkpoints"); cps != j.end() && !cps->is_null()) {
        if (!cps->is_array()) throw ConfigError("checkpoints", "must be a list of times");
        std::vector<std::uint64_t> points;
        for (const auto& c : *cps) {
            if (!is_non_negative_integer(c)) throw ConfigError("checkpoints", "every checkpoint must be a positive integer");
            points.push_back(c.get<std::uint64_t>());
        }
        config.checkpoints = std::move(points);
    }

    const auto out = j.find("output_path");
    if (out == j.end() || !out->is_string()) throw ConfigError("output_path", "must be a path string");
    config.output_path = out->get<std::string>();
    return config;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const SimConfig& config) {
    json arms = json::array();
    for (const auto& arm : config.arms) {
        json a = to_json(arm.dist);
        if (arm.u0) a["u0"] = to_json(*arm.u0);
        arms.push_back(a);
    }
    json policy;
    if (config.policies.size() == 1) {
        policy = policy_to_json(config.policies.front());
    } else {
        policy = json::array();
        for (const auto& p : config.policies) policy.push_back(policy_to_json(p));
    }
    json j = {
        {"arms", arms},
        {"policy", policy},
        {"horizon", config.horizon},
        {"episodes", config.episodes},
        {"master_seed", config.master_seed},
        {"output_path", config.output_path},
    };
    if (config.checkpoints) j["checkpoints"] = *config.checkpoints;
    return j;
}

Experiment resolve(const SimConfig& config) {
    if (config.arms.empty()) throw ConfigError("arms", "at least one arm is required");
    if (config.policies.empty()) throw ConfigError("policy", "at least one policy is required");
    if (config.output_path.empty()) throw ConfigError("output_path", "must not be empty");
    if (config.episodes < 1) throw ConfigError("episodes", "must be >= 1");
    if (config.horizon < config.arms.size()) {
        throw ConfigError("horizon", "must be at least the number of arms (" + std::to_string(config.arms.size()) + ")");
    }

    std::vector<ArmModel> models;
    for (std::size_t i = 0; i < config.arms.size(); ++i) {
        try {
            models.emplace_back(config.arms[i].dist, config.arms[i].u0);
        } catch (const std::domain_error& e) {
            throw ConfigError("arms[" + std::to_string(i) + "].u0", e.what());
        }
    }
    ArmSet arms(std::move(models));

    std::vector<PolicyKind> policies;
    for (std::size_t i = 0; i < config.policies.size(); ++i) {
        const std::string field = config.policies.size() == 1 ? "policy" : "policy[" + std::to_string(i) + "]";
        policies.push_back(resolve_policy(config.policies[i], arms, field));
    }

    std::vector<std::uint64_t> checkpoints = config.checkpoints.value_or(default_checkpoints(config.horizon));
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1 || checkpoints[i] > config.horizon) {
            throw ConfigError("checkpoints", "every checkpoint must lie in [1, horizon]");
        }
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
            throw ConfigError("checkpoints", "must be strictly increasing");
        }
    }
    if (checkpoints.empty()) throw ConfigError("checkpoints", "must not be empty");

    return Experiment{std::move(arms), std::move(policies), std::move(checkpoints)};
}

}  // namespace ucblt
