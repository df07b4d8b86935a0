#pragma once

/*
 * Experiment configuration: one JSON file drives every CLI command.
 *
 *   {
 *     "family": "gaussian" | "bernoulli",
 *     "means": [...],
 *     "variances": [...],              // gaussian only
 *     "policy": {"name": "...", "weights": [...], "delta": ...},
 *     "budgets": [...],
 *     "replications": ...,
 *     "delta": ...,
 *     "seed": ...,
 *     "tol": ...,                      // default 1e-8
 *     "output_path": "...",
 *     "workers": ...,                  // default 1
 *     "rate_window": [p_min, p_max],   // default [1e-4, 0.3]
 *     "t_max": ...,                    // default 1e7
 *     "solver_max_iterations": ...     // default 1e5
 *   }
 *
 * Unknown policy names, missing required fields and invalid instances all
 * surface as specific config/validation errors (CLI exit code 2).
 */

#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bailab/arms.hpp"
#include "bailab/errors.hpp"
#include "bailab/policies.hpp"
#include "bailab/simulate.hpp"

namespace bailab {

struct PolicyConfig {
    std::string name;
    std::optional<std::vector<double>> weights; // fixed_weight
    std::optional<double> delta;                // track_and_stop
};

struct ExperimentConfig {
    std::string family;
    std::vector<double> means;
    std::optional<std::vector<double>> variances;
    std::optional<PolicyConfig> policy;
    std::vector<std::int64_t> budgets;
    std::int64_t replications = 0;
    std::optional<double> delta;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    std::string output_path;
    int workers = 1;
    RateWindow rate_window;
    std::int64_t t_max = 10000000;
    std::int64_t solver_max_iterations = 100000;
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw config_error(std::string("config is missing required field \"") + key + "\"");
    return j.at(key);
}

inline std::vector<double> as_double_vector(const nlohmann::json& j, const char* key) {
    if (!j.is_array() || j.empty())
        throw config_error(std::string("field \"") + key + "\" must be a non-empty array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number())
            throw config_error(std::string("field \"") + key + "\" must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.family = detail::require_field(j, "family").get<std::string>();
    if (cfg.family != "gaussian" && cfg.family != "bernoulli")
        throw config_error("family must be \"gaussian\" or \"bernoulli\", got \"" +
                           cfg.family + "\"");
    cfg.means = detail::as_double_vector(detail::require_field(j, "means"), "means");
    if (j.contains("variances"))
        cfg.variances = detail::as_double_vector(j.at("variances"), "variances");
    if (cfg.family == "gaussian" && !cfg.variances)
        throw config_error("gaussian instances require a \"variances\" array");

    if (j.contains("policy")) {
        const auto& p = j.at("policy");
        PolicyConfig pc;
        pc.name = detail::require_field(p, "name").get<std::string>();
        if (p.contains("weights"))
            pc.weights = detail::as_double_vector(p.at("weights"), "policy.weights");
        if (p.contains("delta")) pc.delta = p.at("delta").get<double>();
        cfg.policy = std::move(pc);
    }

    if (j.contains("budgets")) {
        for (const auto& v : j.at("budgets")) {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
                throw config_error("budgets must be positive integers");
            cfg.budgets.push_back(v.get<std::int64_t>());
        }
        for (std::size_t i = 0; i + 1 < cfg.budgets.size(); ++i)
            if (!(cfg.budgets[i] < cfg.budgets[i + 1]))
                throw config_error("budgets must be strictly increasing");
    }
    if (j.contains("replications")) cfg.replications = j.at("replications").get<std::int64_t>();
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    if (j.contains("workers")) {
        cfg.workers = j.at("workers").get<int>();
        if (cfg.workers < 1) throw config_error("workers must be >= 1");
    }
    if (j.contains("rate_window")) {
        const auto w = detail::as_double_vector(j.at("rate_window"), "rate_window");
        if (w.size() != 2 || !(w[0] > 0.0) || !(w[0] < w[1]) || !(w[1] <= 1.0))
            throw config_error("rate_window must be [p_min, p_max] with 0 < p_min < p_max <= 1");
        cfg.rate_window = RateWindow{w[0], w[1]};
    }
    if (j.contains("t_max")) {
        cfg.t_max = j.at("t_max").get<std::int64_t>();
        if (cfg.t_max < 1) throw config_error("t_max must be >= 1");
    }
    if (j.contains("solver_max_iterations")) {
        cfg.solver_max_iterations = j.at("solver_max_iterations").get<std::int64_t>();
        if (cfg.solver_max_iterations < 1)
            throw config_error("solver_max_iterations must be >= 1");
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

inline BanditInstance build_instance(const ExperimentConfig& cfg) {
    if (cfg.family == "gaussian")
        return BanditInstance::gaussian(cfg.means, *cfg.variances);
    return BanditInstance::bernoulli(cfg.means);
}

inline std::unique_ptr<Policy> build_policy(const ExperimentConfig& cfg,
                                            const BanditInstance& inst) {
    if (!cfg.policy) throw config_error("config is missing required field \"policy\"");
    const PolicyConfig& pc = *cfg.policy;
    if (pc.name == "uniform") return uniform_policy();
    if (pc.name == "fixed_weight") {
        if (!pc.weights)
            throw config_error("policy \"fixed_weight\" requires \"weights\"");
        if (pc.weights->size() != inst.k())
            throw config_error("policy weights must have one entry per arm");
        return fixed_weight_policy(Weights(*pc.weights));
    }
    if (pc.name == "sigma_proportional") {
        if (inst.k() != 2 || inst.family() != ArmFamily::GaussianKnownVariance)
            throw usage_error("sigma_proportional requires a two-armed gaussian instance");
        return sigma_proportional_policy(inst.arms[0].variance, inst.arms[1].variance);
    }
    if (pc.name == "track_and_stop") {
        const std::optional<double> delta = pc.delta ? pc.delta : cfg.delta;
        if (!delta)
            throw config_error("policy \"track_and_stop\" requires \"delta\"");
        std::vector<double> variances;
        if (inst.family() == ArmFamily::GaussianKnownVariance)
            for (const Arm& a : inst.arms) variances.push_back(a.variance);
        return track_and_stop_policy(*delta, inst.family(), std::move(variances));
    }
    throw config_error("unknown policy \"" + pc.name + "\"");
}

} // namespace bailab
