// bailab command line front end.
//
//   bailab complexity --config cfg.json   solver report (JSON)
//   bailab simulate   --config cfg.json   fixed-budget CSV + rate sidecar,
//                                         or fixed-confidence JSON when the
//                                         policy has a stopping rule
//   bailab probe      --config cfg.json   dominance + conjecture report (JSON)
//
// Exit codes: 0 ok, 2 config/instance error, 3 solver failure,
// 4 insufficient data for the rate regression.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bailab/bailab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInsufficientData = 4;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<int> workers_override;
};

bailab::ExperimentConfig load(const CommonArgs& args) {
    bailab::ExperimentConfig cfg = bailab::load_config(args.config_path);
    if (args.seed_override) cfg.seed = *args.seed_override;
    if (args.workers_override) cfg.workers = *args.workers_override;
    if (cfg.output_path.empty())
        throw bailab::config_error("config is missing required field \"output_path\"");
    return cfg;
}

int cmd_complexity(const CommonArgs& args) {
    using namespace bailab;
    const ExperimentConfig cfg = load(args);
    const BanditInstance inst = build_instance(cfg);

    const ComplexityResult fc = gamma_fc(inst, cfg.tol, cfg.solver_max_iterations);
    const ComplexityResult na = gamma_na(inst, cfg.tol, cfg.solver_max_iterations);

    jsonio::Object doc;
    doc.field("family", jsonio::Value::string(cfg.family))
        .field("means", jsonio::Value::number_array(cfg.means));
    if (cfg.variances)
        doc.field("variances", jsonio::Value::number_array(*cfg.variances));
    doc.field("best_arm", jsonio::Value::integer(best_arm(inst)))
        .field("gamma_fc", jsonio::Value::number(fc.gamma))
        .field("gamma_na", jsonio::Value::number(na.gamma))
        .field("w_star_fc", jsonio::Value::number_array(fc.optimal_weights.values()))
        .field("w_star_na", jsonio::Value::number_array(na.optimal_weights.values()))
        .field("objective_fc", jsonio::Value::number(fc.objective_value))
        .field("objective_na", jsonio::Value::number(na.objective_value))
        .field("challenger_costs_fc", transport_costs_json(fc.challenger_costs))
        .field("challenger_costs_na", transport_costs_json(na.challenger_costs))
        .field("diagnostics",
               jsonio::Object()
                   .field("fc", solver_diagnostics_json(fc.diagnostics))
                   .field("na", solver_diagnostics_json(na.diagnostics))
                   .field("tol", jsonio::Value::number(cfg.tol))
                   .value());
    write_text_file(cfg.output_path, doc.document());
    return kExitOk;
}

int cmd_simulate(const CommonArgs& args) {
    using namespace bailab;
    const ExperimentConfig cfg = load(args);
    const BanditInstance inst = build_instance(cfg);
    const std::unique_ptr<Policy> policy = build_policy(cfg, inst);
    if (cfg.replications < 1)
        throw config_error("config requires \"replications\" >= 1");
    const SimOptions opts{cfg.workers};

    if (policy->has_stopping_rule()) {
        // fixed-confidence run: JSON report at output_path
        if (!cfg.delta && !(cfg.policy && cfg.policy->delta))
            throw config_error("fixed-confidence simulation requires \"delta\"");
        const double delta = cfg.policy && cfg.policy->delta ? *cfg.policy->delta : *cfg.delta;
        const FixedConfidenceReport rep = run_fixed_confidence(
            inst, *policy, delta, cfg.replications, cfg.seed, opts, cfg.t_max);
        std::vector<std::int64_t> correct(rep.correct.begin(), rep.correct.end());
        std::vector<std::int64_t> timed_out(rep.timed_out.begin(), rep.timed_out.end());
        jsonio::Object doc;
        doc.field("mode", jsonio::Value::string("fixed_confidence"))
            .field("policy", jsonio::Value::string(policy->name()))
            .field("delta", jsonio::Value::number(rep.delta))
            .field("replications", jsonio::Value::integer(rep.replications))
            .field("mean_tau", jsonio::Value::number(rep.mean_tau))
            .field("error_rate", jsonio::Value::number(rep.error_rate))
            .field("ratio", jsonio::Value::number(rep.ratio))
            .field("timeouts", jsonio::Value::integer(rep.timeouts))
            .field("taus", jsonio::Value::integer_array(rep.taus))
            .field("correct", jsonio::Value::integer_array(correct))
            .field("timed_out", jsonio::Value::integer_array(timed_out));
        write_text_file(cfg.output_path, doc.document());
        return kExitOk;
    }

    if (cfg.budgets.empty())
        throw config_error("fixed-budget simulation requires \"budgets\"");
    const FixedBudgetReport report =
        run_fixed_budget(inst, *policy, cfg.budgets, cfg.replications, cfg.seed, opts);
    write_text_file(cfg.output_path, fixed_budget_csv(report));

    const std::string sidecar_path = cfg.output_path + ".rate.json";
    try {
        const RateEstimate est = estimate_rate(report, cfg.rate_window);
        jsonio::Object doc;
        doc.field("status", jsonio::Value::string("ok"))
            .field("rate", rate_estimate_json(est));
        write_text_file(sidecar_path, doc.document());
    } catch (const insufficient_data_error& e) {
        jsonio::Object doc;
        doc.field("status", jsonio::Value::string("insufficient_data"))
            .field("message", jsonio::Value::string(e.what()));
        write_text_file(sidecar_path, doc.document());
        std::cerr << "bailab: " << e.what() << "\n";
        return kExitInsufficientData;
    }
    return kExitOk;
}

int cmd_probe(const CommonArgs& args) {
    using namespace bailab;
    const ExperimentConfig cfg = load(args);
    const BanditInstance inst = build_instance(cfg);
    const std::unique_ptr<Policy> policy = build_policy(cfg, inst);
    if (cfg.budgets.empty() || cfg.replications < 1)
        throw config_error("probe requires \"budgets\" and \"replications\"");
    if (policy->has_stopping_rule())
        throw config_error("probe requires a fixed-budget sampling policy");
    const SimOptions opts{cfg.workers};

    const DominanceProbe dom = probe_uniform_dominance(
        inst, *policy, cfg.budgets, cfg.replications, cfg.seed, cfg.rate_window, cfg.tol, opts);
    const ConjectureProbe con = probe_conjectures(inst, cfg.budgets, cfg.replications,
                                                  cfg.seed, cfg.rate_window, cfg.tol, opts);

    jsonio::Object conj;
    conj.field("label", jsonio::Value::string(con.label))
        .field("gamma_fc", jsonio::Value::number(con.fc.gamma))
        .field("gamma_na", jsonio::Value::number(con.na.gamma))
        .field("rows",
               jsonio::Value::array(con.rows, [](const ConjectureProbe::Row& row) {
                   return jsonio::Object()
                       .field("policy", jsonio::Value::string(row.policy))
                       .field("inv_slope", jsonio::Value::number(row.inv_slope))
                       .field("rate", rate_estimate_json(row.rate))
                       .value();
               }));

    jsonio::Object doc;
    doc.field("disclaimer", jsonio::Value::string("empirical evidence only"))
        .field("candidate_policy", jsonio::Value::string(policy->name()))
        .field("gamma_fc", jsonio::Value::number(con.fc.gamma))
        .field("gamma_na", jsonio::Value::number(con.na.gamma))
        .field("inv_gamma_fc", jsonio::Value::number(dom.inv_gamma_fc))
        .field("inv_gamma_na", jsonio::Value::number(dom.inv_gamma_na))
        .field("w_star_fc", jsonio::Value::number_array(con.fc.optimal_weights.values()))
        .field("w_star_na", jsonio::Value::number_array(con.na.optimal_weights.values()))
        .field("rate_candidate", rate_estimate_json(dom.candidate_rate))
        .field("rate_uniform", rate_estimate_json(dom.uniform_rate))
        .field("rate_difference", jsonio::Value::number(dom.rate_difference))
        .field("conjectures", conj.value());
    write_text_file(cfg.output_path, doc.document());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"best-arm identification complexity laboratory"};
    app.require_subcommand(1);

    CommonArgs args;
    std::uint64_t seed_flag = 0;
    int workers_flag = 0;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", args.config_path, "path to the JSON experiment config")
            ->required();
        cmd->add_option("--seed", seed_flag, "override the config's master seed")
            ->each([&](const std::string&) { args.seed_override = seed_flag; });
        cmd->add_option("--workers", workers_flag, "override the config's worker count")
            ->each([&](const std::string&) { args.workers_override = workers_flag; });
    };

    CLI::App* complexity = app.add_subcommand(
        "complexity", "compute both complexity functionals and optimal weights");
    CLI::App* simulate = app.add_subcommand(
        "simulate", "run seeded Monte-Carlo simulation and write reports");
    CLI::App* probe = app.add_subcommand(
        "probe", "uniform-dominance and conjecture probes with solver context");
    add_common(complexity);
    add_common(simulate);
    add_common(probe);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig; // help/version exit 0, bad usage exits 2
    }

    try {
        if (complexity->parsed()) return cmd_complexity(args);
        if (simulate->parsed()) return cmd_simulate(args);
        if (probe->parsed()) return cmd_probe(args);
    } catch (const bailab::convergence_error& e) {
        std::cerr << "bailab: solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const bailab::insufficient_data_error& e) {
        std::cerr << "bailab: " << e.what() << "\n";
        return kExitInsufficientData;
    } catch (const bailab::error& e) {
        std::cerr << "bailab: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "bailab: unexpected error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
