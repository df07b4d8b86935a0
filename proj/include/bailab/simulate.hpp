#pragma once

/*
 * Seeded Monte-Carlo engine.
 *
 * Replications are independent work units: replication r of budget n runs on
 * its own stream seeded by derive_seed(master, n, r), results land in
 * preallocated slots, and aggregation is a sequential fold in (budget,
 * replication) order. Reports are therefore bit-identical for any worker
 * count and any scheduling order, and extending the replication count leaves
 * existing trajectories unchanged.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bailab/arms.hpp"
#include "bailab/complexity.hpp"
#include "bailab/errors.hpp"
#include "bailab/policies.hpp"
#include "bailab/rng.hpp"

namespace bailab {

struct SimOptions {
    int workers = 1;
};

// Wilson 95% score interval; stable at zero error counts.
struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

inline WilsonInterval wilson95(std::int64_t errors, std::int64_t n) {
    if (n <= 0) throw usage_error("wilson95 requires n >= 1");
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double z2 = z * z;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(errors) / nn;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    WilsonInterval w;
    // at the boundary counts the exact bounds are 0 and 1; don't let float
    // residue leak through
    w.low = errors == 0 ? 0.0 : std::max(0.0, center - half);
    w.high = errors == n ? 1.0 : std::min(1.0, center + half);
    return w;
}

struct BudgetRow {
    std::int64_t budget = 0;
    std::int64_t replications = 0;
    std::int64_t errors = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double neg_log_p = 0.0;    // -ln(p_hat), meaningful only when errors > 0
    bool has_neg_log_p = false;
    std::vector<std::uint8_t> correct; // per replication, in index order
};

struct FixedBudgetReport {
    std::vector<BudgetRow> rows;
    std::uint64_t master_seed = 0;
};

namespace detail {

// fn(r) for r = 0..count-1, split over workers by residue class; fn must only
// touch slot r of preallocated output
template <typename Fn>
inline void parallel_replications(std::int64_t count, int workers, const Fn& fn) {
    if (workers <= 1 || count < 2) {
        for (std::int64_t r = 0; r < count; ++r) fn(r);
        return;
    }
    const int nw = static_cast<int>(std::min<std::int64_t>(workers, count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int wkr = 0; wkr < nw; ++wkr) {
        pool.emplace_back([&, wkr]() {
            for (std::int64_t r = wkr; r < count; r += nw) fn(r);
        });
    }
    for (std::thread& th : pool) th.join();
}

inline int run_budget_episode(const BanditInstance& inst, const Policy& policy,
                              std::int64_t budget, std::uint64_t seed) {
    Rng rng(seed);
    HistoryState h(inst.k());
    for (std::int64_t t = 0; t < budget; ++t) {
        const int a = policy.next_arm(h);
        h.record(a, sample(inst.arms[static_cast<std::size_t>(a)], rng));
    }
    return policy.recommend(h);
}

} // namespace detail

inline FixedBudgetReport run_fixed_budget(const BanditInstance& inst, const Policy& policy,
                                          const std::vector<std::int64_t>& budgets,
                                          std::int64_t replications, std::uint64_t master_seed,
                                          const SimOptions& opts = {}) {
    validate(inst);
    if (replications < 1) throw usage_error("replications must be >= 1");
    if (budgets.empty()) throw usage_error("at least one budget is required");
    for (std::size_t i = 0; i + 1 < budgets.size(); ++i)
        if (!(budgets[i] < budgets[i + 1]))
            throw usage_error("budgets must be strictly increasing");
    if (budgets.front() < 1) throw usage_error("budgets must be >= 1");

    const int star = best_arm(inst);
    FixedBudgetReport report;
    report.master_seed = master_seed;
    report.rows.reserve(budgets.size());

    for (const std::int64_t n : budgets) {
        BudgetRow row;
        row.budget = n;
        row.replications = replications;
        row.correct.assign(static_cast<std::size_t>(replications), 0);
        detail::parallel_replications(replications, opts.workers, [&](std::int64_t r) {
            const std::uint64_t seed =
                derive_seed(master_seed, static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(r));
            const int rec = detail::run_budget_episode(inst, policy, n, seed);
            row.correct[static_cast<std::size_t>(r)] = rec == star ? 1 : 0;
        });
        for (std::int64_t r = 0; r < replications; ++r)
            if (!row.correct[static_cast<std::size_t>(r)]) ++row.errors;
        row.p_hat = static_cast<double>(row.errors) / static_cast<double>(replications);
        const WilsonInterval ci = wilson95(row.errors, replications);
        row.ci_low = ci.low;
        row.ci_high = ci.high;
        if (row.errors > 0) {
            row.neg_log_p = -std::log(row.p_hat);
            row.has_neg_log_p = true;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

struct RateWindow {
    double p_min = 1e-4;
    double p_max = 0.3;
};

struct RateEstimate {
    double slope = 0.0;        // decay rate; empirical counterpart of 1/gamma
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_stderr = 0.0;
    std::vector<std::int64_t> budgets_used;
    RateWindow window;
};

// Least-squares fit of -ln(p_hat) against n over budgets whose p_hat lies in
// the window and has at least one observed error.
inline RateEstimate estimate_rate(const FixedBudgetReport& report, RateWindow window = {}) {
    std::vector<double> xs, ys;
    RateEstimate est;
    est.window = window;
    for (const BudgetRow& row : report.rows) {
        if (row.errors <= 0) continue;
        if (row.p_hat < window.p_min || row.p_hat > window.p_max) continue;
        xs.push_back(static_cast<double>(row.budget));
        ys.push_back(-std::log(row.p_hat));
        est.budgets_used.push_back(row.budget);
    }
    const std::size_t m = xs.size();
    if (m < 3)
        throw insufficient_data_error(
            "rate estimate needs at least 3 budgets with errors inside the window, got " +
            std::to_string(m));

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double resid = ys[i] - (est.intercept + est.slope * xs[i]);
        rss += resid * resid;
    }
    est.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
    est.slope_stderr =
        m > 2 ? std::sqrt(std::max(0.0, rss / static_cast<double>(m - 2)) / sxx) : 0.0;
    return est;
}

struct FixedConfidenceReport {
    double delta = 0.0;
    std::int64_t replications = 0;
    std::vector<std::int64_t> taus;       // per replication stopping times
    std::vector<std::uint8_t> correct;    // per replication
    std::vector<std::uint8_t> timed_out;  // per replication
    double mean_tau = 0.0;
    double error_rate = 0.0;
    double ratio = 0.0; // mean_tau / ln(1/delta)
    std::int64_t timeouts = 0;
};

inline FixedConfidenceReport run_fixed_confidence(const BanditInstance& inst,
                                                  const Policy& policy, double delta,
                                                  std::int64_t replications,
                                                  std::uint64_t master_seed,
                                                  const SimOptions& opts = {},
                                                  std::int64_t t_max = 10000000) {
    validate(inst);
    if (!policy.has_stopping_rule())
        throw usage_error("run_fixed_confidence requires a policy with a stopping rule");
    if (!(delta > 0.0 && delta < 1.0)) throw usage_error("delta must lie in (0, 1)");
    if (replications < 1) throw usage_error("replications must be >= 1");

    const int star = best_arm(inst);
    FixedConfidenceReport rep;
    rep.delta = delta;
    rep.replications = replications;
    rep.taus.assign(static_cast<std::size_t>(replications), 0);
    rep.correct.assign(static_cast<std::size_t>(replications), 0);
    rep.timed_out.assign(static_cast<std::size_t>(replications), 0);

    detail::parallel_replications(replications, opts.workers, [&](std::int64_t r) {
        Rng rng(derive_seed(master_seed, 0, static_cast<std::uint64_t>(r)));
        HistoryState h(inst.k());
        bool timeout = true;
        while (h.t < t_max) {
            const int a = policy.next_arm(h);
            h.record(a, sample(inst.arms[static_cast<std::size_t>(a)], rng));
            if (policy.should_stop(h, delta)) {
                timeout = false;
                break;
            }
        }
        rep.taus[static_cast<std::size_t>(r)] = h.t;
        rep.correct[static_cast<std::size_t>(r)] = policy.recommend(h) == star ? 1 : 0;
        rep.timed_out[static_cast<std::size_t>(r)] = timeout ? 1 : 0;
    });

    double sum_tau = 0.0;
    std::int64_t wrong = 0;
    for (std::int64_t r = 0; r < replications; ++r) {
        sum_tau += static_cast<double>(rep.taus[static_cast<std::size_t>(r)]);
        if (!rep.correct[static_cast<std::size_t>(r)]) ++wrong;
        if (rep.timed_out[static_cast<std::size_t>(r)]) ++rep.timeouts;
    }
    rep.mean_tau = sum_tau / static_cast<double>(replications);
    rep.error_rate = static_cast<double>(wrong) / static_cast<double>(replications);
    rep.ratio = rep.mean_tau / std::log(1.0 / delta);
    return rep;
}

// Candidate policy vs uniform sampling on identical derived seeds.
struct DominanceProbe {
    FixedBudgetReport candidate_report;
    FixedBudgetReport uniform_report;
    RateEstimate candidate_rate;
    RateEstimate uniform_rate;
    double rate_difference = 0.0; // candidate.slope - uniform.slope
    double inv_gamma_fc = 0.0;    // solver context: 1 / gamma
    double inv_gamma_na = 0.0;
};

inline DominanceProbe probe_uniform_dominance(const BanditInstance& inst, const Policy& policy,
                                              const std::vector<std::int64_t>& budgets,
                                              std::int64_t replications,
                                              std::uint64_t master_seed,
                                              RateWindow window = {}, double tol = 1e-8,
                                              const SimOptions& opts = {}) {
    DominanceProbe probe;
    probe.candidate_report = run_fixed_budget(inst, policy, budgets, replications,
                                              master_seed, opts);
    const std::unique_ptr<Policy> unif = uniform_policy();
    probe.uniform_report = run_fixed_budget(inst, *unif, budgets, replications,
                                            master_seed, opts);
    probe.inv_gamma_fc = gamma_fc(inst, tol).objective_value;
    probe.inv_gamma_na = gamma_na(inst, tol).objective_value;
    probe.candidate_rate = estimate_rate(probe.candidate_report, window);
    probe.uniform_rate = estimate_rate(probe.uniform_report, window);
    probe.rate_difference = probe.candidate_rate.slope - probe.uniform_rate.slope;
    return probe;
}

// Empirical decay rates of uniform and of the two oracle-weight policies,
// tabulated next to both solver complexities. Evidence about the open
// questions, never a resolution of them.
struct ConjectureProbe {
    ComplexityResult fc;
    ComplexityResult na;
    struct Row {
        std::string policy;
        RateEstimate rate;
        double inv_slope = 0.0; // empirical gamma estimate
    };
    std::vector<Row> rows;
    std::string label = "empirical evidence, not a resolution";
};

inline ConjectureProbe probe_conjectures(const BanditInstance& inst,
                                         const std::vector<std::int64_t>& budgets,
                                         std::int64_t replications, std::uint64_t master_seed,
                                         RateWindow window = {}, double tol = 1e-8,
                                         const SimOptions& opts = {}) {
    ConjectureProbe probe{gamma_fc(inst, tol), gamma_na(inst, tol), {},
                          "empirical evidence, not a resolution"};

    const std::unique_ptr<Policy> unif = uniform_policy();
    const std::unique_ptr<Policy> track_fc = fixed_weight_policy(probe.fc.optimal_weights);
    const std::unique_ptr<Policy> track_na = fixed_weight_policy(probe.na.optimal_weights);
    const std::pair<std::string, const Policy*> entries[] = {
        {"uniform", unif.get()},
        {"fixed_weight_w_star_fc", track_fc.get()},
        {"fixed_weight_w_star_na", track_na.get()},
    };
    for (const auto& [label, pol] : entries) {
        const FixedBudgetReport rep =
            run_fixed_budget(inst, *pol, budgets, replications, master_seed, opts);
        ConjectureProbe::Row row;
        row.policy = label;
        row.rate = estimate_rate(rep, window);
        row.inv_slope = 1.0 / row.rate.slope;
        probe.rows.push_back(std::move(row));
    }
    return probe;
}

} // namespace bailab
