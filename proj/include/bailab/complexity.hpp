#pragma once

/*
 * Sample-complexity functionals over the probability simplex.
 *
 * Both functionals share one shape: maximize, over weight vectors w on the
 * simplex, the smallest per-challenger transport cost
 *
 *   F(w) = min_{j != best} pair_cost(w_best, w_j; order),
 *
 * and report gamma = 1 / F(w*). F is a minimum of concave functions of w and
 * therefore concave; the outer search is exact line search on the best arm's
 * weight alpha, where the inner slice maximum is found by equalizing all
 * challenger costs at a common level (each cost is zero at w_j = 0 and grows
 * monotonically in w_j, so the equalizing level and the per-challenger
 * weights are unique and bisection finds both).
 *
 * Two-armed Gaussian instances additionally have the exact closed form
 * gamma = 2 (s1 + s2)^2 / gap^2 with weights proportional to the standard
 * deviations; the solver is tested against it.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bailab/arms.hpp"
#include "bailab/errors.hpp"
#include "bailab/transport.hpp"

namespace bailab {

struct SolverDiagnostics {
    std::int64_t iterations = 0;        // objective evaluations in the outer search
    double achieved_tol = 0.0;          // relative value spread over the final bracket
    double equalization_residual = 0.0; // max_j |cost_j - min cost| at w*
    bool exact = false;                 // true for closed-form results
};

struct ComplexityResult {
    double gamma = 0.0;                       // 1 / objective_value
    Weights optimal_weights;                  // w*
    std::vector<TransportCost> challenger_costs; // per challenger, at w*
    double objective_value = 0.0;             // min over challengers at w*
    SolverDiagnostics diagnostics;
};

// Solver ran out of its iteration budget; carries the best iterate found.
class convergence_error : public error {
public:
    convergence_error(const std::string& msg, ComplexityResult best)
        : error(msg), best_iterate(std::move(best)) {}
    ComplexityResult best_iterate;
};

namespace detail {

inline constexpr std::int64_t kOuterIterationBudget = 100000;

struct ChallengerArm {
    int index;
    const Arm* arm;
};

// Weight beta on one challenger that lifts its pair cost to level c, given
// alpha on the best arm. Gaussian inverts the closed form; Bernoulli bisects
// the monotone map beta -> cost.
inline double challenger_weight_for_level(const Arm& best, const Arm& chal,
                                          double alpha, double c, double beta_hi,
                                          CostOrder order) {
    if (c <= 0.0) return 0.0;
    if (best.family == ArmFamily::GaussianKnownVariance) {
        const double gap = best.mean - chal.mean;
        const double den = 0.5 * alpha * gap * gap - c * best.variance;
        if (den <= 0.0) return beta_hi; // level not reachable below beta_hi
        return std::min(beta_hi, c * alpha * chal.variance / den);
    }
    double lo = 0.0, hi = beta_hi;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = pair_transport(best, chal, alpha, mid, order).value;
        (v < c ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Inner slice maximum: with w_best = alpha fixed, distribute 1 - alpha over
// the challengers so that all pair costs equal a common level. Returns that
// level; betas (when requested) receive the distribution.
inline double equalized_level(const Arm& best, const std::vector<ChallengerArm>& chals,
                              double alpha, CostOrder order,
                              std::vector<double>* betas = nullptr) {
    const double rem = 1.0 - alpha;
    if (!(alpha > 0.0) || !(rem > 0.0)) return 0.0;

    double c_cap = std::numeric_limits<double>::infinity();
    for (const ChallengerArm& ch : chals)
        c_cap = std::min(c_cap, pair_transport(best, *ch.arm, alpha, rem, order).value);
    if (!(c_cap > 0.0)) return 0.0;

    double lo = 0.0, hi = c_cap;
    for (int it = 0; it < 90 && hi - lo > 1e-15 * c_cap; ++it) {
        const double mid = 0.5 * (lo + hi);
        double s = 0.0;
        for (const ChallengerArm& ch : chals)
            s += challenger_weight_for_level(best, *ch.arm, alpha, mid, rem, order);
        (s < rem ? lo : hi) = mid;
    }
    const double c = 0.5 * (lo + hi);
    if (betas) {
        betas->clear();
        for (const ChallengerArm& ch : chals)
            betas->push_back(challenger_weight_for_level(best, *ch.arm, alpha, c, rem, order));
    }
    return c;
}

inline ComplexityResult solve_complexity(const BanditInstance& inst, CostOrder order,
                                         double tol,
                                         std::int64_t iteration_budget = kOuterIterationBudget) {
    validate(inst);
    if (!(tol >= 1e-10))
        throw usage_error("solver tolerance must be >= 1e-10");

    const int star = best_arm(inst);
    const Arm& best = inst.arms[static_cast<std::size_t>(star)];
    std::vector<ChallengerArm> chals;
    for (std::size_t j = 0; j < inst.k(); ++j)
        if (static_cast<int>(j) != star)
            chals.push_back({static_cast<int>(j), &inst.arms[j]});

    std::int64_t evals = 0;
    auto objective = [&](double alpha) {
        ++evals;
        return equalized_level(best, chals, alpha, order);
    };

    // golden-section search for the concave slice maximum over alpha in (0, 1)
    const double invphi = 0.6180339887498949;
    const double target = std::max(1e-11, 0.02 * std::sqrt(tol));
    double a = 0.0, b = 1.0;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while (b - a > target && evals < iteration_budget) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = objective(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = objective(x1);
        }
    }

    const double alpha = f1 > f2 ? x1 : x2;
    std::vector<double> betas;
    const double level = equalized_level(best, chals, alpha, order, &betas);
    ++evals;

    // assemble w*, renormalized so the simplex invariant holds exactly
    std::vector<double> w(inst.k(), 0.0);
    w[static_cast<std::size_t>(star)] = alpha;
    double sum = alpha;
    for (std::size_t c = 0; c < chals.size(); ++c) {
        w[static_cast<std::size_t>(chals[c].index)] = betas[c];
        sum += betas[c];
    }
    for (double& x : w) x /= sum;

    ComplexityResult res{0.0, Weights(w), {}, 0.0, {}};
    double fmin = std::numeric_limits<double>::infinity();
    double fmax = -std::numeric_limits<double>::infinity();
    for (const ChallengerArm& ch : chals) {
        const PairCost pc =
            pair_transport(best, *ch.arm, w[static_cast<std::size_t>(star)],
                           w[static_cast<std::size_t>(ch.index)], order);
        res.challenger_costs.push_back(TransportCost{ch.index, pc.value, pc.minimizer});
        fmin = std::min(fmin, pc.value);
        fmax = std::max(fmax, pc.value);
    }
    res.objective_value = fmin;
    res.gamma = 1.0 / fmin;
    res.diagnostics.iterations = evals;
    res.diagnostics.equalization_residual = fmax - fmin;
    const double fbest = std::max(level, fmin);
    res.diagnostics.achieved_tol =
        fbest > 0.0 ? std::fabs(fbest - std::min(f1, f2)) / fbest : 0.0;
    res.diagnostics.exact = false;

    if (evals >= iteration_budget && b - a > target)
        throw convergence_error("complexity solver exhausted its iteration budget", res);
    return res;
}

} // namespace detail

// Fixed-confidence complexity: KL order fc.
inline ComplexityResult gamma_fc(const BanditInstance& inst, double tol = 1e-8,
                                 std::int64_t iteration_budget = detail::kOuterIterationBudget) {
    return detail::solve_complexity(inst, CostOrder::fc, tol, iteration_budget);
}

// Non-adaptive fixed-budget complexity: KL order na.
inline ComplexityResult gamma_na(const BanditInstance& inst, double tol = 1e-8,
                                 std::int64_t iteration_budget = detail::kOuterIterationBudget) {
    return detail::solve_complexity(inst, CostOrder::na, tol, iteration_budget);
}

// Exact result for k = 2 Gaussian: weights proportional to the standard
// deviations, gamma = 2 (s1 + s2)^2 / gap^2.
inline ComplexityResult two_armed_gaussian_closed_form(const BanditInstance& inst) {
    validate(inst);
    if (inst.k() != 2 || inst.family() != ArmFamily::GaussianKnownVariance)
        throw usage_error("closed form requires a two-armed gaussian instance");

    const int star = best_arm(inst);
    const int other = 1 - star;
    const double s0 = std::sqrt(inst.arms[0].variance);
    const double s1 = std::sqrt(inst.arms[1].variance);
    const double gap = std::fabs(inst.arms[0].mean - inst.arms[1].mean);
    const double gamma = 2.0 * (s0 + s1) * (s0 + s1) / (gap * gap);

    std::vector<double> w{s0 / (s0 + s1), s1 / (s0 + s1)};
    w[1] = 1.0 - w[0];

    ComplexityResult res{gamma, Weights(w), {}, 1.0 / gamma, {}};
    const detail::PairCost pc = detail::pair_transport(
        inst.arms[static_cast<std::size_t>(star)], inst.arms[static_cast<std::size_t>(other)],
        w[static_cast<std::size_t>(star)], w[static_cast<std::size_t>(other)], CostOrder::fc);
    res.challenger_costs.push_back(TransportCost{other, pc.value, pc.minimizer});
    res.diagnostics.exact = true;
    res.diagnostics.iterations = 0;
    res.diagnostics.achieved_tol = 0.0;
    res.diagnostics.equalization_residual = 0.0;
    return res;
}

} // namespace bailab
