#pragma once

/*
 * Per-challenger transportation costs.
 *
 * For a challenger j of the best arm b, the cost of weights (w_b, w_j) is the
 * cheapest way to move both arms to a common mean x:
 *
 *   fc:  inf_x  w_b KL(mean_b -> x) + w_j KL(mean_j -> x)   (instance on the left)
 *   na:  inf_x  w_b KL(x -> mean_b) + w_j KL(x -> mean_j)   (alternative on the left)
 *
 * Only the means move; Gaussian variances stay fixed. The infimum has a closed
 * form in every supported case:
 *   gaussian, both orders:  x* is the precision-weighted mean,
 *   bernoulli fc:           x* is the weight-weighted mean,
 *   bernoulli na:           logit(x*) is the weight-weighted mean of logits.
 * The grid oracle in the test suite certifies all four against brute force.
 */

#include <cmath>
#include <string>
#include <vector>

#include "bailab/arms.hpp"
#include "bailab/errors.hpp"

namespace bailab {

enum class CostOrder { fc, na };

struct TransportCost {
    int challenger = -1;   // arm index j != best
    double value = 0.0;    // attained infimum
    double minimizer = 0.0; // the common mean x*
};

namespace detail {

// Bernoulli KL that tolerates boundary p in [0, 1]; q on the boundary is only
// reachable when p == q (then the divergence is zero).
inline double bern_kl(double p, double q) {
    if (p == q) return 0.0;
    double v = 0.0;
    if (p > 0.0) v += p * std::log(p / q);
    if (p < 1.0) v += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
    return v;
}

inline double logit(double p) { return std::log(p / (1.0 - p)); }
inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct PairCost {
    double value;
    double minimizer;
};

// Transport cost for a (best, challenger) pair with raw nonnegative weights.
// Weights need not be normalized; the value is 1-homogeneous in them. Means
// may be empirical (Bernoulli boundary values included).
inline PairCost pair_transport(ArmFamily family,
                               double mean_b, double var_b,
                               double mean_c, double var_c,
                               double w_b, double w_c,
                               CostOrder order) {
    if (mean_b == mean_c) return {0.0, mean_b};
    if (!(w_b > 0.0)) return {0.0, mean_c};
    if (!(w_c > 0.0)) return {0.0, mean_b};

    if (family == ArmFamily::GaussianKnownVariance) {
        // same quadratic in both KL orders
        const double pb = w_b / var_b, pc = w_c / var_c;
        const double x = (pb * mean_b + pc * mean_c) / (pb + pc);
        const double db = mean_b - x, dc = mean_c - x;
        return {0.5 * (w_b * db * db / var_b + w_c * dc * dc / var_c), x};
    }

    if (order == CostOrder::fc) {
        const double x = (w_b * mean_b + w_c * mean_c) / (w_b + w_c);
        return {w_b * bern_kl(mean_b, x) + w_c * bern_kl(mean_c, x), x};
    }
    // bernoulli, na order: stationarity in logit space; boundary empirical
    // means pin x* to the boundary value itself
    if (mean_b <= 0.0 || mean_b >= 1.0 || mean_c <= 0.0 || mean_c >= 1.0) {
        // one-sided: the finite-KL side must absorb the whole move
        const double x = (mean_b <= 0.0 || mean_b >= 1.0) ? mean_b : mean_c;
        return {w_b * bern_kl(x, mean_b) + w_c * bern_kl(x, mean_c), x};
    }
    const double z = (w_b * logit(mean_b) + w_c * logit(mean_c)) / (w_b + w_c);
    const double x = sigmoid(z);
    return {w_b * bern_kl(x, mean_b) + w_c * bern_kl(x, mean_c), x};
}

inline PairCost pair_transport(const Arm& best, const Arm& chal,
                               double w_b, double w_c, CostOrder order) {
    return pair_transport(best.family, best.mean, best.variance,
                          chal.mean, chal.variance, w_b, w_c, order);
}

} // namespace detail

namespace detail {

inline TransportCost transport_cost(const BanditInstance& inst, const Weights& w,
                                    int challenger, CostOrder order) {
    const int star = best_arm(inst);
    if (w.size() != inst.k())
        throw usage_error("weights dimension does not match the instance");
    if (challenger < 0 || static_cast<std::size_t>(challenger) >= inst.k())
        throw usage_error("challenger index out of range");
    if (challenger == star)
        throw usage_error("challenger must differ from the best arm");
    const PairCost pc = pair_transport(inst.arms[star], inst.arms[challenger],
                                       w[static_cast<std::size_t>(star)],
                                       w[static_cast<std::size_t>(challenger)], order);
    return TransportCost{challenger, pc.value, pc.minimizer};
}

} // namespace detail

inline TransportCost transport_cost_fc(const BanditInstance& inst, const Weights& w,
                                       int challenger) {
    return detail::transport_cost(inst, w, challenger, CostOrder::fc);
}

inline TransportCost transport_cost_na(const BanditInstance& inst, const Weights& w,
                                       int challenger) {
    return detail::transport_cost(inst, w, challenger, CostOrder::na);
}

} // namespace bailab
