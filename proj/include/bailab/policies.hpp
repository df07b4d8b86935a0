#pragma once

/*
 * Sampling, stopping and decision rules.
 *
 * Policies are immutable blueprints: every entry point is a pure function of
 * the observed history, so one policy object can serve any number of
 * concurrent replications. All tie-breaks go to the lowest index.
 *
 * Fixed-weight sampling uses deterministic tracking, next = argmax of
 * (t+1) w_i - N_i, which keeps |N_i(n) - n w_i| <= k for all n; the realized
 * allocation converges to w without randomization noise.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "bailab/arms.hpp"
#include "bailab/complexity.hpp"
#include "bailab/errors.hpp"
#include "bailab/transport.hpp"

namespace bailab {

struct HistoryState {
    std::int64_t t = 0;
    std::vector<std::int64_t> counts;
    std::vector<double> sums;

    explicit HistoryState(std::size_t k) : counts(k, 0), sums(k, 0.0) {}

    std::size_t k() const { return counts.size(); }

    void record(int arm, double y) {
        ++t;
        ++counts[static_cast<std::size_t>(arm)];
        sums[static_cast<std::size_t>(arm)] += y;
    }

    // unseen arms count as -inf
    double empirical_mean(std::size_t i) const {
        return counts[i] > 0 ? sums[i] / static_cast<double>(counts[i])
                             : -std::numeric_limits<double>::infinity();
    }
};

// argmax of empirical means, ties to the lowest index
inline int empirical_best(const HistoryState& h) {
    int arg = 0;
    double best = h.empirical_mean(0);
    for (std::size_t i = 1; i < h.k(); ++i) {
        const double m = h.empirical_mean(i);
        if (m > best) {
            best = m;
            arg = static_cast<int>(i);
        }
    }
    return arg;
}

class Policy {
public:
    virtual ~Policy() = default;
    virtual int next_arm(const HistoryState& h) const = 0;
    virtual int recommend(const HistoryState& h) const { return empirical_best(h); }
    virtual bool has_stopping_rule() const { return false; }
    virtual bool should_stop(const HistoryState&, double) const { return false; }
    virtual std::string name() const = 0;
};

namespace detail {

// argmax of (t+1) w_i - N_i; strict improvement required, so ties keep the
// lowest index
inline int tracking_arm(const HistoryState& h, const std::vector<double>& w) {
    int arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.k(); ++i) {
        const double score =
            static_cast<double>(h.t + 1) * w[i] - static_cast<double>(h.counts[i]);
        if (score > best) {
            best = score;
            arg = static_cast<int>(i);
        }
    }
    return arg;
}

class UniformPolicy final : public Policy {
public:
    int next_arm(const HistoryState& h) const override {
        return static_cast<int>(h.t % static_cast<std::int64_t>(h.k()));
    }
    std::string name() const override { return "uniform"; }
};

class FixedWeightPolicy final : public Policy {
public:
    explicit FixedWeightPolicy(Weights w) : w_(std::move(w)) {}
    int next_arm(const HistoryState& h) const override {
        if (h.k() != w_.size())
            throw usage_error("fixed_weight policy weights do not match the arm count");
        return tracking_arm(h, w_.values());
    }
    std::string name() const override { return "fixed_weight"; }
    const Weights& weights() const { return w_; }

private:
    Weights w_;
};

} // namespace detail

// Generalized-likelihood-ratio statistic for the current empirical best: the
// smallest transport cost (fc order, raw counts as weights) over challengers.
inline double glr_statistic(const HistoryState& h, ArmFamily family,
                            const std::vector<double>& gaussian_variances = {}) {
    if (family == ArmFamily::GaussianKnownVariance && gaussian_variances.size() != h.k())
        throw usage_error("glr_statistic needs one known variance per arm");
    const int star = empirical_best(h);
    double z = std::numeric_limits<double>::infinity();
    const auto var = [&](std::size_t i) {
        return family == ArmFamily::GaussianKnownVariance ? gaussian_variances[i] : 1.0;
    };
    for (std::size_t j = 0; j < h.k(); ++j) {
        if (static_cast<int>(j) == star) continue;
        const detail::PairCost pc = detail::pair_transport(
            family, h.empirical_mean(static_cast<std::size_t>(star)),
            var(static_cast<std::size_t>(star)), h.empirical_mean(j), var(j),
            static_cast<double>(h.counts[static_cast<std::size_t>(star)]),
            static_cast<double>(h.counts[j]), CostOrder::fc);
        z = std::min(z, pc.value);
    }
    return z;
}

// Stopping threshold beta(t, delta).
inline double stopping_threshold(std::int64_t t, double delta) {
    return std::log((1.0 + std::log(static_cast<double>(t) + 1.0)) / delta);
}

struct TrackAndStopOptions {
    double solver_tol = 1e-6; // per-step weight solve; looser than standalone use
    std::int64_t solver_iteration_budget = detail::kOuterIterationBudget;
};

namespace detail {

class TrackAndStopPolicy final : public Policy {
public:
    TrackAndStopPolicy(double delta, ArmFamily family, std::vector<double> variances,
                       TrackAndStopOptions opts)
        : delta_(delta), family_(family), variances_(std::move(variances)), opts_(opts) {
        if (!(delta > 0.0 && delta < 1.0))
            throw usage_error("track_and_stop requires delta in (0, 1)");
    }

    int next_arm(const HistoryState& h) const override {
        const std::size_t k = h.k();
        if (family_ == ArmFamily::GaussianKnownVariance && variances_.size() != k)
            throw usage_error("track_and_stop needs one known variance per arm");
        // initialization: sample every arm once
        for (std::size_t i = 0; i < k; ++i)
            if (h.counts[i] == 0) return static_cast<int>(i);
        // forced exploration of badly under-sampled arms
        const double floor_count =
            std::sqrt(static_cast<double>(h.t)) - static_cast<double>(k) / 2.0;
        int forced = -1;
        for (std::size_t i = 0; i < k; ++i) {
            if (static_cast<double>(h.counts[i]) < floor_count &&
                (forced < 0 || h.counts[i] < h.counts[static_cast<std::size_t>(forced)]))
                forced = static_cast<int>(i);
        }
        if (forced >= 0) return forced;
        return tracking_arm(h, target_weights(h));
    }

    bool has_stopping_rule() const override { return true; }

    bool should_stop(const HistoryState& h, double delta) const override {
        for (std::size_t i = 0; i < h.k(); ++i)
            if (h.counts[i] == 0) return false;
        return glr_statistic(h, family_, variances_) > stopping_threshold(h.t, delta);
    }

    std::string name() const override { return "track_and_stop"; }
    double delta() const { return delta_; }

private:
    // w*(empirical means); falls back to uniform while the empirical instance
    // is degenerate (ties at the top) early on
    std::vector<double> target_weights(const HistoryState& h) const {
        BanditInstance emp;
        emp.arms.reserve(h.k());
        for (std::size_t i = 0; i < h.k(); ++i) {
            double m = h.empirical_mean(i);
            if (family_ == ArmFamily::Bernoulli) {
                m = std::min(1.0 - 1e-6, std::max(1e-6, m));
                emp.arms.push_back(Arm{ArmFamily::Bernoulli, m, m * (1.0 - m)});
            } else {
                emp.arms.push_back(Arm{family_, m, variances_[i]});
            }
        }
        try {
            validate(emp);
        } catch (const validation_error&) {
            return Weights::uniform(h.k()).values();
        }
        return gamma_fc(emp, opts_.solver_tol, opts_.solver_iteration_budget)
            .optimal_weights.values();
    }

    double delta_;
    ArmFamily family_;
    std::vector<double> variances_;
    TrackAndStopOptions opts_;
};

} // namespace detail

inline std::unique_ptr<Policy> uniform_policy() {
    return std::make_unique<detail::UniformPolicy>();
}

inline std::unique_ptr<Policy> fixed_weight_policy(Weights w) {
    return std::make_unique<detail::FixedWeightPolicy>(std::move(w));
}

// Two-armed rule with weights proportional to the standard deviations.
inline std::unique_ptr<Policy> sigma_proportional_policy(double variance1, double variance2) {
    if (!(variance1 > 0.0) || !(variance2 > 0.0))
        throw usage_error("sigma_proportional requires two positive variances");
    const double s1 = std::sqrt(variance1), s2 = std::sqrt(variance2);
    std::vector<double> w{s1 / (s1 + s2), 0.0};
    w[1] = 1.0 - w[0];
    return std::make_unique<detail::FixedWeightPolicy>(Weights(std::move(w)));
}

// Fixed-confidence policy: tracks w* of the empirical means, stops once the
// GLR statistic clears stopping_threshold(t, delta).
inline std::unique_ptr<Policy> track_and_stop_policy(double delta, ArmFamily family,
                                                     std::vector<double> gaussian_variances = {},
                                                     TrackAndStopOptions opts = {}) {
    return std::make_unique<detail::TrackAndStopPolicy>(delta, family,
                                                        std::move(gaussian_variances), opts);
}

} // namespace bailab
