#pragma once

/*
 * One-parameter arm models and bandit instances.
 *
 * Two families are supported: Gaussian with known variance and Bernoulli.
 * Both are parametrized by their mean; Gaussian variances are fixed, known
 * side information. Instances must have a unique best arm with a gap of at
 * least kMinTopGap, which keeps every complexity functional finite.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "bailab/errors.hpp"
#include "bailab/rng.hpp"

namespace bailab {

enum class ArmFamily { GaussianKnownVariance, Bernoulli };

inline const char* family_name(ArmFamily f) {
    return f == ArmFamily::GaussianKnownVariance ? "gaussian" : "bernoulli";
}

// Smallest accepted gap between the best and second best mean.
inline constexpr double kMinTopGap = 1e-12;

struct Arm {
    ArmFamily family = ArmFamily::GaussianKnownVariance;
    double mean = 0.0;
    double variance = 1.0; // Gaussian only

    static Arm gaussian(double mean, double variance) {
        if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean))
            throw validation_error("gaussian arm requires a finite mean and variance > 0");
        return Arm{ArmFamily::GaussianKnownVariance, mean, variance};
    }

    static Arm bernoulli(double mean) {
        if (!(mean > 0.0 && mean < 1.0))
            throw validation_error("bernoulli arm mean must lie strictly inside (0, 1)");
        return Arm{ArmFamily::Bernoulli, mean, mean * (1.0 - mean)};
    }
};

struct BanditInstance {
    std::vector<Arm> arms;

    std::size_t k() const { return arms.size(); }
    ArmFamily family() const { return arms.empty() ? ArmFamily::GaussianKnownVariance : arms.front().family; }

    std::vector<double> means() const {
        std::vector<double> m(arms.size());
        for (std::size_t i = 0; i < arms.size(); ++i) m[i] = arms[i].mean;
        return m;
    }

    static BanditInstance gaussian(const std::vector<double>& means,
                                   const std::vector<double>& variances) {
        if (means.size() != variances.size())
            throw validation_error("means and variances must have the same length");
        BanditInstance inst;
        inst.arms.reserve(means.size());
        for (std::size_t i = 0; i < means.size(); ++i)
            inst.arms.push_back(Arm::gaussian(means[i], variances[i]));
        validate(inst);
        return inst;
    }

    static BanditInstance bernoulli(const std::vector<double>& means) {
        BanditInstance inst;
        inst.arms.reserve(means.size());
        for (double m : means) inst.arms.push_back(Arm::bernoulli(m));
        validate(inst);
        return inst;
    }

    // Checks every structural invariant and reports the first violation.
    static void validate(const BanditInstance& inst) {
        if (inst.arms.size() < 2)
            throw validation_error("instance needs at least 2 arms, got " +
                                   std::to_string(inst.arms.size()));
        const ArmFamily fam = inst.arms.front().family;
        for (std::size_t i = 0; i < inst.arms.size(); ++i) {
            const Arm& a = inst.arms[i];
            if (a.family != fam)
                throw validation_error("family mismatch at arm " + std::to_string(i));
            if (!std::isfinite(a.mean))
                throw validation_error("non-finite mean at arm " + std::to_string(i));
            if (fam == ArmFamily::GaussianKnownVariance) {
                if (!(a.variance > 0.0) || !std::isfinite(a.variance))
                    throw validation_error("nonpositive variance at arm " + std::to_string(i));
            } else {
                if (!(a.mean > 0.0 && a.mean < 1.0))
                    throw validation_error("bernoulli mean at or outside (0, 1) at arm " +
                                           std::to_string(i));
            }
        }
        // unique best arm, with a numerically meaningful gap
        double best = -std::numeric_limits<double>::infinity();
        double second = -std::numeric_limits<double>::infinity();
        for (const Arm& a : inst.arms) {
            if (a.mean > best) {
                second = best;
                best = a.mean;
            } else if (a.mean > second) {
                second = a.mean;
            }
        }
        if (!(best - second >= kMinTopGap))
            throw validation_error("no unique best arm: top means are within " +
                                   std::to_string(kMinTopGap));
    }
};

inline void validate(const BanditInstance& inst) { BanditInstance::validate(inst); }

// 0-based index of the unique maximal mean.
inline int best_arm(const BanditInstance& inst) {
    validate(inst);
    int arg = 0;
    for (std::size_t i = 1; i < inst.arms.size(); ++i)
        if (inst.arms[i].mean > inst.arms[arg].mean) arg = static_cast<int>(i);
    return arg;
}

// Point on the probability simplex.
class Weights {
public:
    explicit Weights(std::vector<double> w) : w_(std::move(w)) {
        if (w_.empty()) throw validation_error("weights must be non-empty");
        double sum = 0.0;
        for (double x : w_) {
            if (!(x >= 0.0) || !std::isfinite(x))
                throw validation_error("weights must be finite and nonnegative");
            sum += x;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw validation_error("weights must sum to 1 within 1e-12, got sum " +
                                   std::to_string(sum));
    }

    static Weights uniform(std::size_t k) {
        std::vector<double> w(k, 1.0 / static_cast<double>(k));
        // make the sum exactly 1 regardless of k
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < k; ++i) s += w[i];
        w[k - 1] = 1.0 - s;
        return Weights(std::move(w));
    }

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    const std::vector<double>& values() const { return w_; }

private:
    std::vector<double> w_;
};

// KL(a || b) between two arms of the same family.
inline double kl(const Arm& a, const Arm& b) {
    if (a.family != b.family)
        throw usage_error("kl requires arms of the same family");
    if (a.family == ArmFamily::GaussianKnownVariance) {
        if (!(a.variance > 0.0) || !(b.variance > 0.0))
            throw domain_error("gaussian kl requires positive variances");
        const double d = a.mean - b.mean;
        return std::log(std::sqrt(b.variance / a.variance)) +
               (a.variance + d * d) / (2.0 * b.variance) - 0.5;
    }
    const double p = a.mean, q = b.mean;
    if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0))
        throw domain_error("bernoulli kl requires means inside (0, 1)");
    return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

// One observation from the arm; advances the stream.
inline double sample(const Arm& arm, Rng& rng) {
    if (arm.family == ArmFamily::GaussianKnownVariance)
        return arm.mean + std::sqrt(arm.variance) * rng.next_gaussian();
    return rng.next_double() < arm.mean ? 1.0 : 0.0;
}

} // namespace bailab
