#pragma once

// Independent oracles for the test suite. Everything here is brute force on
// purpose: direct definitions, grid scans and exact enumeration, sharing no
// solver code with the library. Values asserted in the tests were produced by
// these oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

// ---- divergences from their definitions --------------------------------

// Bernoulli KL as the expectation over the two outcomes.
inline double bern_kl_expectation(double p, double q) {
    double v = 0.0;
    if (p > 0.0) v += p * std::log(p / q);
    if (p < 1.0) v += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
    return v;
}

// Gaussian KL by Simpson quadrature of p(x) log(p(x)/q(x)).
inline double gauss_kl_quadrature(double m1, double v1, double m2, double v2,
                                  int points = 200001) {
    const double s1 = std::sqrt(v1);
    const double lo = m1 - 20.0 * s1, hi = m1 + 20.0 * s1;
    const double h = (hi - lo) / (points - 1);
    auto integrand = [&](double x) {
        const double lp = -0.5 * (x - m1) * (x - m1) / v1 - 0.5 * std::log(2.0 * M_PI * v1);
        const double lq = -0.5 * (x - m2) * (x - m2) / v2 - 0.5 * std::log(2.0 * M_PI * v2);
        return std::exp(lp) * (lp - lq);
    };
    double acc = integrand(lo) + integrand(hi);
    for (int i = 1; i + 1 < points; ++i)
        acc += integrand(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// ---- transport costs by grid scan ---------------------------------------

enum class Order { fc, na };

struct ArmSpec {
    bool gaussian;
    double mean;
    double variance; // gaussian only
};

// contribution of one arm when its mean moves to x
inline double move_cost(const ArmSpec& a, double x, Order order) {
    if (a.gaussian) {
        const double d = a.mean - x;
        return d * d / (2.0 * a.variance);
    }
    return order == Order::fc ? bern_kl_expectation(a.mean, x)
                              : bern_kl_expectation(x, a.mean);
}

struct GridMin {
    double value;
    double minimizer;
};

// 1-D brute force over the common mean x: full scan at `step`, then local
// refinement around the best grid point down to ~1e-12.
inline GridMin grid_transport(const ArmSpec& best, const ArmSpec& chal, double w_best,
                              double w_chal, Order order, double step = 1e-6) {
    const double lo = std::min(best.mean, chal.mean);
    const double hi = std::max(best.mean, chal.mean);
    auto cost = [&](double x) {
        return w_best * move_cost(best, x, order) + w_chal * move_cost(chal, x, order);
    };
    if (w_best <= 0.0) return {0.0, chal.mean};
    if (w_chal <= 0.0) return {0.0, best.mean};
    if (hi - lo <= 0.0) return {0.0, lo};

    double bx = lo, bv = cost(lo);
    const std::int64_t n = static_cast<std::int64_t>(std::ceil((hi - lo) / step));
    for (std::int64_t i = 1; i <= n; ++i) {
        const double x = std::min(hi, lo + static_cast<double>(i) * step);
        const double v = cost(x);
        if (v < bv) {
            bv = v;
            bx = x;
        }
    }
    double width = step;
    while (width > 1e-13) {
        const double a = std::max(lo, bx - width), b = std::min(hi, bx + width);
        const double h = (b - a) / 200.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = a + i * h;
            const double v = cost(x);
            if (v < bv) {
                bv = v;
                bx = x;
            }
        }
        width /= 50.0;
    }
    return {bv, bx};
}

// ---- simplex-grid complexity oracles ------------------------------------

struct GridGamma {
    double gamma;
    std::vector<double> weights;
};

// k = 2: weight grid at w_step, literal inner grid at x_step (no refinement).
inline GridGamma grid_gamma_two_arms(const ArmSpec& best, const ArmSpec& chal, Order order,
                                     double w_step = 1e-3, double x_step = 1e-5) {
    const double lo = std::min(best.mean, chal.mean);
    const double hi = std::max(best.mean, chal.mean);
    const std::int64_t nx = static_cast<std::int64_t>(std::ceil((hi - lo) / x_step));
    const std::int64_t nw = static_cast<std::int64_t>(std::llround(1.0 / w_step));
    double fbest = 0.0, wbest = 0.0;
    for (std::int64_t iw = 0; iw <= nw; ++iw) {
        const double wb = static_cast<double>(iw) / static_cast<double>(nw);
        const double wc = 1.0 - wb;
        double inner = std::numeric_limits<double>::infinity();
        for (std::int64_t ix = 0; ix <= nx; ++ix) {
            const double x = std::min(hi, lo + static_cast<double>(ix) * x_step);
            const double v = wb * move_cost(best, x, order) + wc * move_cost(chal, x, order);
            if (v < inner) inner = v;
        }
        if (inner > fbest) {
            fbest = inner;
            wbest = wb;
        }
    }
    return {1.0 / fbest, {wbest, 1.0 - wbest}};
}

// inner 1-D minimum by long ternary search (the cost is convex in x)
inline double ternary_transport(const ArmSpec& best, const ArmSpec& chal, double w_best,
                                double w_chal, Order order) {
    if (w_best <= 0.0 || w_chal <= 0.0) return 0.0;
    double lo = std::min(best.mean, chal.mean), hi = std::max(best.mean, chal.mean);
    auto cost = [&](double x) {
        return w_best * move_cost(best, x, order) + w_chal * move_cost(chal, x, order);
    };
    for (int it = 0; it < 300 && hi - lo > 1e-14; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (cost(m1) < cost(m2))
            hi = m2;
        else
            lo = m1;
    }
    return cost(0.5 * (lo + hi));
}

// k = 3: scan (w0, w1) over the simplex grid; the best arm must come first in
// `arms`. Inner solves use ternary search, which shares nothing with the
// implementation's closed forms.
inline GridGamma grid_gamma_three_arms(const std::vector<ArmSpec>& arms, Order order,
                                       double w_step = 2e-3) {
    const std::int64_t n = static_cast<std::int64_t>(std::llround(1.0 / w_step));
    double fbest = 0.0;
    std::vector<double> wbest(3, 0.0);
    for (std::int64_t i = 1; i < n; ++i) {
        for (std::int64_t j = 1; j < n - i; ++j) {
            const double w0 = static_cast<double>(i) / static_cast<double>(n);
            const double w1 = static_cast<double>(j) / static_cast<double>(n);
            const double w2 = 1.0 - w0 - w1;
            const double f =
                std::min(ternary_transport(arms[0], arms[1], w0, w1, order),
                         ternary_transport(arms[0], arms[2], w0, w2, order));
            if (f > fbest) {
                fbest = f;
                wbest = {w0, w1, w2};
            }
        }
    }
    return {1.0 / fbest, wbest};
}

// ---- full-alternative brute force ---------------------------------------

// Minimum cost over all alternative mean vectors whose best arm differs from
// arms[star]; refined k-dimensional grid, k <= 3. Certifies the
// two-coordinate challenger decomposition.
inline double full_alternative_min(const std::vector<ArmSpec>& arms, int star,
                                   const std::vector<double>& w, Order order) {
    const std::size_t k = arms.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const ArmSpec& a : arms) {
        lo = std::min(lo, a.mean);
        hi = std::max(hi, a.mean);
    }
    const bool bern = !arms.front().gaussian;
    if (bern) {
        lo = std::max(lo, 1e-9);
        hi = std::min(hi, 1.0 - 1e-9);
    }

    auto cost = [&](const std::vector<double>& nu) {
        double v = 0.0;
        for (std::size_t i = 0; i < k; ++i) v += w[i] * move_cost(arms[i], nu[i], order);
        return v;
    };
    // closure of the alternative set: some other arm matches or beats the star
    auto in_alt = [&](const std::vector<double>& nu) {
        for (std::size_t i = 0; i < k; ++i)
            if (static_cast<int>(i) != star && nu[i] >= nu[static_cast<std::size_t>(star)])
                return true;
        return false;
    };

    std::vector<double> center(k), best_nu(k);
    for (std::size_t i = 0; i < k; ++i) center[i] = arms[i].mean;
    double best = std::numeric_limits<double>::infinity();
    double half = hi - lo;
    const int per_axis = 33;

    for (int round = 0; round < 8; ++round) {
        std::vector<std::vector<double>> axes(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (int g = 0; g < per_axis; ++g) {
                double x = center[i] - half + 2.0 * half * g / (per_axis - 1);
                x = std::min(hi, std::max(lo, x));
                axes[i].push_back(x);
            }
            axes[i].push_back(arms[i].mean); // zero-cost coordinate
        }
        std::vector<std::size_t> idx(k, 0);
        std::vector<double> nu(k);
        while (true) {
            for (std::size_t i = 0; i < k; ++i) nu[i] = axes[i][idx[i]];
            if (in_alt(nu)) {
                const double v = cost(nu);
                if (v < best) {
                    best = v;
                    best_nu = nu;
                }
            }
            std::size_t d = 0;
            while (d < k && ++idx[d] == axes[d].size()) {
                idx[d] = 0;
                ++d;
            }
            if (d == k) break;
        }
        center = best_nu;
        half /= 6.0;
    }
    return best;
}

// ---- exact finite-sample error probabilities -----------------------------

inline std::vector<double> binom_pmf(std::int64_t n, double p) {
    std::vector<double> t(static_cast<std::size_t>(n) + 1);
    for (std::int64_t a = 0; a <= n; ++a) {
        const double lg = std::lgamma(static_cast<double>(n) + 1) -
                          std::lgamma(static_cast<double>(a) + 1) -
                          std::lgamma(static_cast<double>(n - a) + 1);
        t[static_cast<std::size_t>(a)] =
            std::exp(lg + static_cast<double>(a) * std::log(p) +
                     static_cast<double>(n - a) * std::log(1.0 - p));
    }
    return t;
}

// P(recommendation != best) for two Bernoulli arms with deterministic pull
// counts (n0, n1); recommendation is the argmax of empirical means with ties
// to the lowest index.
inline double exact_error_two_bernoulli(std::int64_t n0, std::int64_t n1, double p0,
                                        double p1) {
    const int star = p0 > p1 ? 0 : 1;
    const std::vector<double> t0 = binom_pmf(n0, p0);
    const std::vector<double> t1 = binom_pmf(n1, p1);
    double err = 0.0;
    for (std::int64_t a = 0; a <= n0; ++a) {
        const double m0 = static_cast<double>(a) / static_cast<double>(n0);
        for (std::int64_t b = 0; b <= n1; ++b) {
            const double m1 = static_cast<double>(b) / static_cast<double>(n1);
            const int rec = m1 > m0 ? 1 : 0; // tie goes to arm 0
            if (rec != star)
                err += t0[static_cast<std::size_t>(a)] * t1[static_cast<std::size_t>(b)];
        }
    }
    return err;
}

// pull counts of round-robin sampling
inline std::pair<std::int64_t, std::int64_t> uniform_counts_two_arms(std::int64_t n) {
    return {n - n / 2, n / 2};
}

// pull counts of deterministic tracking of (w0, w1), re-derived here from the
// score definition
inline std::pair<std::int64_t, std::int64_t> tracked_counts_two_arms(double w0, double w1,
                                                                     std::int64_t n) {
    std::int64_t n0 = 0, n1 = 0;
    for (std::int64_t t = 0; t < n; ++t) {
        const double s0 = static_cast<double>(t + 1) * w0 - static_cast<double>(n0);
        const double s1 = static_cast<double>(t + 1) * w1 - static_cast<double>(n1);
        if (s1 > s0)
            ++n1;
        else
            ++n0;
    }
    return {n0, n1};
}

// ---- independent statistics oracles --------------------------------------

// Wilson bounds as the roots of (p_hat - p)^2 = z^2 p (1 - p) / n.
struct Interval {
    double low;
    double high;
};

inline Interval wilson_by_roots(std::int64_t errors, std::int64_t n) {
    const long double z = 1.959963984540054L;
    const long double nn = static_cast<long double>(n);
    const long double ph = static_cast<long double>(errors) / nn;
    const long double a = 1.0L + z * z / nn;
    const long double b = -(2.0L * ph + z * z / nn);
    const long double c = ph * ph;
    const long double disc = std::sqrt(b * b - 4.0L * a * c);
    Interval out;
    out.low = static_cast<double>((-b - disc) / (2.0L * a));
    out.high = static_cast<double>((-b + disc) / (2.0L * a));
    out.low = std::max(0.0, out.low);
    out.high = std::min(1.0, out.high);
    return out;
}

// plain normal-equation least squares in long double
struct Line {
    double slope;
    double intercept;
};

inline Line least_squares_normal_equations(const std::vector<double>& xs,
                                           const std::vector<double>& ys) {
    const std::size_t m = xs.size();
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += static_cast<long double>(xs[i]) * xs[i];
        sxy += static_cast<long double>(xs[i]) * ys[i];
    }
    const long double denom = static_cast<long double>(m) * sxx - sx * sx;
    Line out;
    out.slope = static_cast<double>((static_cast<long double>(m) * sxy - sx * sy) / denom);
    out.intercept = static_cast<double>((sy - out.slope * sx) / static_cast<long double>(m));
    return out;
}

} // namespace oracle
