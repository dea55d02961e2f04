#pragma once

// Growth functional E_a, the kernel integrals I_± behind the a-priori
// operator bound, and a randomized empirical check of
// ||L'_a(|U|^p)|| <= C * E_a(T) * ||U||^p.

#include <wavelife/duhamel.hpp>
#include <wavelife/model.hpp>
#include <wavelife/parallel.hpp>
#include <wavelife/quadrature.hpp>
#include <wavelife/rng.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wavelife {

inline constexpr double a_zero_tol = 1e-12; // |a| below this routes to the log branches

inline double E_a(double T, double R, double a) {
    if (a < -a_zero_tol) return std::pow(T + 2.0 * R, -a);
    if (a <= a_zero_tol) return std::log(T + 2.0 * R);
    return 1.0;
}

namespace detail {

// ∫_alpha^beta τ^(−1−a) dτ for 0 < alpha <= beta.
inline double power_segment(double alpha, double beta, double a) {
    if (std::abs(a) <= a_zero_tol) return std::log(beta / alpha);
    return (std::pow(alpha, -a) - std::pow(beta, -a)) / a;
}

// Closed form of ∫₀ᵗ χ(|u−s| <= s+R)·(1+|u−s|)^(−1−a) ds with u = t±x.
// Split at s = u: below it the cutoff bites at s = (u−R)/2, above it the
// cutoff is equivalent to u >= −R.
inline double kernel_closed(double u, double t, double a, double R) {
    double total = 0.0;
    double lo1 = std::max(0.0, 0.5 * (u - R));
    double hi1 = std::min(t, u);
    if (hi1 > lo1) total += power_segment(1.0 + u - hi1, 1.0 + u - lo1, a);
    if (u >= -R) {
        double lo2 = std::max(0.0, u);
        double hi2 = t;
        if (hi2 > lo2) total += power_segment(1.0 + lo2 - u, 1.0 + hi2 - u, a);
    }
    return total;
}

// The same integral by adaptive quadrature of the raw integrand, split only
// at its two geometric breakpoints so each piece is smooth.
inline double kernel_quadrature(double u, double t, double a, double R) {
    auto integrand = [&](double s) {
        double d = std::abs(u - s);
        if (d > s + R) return 0.0;
        return std::pow(1.0 + d, -1.0 - a);
    };
    std::vector<double> cuts{0.0, t};
    for (double b : {0.5 * (u - R), u})
        if (b > 0.0 && b < t) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        total += adaptive_simpson(integrand, cuts[k], cuts[k + 1], 1e-13);
    return total;
}

inline double kernel_both_checked(double u, double t, double a, double R) {
    double closed = kernel_closed(u, t, a, R);
    double quad = kernel_quadrature(u, t, a, R);
    if (std::abs(closed - quad) > 1e-9 * std::max(1.0, std::abs(closed)))
        throw std::logic_error("kernel integral: closed form and quadrature disagree");
    return closed;
}

} // namespace detail

// I_±(x,t): every call evaluates both routes and verifies they agree to
// 1e-9 before returning the closed form.
inline double I_plus(double x, double t, double a, double R) {
    if (!(t >= 0.0)) throw std::invalid_argument("I_plus: t must be >= 0");
    return detail::kernel_both_checked(t + x, t, a, R);
}

inline double I_minus(double x, double t, double a, double R) {
    if (!(t >= 0.0)) throw std::invalid_argument("I_minus: t must be >= 0");
    return detail::kernel_both_checked(t - x, t, a, R);
}

struct AprioriReport {
    double T = 0.0;
    double a = 0.0;
    int samples = 0;
    double worst_ratio = 0.0;
    double worst_x = 0.0;
    double worst_t = 0.0;
};

namespace detail {

inline Field pow_field(const Field& U, double p) {
    Field S = Field::zeros(U.grid);
    for (int n = 0; n < U.filled_levels; ++n) {
        const auto& src = U.row(n);
        auto& dst = S.alloc_level(n);
        for (std::size_t k = 0; k < src.size(); ++k) dst[k] = abs_pow(src[k], p);
        S.filled_levels = n + 1;
    }
    return S;
}

// Random continuous field on the physical cone: uniform nodal noise,
// one 5-point averaging pass, sup-normalized to 1. Ghost columns stay 0.
inline Field random_unit_field(const CharGrid& g, std::uint64_t seed) {
    Field noise = Field::zeros(g);
    Rng rng(seed);
    for (int n = 0; n < g.levels; ++n) {
        noise.alloc_level(n);
        for (int i = -(n + g.m); i <= n + g.m; ++i)
            noise.set(i, n, rng.uniform(-1.0, 1.0));
        noise.filled_levels = n + 1;
    }
    Field V = Field::zeros(g);
    double sup = 0.0;
    for (int n = 0; n < g.levels; ++n) {
        V.alloc_level(n);
        for (int i = -(n + g.m); i <= n + g.m; ++i) {
            double s = noise.at(i, n) + noise.at(i - 1, n) + noise.at(i + 1, n) +
                       noise.at(i, n - 1) + noise.at(i, n + 1);
            V.set(i, n, s / 5.0);
            sup = std::max(sup, std::abs(s / 5.0));
        }
        V.filled_levels = n + 1;
    }
    if (sup == 0.0) throw std::logic_error("random_unit_field: degenerate zero sample");
    for (int n = 0; n < g.levels; ++n)
        for (int i = -(n + g.m); i <= n + g.m; ++i) V.set(i, n, V.at(i, n) / sup);
    return V;
}

} // namespace detail

// Empirical constant for the a-priori bound: worst over `samples` random
// normalized fields of ||L'_a(|U|^p)||_sup / E_a(T).
inline AprioriReport verify_apriori(double a, double p, double T, double R, double h,
                                    int samples, std::uint64_t seed, unsigned jobs = 1) {
    if (samples < 1) throw std::invalid_argument("verify_apriori: samples must be >= 1");
    CharGrid g = build_grid(T, R, h);
    double E = E_a(T, R, a);

    struct SampleResult {
        double ratio = 0.0;
        double x = 0.0;
        double t = 0.0;
    };
    std::vector<SampleResult> results;
    results.resize(std::size_t(samples));

    parallel_for(std::size_t(samples), jobs, [&](std::size_t idx) {
        Field V = detail::random_unit_field(g, mix_seed(seed, idx));
        Field L = apply_Lp_field(a, detail::pow_field(V, p));
        SampleResult best;
        for (int n = 0; n < L.filled_levels; ++n) {
            int hw = g.half_width(n);
            const auto& r = L.row(n);
            for (int i = -hw; i <= hw; ++i) {
                double val = std::abs(r[std::size_t(i + hw)]) / E;
                if (val > best.ratio) best = {val, g.x(i), g.time(n)};
            }
        }
        results[idx] = best;
    });

    AprioriReport rep;
    rep.T = T;
    rep.a = a;
    rep.samples = samples;
    for (const auto& s : results)
        if (s.ratio > rep.worst_ratio) {
            rep.worst_ratio = s.ratio;
            rep.worst_x = s.x;
            rep.worst_t = s.t;
        }
    return rep;
}

} // namespace wavelife
