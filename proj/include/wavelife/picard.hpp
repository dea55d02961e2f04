#pragma once

// Solvers for the integral equation U = ε u_t⁰ + L'_a(|U|^p): a global
// Picard iteration, and a causal time-marching solver whose per-level cost
// is O(width) thanks to running-sum forms of the characteristic integrals.
// Also reconstruction of u from u_t and the discrete PDE residual.

#include <wavelife/apriori.hpp>
#include <wavelife/dalembert.hpp>
#include <wavelife/duhamel.hpp>
#include <wavelife/model.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wavelife {

struct PicardDiagnostics {
    std::vector<double> diffs;  // sup-norm iterate differences
    std::vector<double> ratios; // consecutive quotients of diffs
    DataNorms norms;
    int iterations = 0;
    bool converged = false;
    double contraction_budget = 0.0; // ||U||^{p-1} * E_a(T)
};

class NotConverged : public std::runtime_error {
public:
    PicardDiagnostics diagnostics;
    explicit NotConverged(PicardDiagnostics d)
        : std::runtime_error("picard_solve: iteration did not contract; the horizon is at or "
                             "past the lifespan for this amplitude"),
          diagnostics(std::move(d)) {}
};

namespace detail {

inline Field add_fields(const Field& X, const Field& Y) {
    Field Z = Field::zeros(X.grid);
    for (int n = 0; n < X.filled_levels; ++n) {
        const auto& xr = X.row(n);
        const auto& yr = Y.row(n);
        auto& zr = Z.alloc_level(n);
        for (std::size_t k = 0; k < xr.size(); ++k) zr[k] = xr[k] + yr[k];
        Z.filled_levels = n + 1;
    }
    return Z;
}

inline double sup_diff(const Field& X, const Field& Y) {
    double s = 0.0;
    for (int n = 0; n < X.filled_levels; ++n) {
        const auto& xr = X.row(n);
        const auto& yr = Y.row(n);
        for (std::size_t k = 0; k < xr.size(); ++k) s = std::max(s, std::abs(xr[k] - yr[k]));
    }
    return s;
}

// ε u_t⁰ at node (i,n), skipping the data callbacks when both characteristic
// feet miss the support strips |x±t| <= R (exact: the profiles return 0.0
// outside their support, so the skipped value is identically zero).
inline double eps_u0t_node(const ProblemSpec& ps, const CharGrid& g, int i, int n) {
    if (std::abs(i + n) > g.m && std::abs(i - n) > g.m) return 0.0;
    return ps.epsilon * u0_t(ps.data, g.x(i), g.time(n));
}

} // namespace detail

// U_{j+1} = ε u_t⁰ + L'_a(|U_j|^p) at every node.
inline Field picard_iterate(const ProblemSpec& ps, const Field& U) {
    Field next = detail::add_fields(sample_u0_t(ps, U.grid),
                                    apply_Lp_field(ps.a, nonlinear_source(ps, U)));
    if (U.blown_up) {
        next.blown_up = true;
        next.first_failure_time = U.first_failure_time;
    }
    return next;
}

struct PicardResult {
    Field U;
    PicardDiagnostics diag;
};

inline PicardResult picard_solve(const ProblemSpec& ps, const CharGrid& grid,
                                 double tol = 1e-10, int max_iter = 200) {
    if (!(tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");
    ps.validate();

    Field Ufree = sample_u0_t(ps, grid);
    Field U = Ufree;

    PicardDiagnostics diag;
    diag.norms = data_norms(ps.data, grid.h);

    bool diverging = false;
    while (diag.iterations < max_iter) {
        Field next = detail::add_fields(Ufree, apply_Lp_field(ps.a, detail::pow_field(U, ps.p)));
        ++diag.iterations;
        double diff = detail::sup_diff(next, U);
        if (!diag.diffs.empty()) diag.ratios.push_back(diff / diag.diffs.back());
        diag.diffs.push_back(diff);
        U = std::move(next);
        if (diff <= tol) {
            diag.converged = true;
            break;
        }
        if (!std::isfinite(diff) || diff > 1e100) {
            diverging = true;
            break;
        }
    }

    diag.contraction_budget =
        std::pow(U.sup(), ps.p - 1.0) * E_a(grid.T, ps.R, ps.a);

    if (!diag.converged) {
        bool ratios_bad = diverging ||
                          (!diag.ratios.empty() && diag.ratios.back() >= 1.0) ||
                          !std::isfinite(diag.diffs.back());
        if (ratios_bad) throw NotConverged(std::move(diag));
    }
    return {std::move(U), std::move(diag)};
}

struct MarchStats {
    std::optional<double> blowup_time;
    double sup_ut = 0.0;
    std::vector<double> level_sups;
    bool support_ok = true;
    bool endpoint_fallback_used = false;
};

namespace detail {

// Level-marching core. At each node the trapezoid endpoint s=t is implicit:
// U = K + c|U|^p with c = (h/2) weight(x), resolved by a scalar fixed point
// (<= 50 steps, tol 1e-13 relative to max(1,|U|)) with an explicit-endpoint
// fallback. Fallback at any node is recorded as blow-up at that level, and
// marching stops after the level that crossed the threshold.
inline MarchStats march_core(const ProblemSpec& ps, const CharGrid& g, double threshold,
                             Field* store) {
    if (!(threshold > 0.0)) throw std::invalid_argument("march: threshold must be positive");
    ps.validate();

    MarchStats stats;
    stats.level_sups.reserve(std::size_t(g.levels));

    // weight(|i| h) cache; the weight is even in x.
    std::vector<double> wabs(std::size_t(g.half_width(g.levels - 1)) + 1);
    for (std::size_t k = 0; k < wabs.size(); ++k) wabs[k] = weight(double(k) * g.h, ps.a);

    std::vector<double> U_prev, U_cur, A_prev, A_cur, B_prev, B_cur, phi_prev, phi_cur;
    const double half_h = 0.5 * g.h;

    for (int n = 0; n < g.levels; ++n) {
        int hw = g.half_width(n);
        std::size_t wn = std::size_t(g.width(n));
        U_cur.assign(wn, 0.0);
        A_cur.assign(wn, 0.0);
        B_cur.assign(wn, 0.0);
        phi_cur.assign(wn, 0.0);

        bool fallback_here = false;
        if (n == 0) {
            for (int i = -hw; i <= hw; ++i) {
                std::size_t k = std::size_t(i + hw);
                U_cur[k] = detail::eps_u0t_node(ps, g, i, 0);
                phi_cur[k] = abs_pow(U_cur[k], ps.p) * wabs[std::size_t(std::abs(i))];
            }
        } else {
            int hwp = g.half_width(n - 1);
            auto prev = [&](const std::vector<double>& arr, int i) {
                return std::abs(i) <= hwp ? arr[std::size_t(i + hwp)] : 0.0;
            };
            for (int i = -hw; i <= hw; ++i) {
                std::size_t k = std::size_t(i + hw);
                double K = detail::eps_u0t_node(ps, g, i, n) +
                           0.5 * (prev(A_prev, i + 1) + prev(B_prev, i - 1) +
                                  half_h * (prev(phi_prev, i + 1) + prev(phi_prev, i - 1)));
                double c = half_h * wabs[std::size_t(std::abs(i))];
                double V = K;
                bool ok = false;
                for (int it = 0; it < 50; ++it) {
                    double Vn = K + c * abs_pow(V, ps.p);
                    if (std::abs(Vn - V) <= 1e-13 * std::max(1.0, std::abs(Vn))) {
                        V = Vn;
                        ok = true;
                        break;
                    }
                    V = Vn;
                    if (!std::isfinite(V)) break;
                }
                if (!ok) {
                    V = K + c * abs_pow(K, ps.p);
                    fallback_here = true;
                }
                U_cur[k] = V;
                double ph = abs_pow(V, ps.p) * wabs[std::size_t(std::abs(i))];
                phi_cur[k] = ph;
                A_cur[k] = prev(A_prev, i + 1) + half_h * (prev(phi_prev, i + 1) + ph);
                B_cur[k] = prev(B_prev, i - 1) + half_h * (prev(phi_prev, i - 1) + ph);
            }
        }

        double lsup = 0.0;
        for (double v : U_cur) lsup = std::max(lsup, std::abs(v));
        stats.level_sups.push_back(lsup);
        stats.sup_ut = std::max(stats.sup_ut, lsup);
        if (U_cur.front() != 0.0 || U_cur.back() != 0.0) stats.support_ok = false;

        if (store) {
            store->alloc_level(n) = U_cur;
            store->filled_levels = n + 1;
        }

        if (!std::isfinite(lsup) || lsup > threshold || fallback_here) {
            stats.blowup_time = g.time(n);
            stats.endpoint_fallback_used = fallback_here;
            if (store) store->mark_blowup(g.time(n));
            break;
        }

        U_prev.swap(U_cur);
        A_prev.swap(A_cur);
        B_prev.swap(B_cur);
        phi_prev.swap(phi_cur);
    }
    return stats;
}

} // namespace detail

struct MarchResult {
    Field U;
    std::optional<double> blowup_time;
    MarchStats stats;
};

inline MarchResult march_solve(const ProblemSpec& ps, const CharGrid& grid,
                               double blowup_threshold = 1e6) {
    MarchResult r;
    r.U = Field::zeros(grid);
    r.stats = detail::march_core(ps, grid, blowup_threshold, &r.U);
    r.blowup_time = r.stats.blowup_time;
    return r;
}

// w(x,t) = ∫₀ᵗ U(x,s) ds + ε f(x) by per-column trapezoid.
inline Field reconstruct_w(const ProblemSpec& ps, const Field& U) {
    const CharGrid& g = U.grid;
    Field w = Field::zeros(g);
    if (U.filled_levels == 0) return w;

    {
        auto& r0 = w.alloc_level(0);
        int hw = g.half_width(0);
        for (int i = -hw; i <= hw; ++i)
            r0[std::size_t(i + hw)] = std::abs(i) <= g.m ? ps.epsilon * ps.data.f(g.x(i)) : 0.0;
        w.filled_levels = 1;
    }
    const double half_h = 0.5 * g.h;
    for (int n = 1; n < U.filled_levels; ++n) {
        auto& r = w.alloc_level(n);
        int hw = g.half_width(n);
        for (int i = -hw; i <= hw; ++i)
            r[std::size_t(i + hw)] = w.at(i, n - 1) + half_h * (U.at(i, n - 1) + U.at(i, n));
        w.filled_levels = n + 1;
    }
    if (U.blown_up) {
        w.blown_up = true;
        w.first_failure_time = U.first_failure_time;
    }
    return w;
}

// Max over interior nodes of |D_tt w − D_xx w − |D_t w|^p weight(x)| with
// centered differences. Reads outside the stored cone are exact zeros, which
// is the correct continuation of w.
inline double pde_residual(const ProblemSpec& ps, const Field& w) {
    const CharGrid& g = w.grid;
    if (w.filled_levels < 3)
        throw std::invalid_argument("pde_residual: need at least three time levels");
    double h2 = g.h * g.h, inv2h = 1.0 / (2.0 * g.h);
    double worst = 0.0;
    for (int n = 1; n + 1 < w.filled_levels; ++n) {
        int hw = g.half_width(n);
        for (int i = -hw; i <= hw; ++i) {
            double c = w.at(i, n);
            double dtt = (w.at(i, n + 1) - 2.0 * c + w.at(i, n - 1)) / h2;
            double dxx = (w.at(i + 1, n) - 2.0 * c + w.at(i - 1, n)) / h2;
            double dt = (w.at(i, n + 1) - w.at(i, n - 1)) * inv2h;
            double res = std::abs(dtt - dxx - abs_pow(dt, ps.p) * weight(g.x(i), ps.a));
            worst = std::max(worst, res);
        }
    }
    return worst;
}

} // namespace wavelife
