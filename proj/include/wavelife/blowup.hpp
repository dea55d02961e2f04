#pragma once

// Blow-up comparison machinery: the plateau constant G, the comparison ODE
// W' = c |W|^p / (1+x)^{1+a} with W(R) = Gε, its closed-form and RK4 blow-up
// abscissae, and the diagonal functional V(x, x+R) that dominates W.

#include <wavelife/apriori.hpp>
#include <wavelife/duhamel.hpp>
#include <wavelife/model.hpp>
#include <wavelife/picard.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wavelife {

inline double G_from_data(const BumpData& d) {
    if (!(d.total_g > 0.0))
        throw std::invalid_argument(
            "G_from_data: the comparison argument needs positive-mean data (∫ g dx > 0)");
    return 0.5 * d.total_g;
}

namespace detail {

// Φ(x) = ∫_R^x (1+s)^{-1-a} ds, exact.
inline double ode_phase(double a, double R, double x) {
    if (std::abs(a) <= a_zero_tol) return std::log((1.0 + x) / (1.0 + R));
    return (std::pow(1.0 + R, -a) - std::pow(1.0 + x, -a)) / a;
}

} // namespace detail

// Exact solution of W' = c|W|^p (1+x)^{-1-a}, W(R) = Geps > 0.
// Empty past the blow-up abscissa.
inline std::optional<double> closed_W(double p, double a, double R, double Geps, double c,
                                      double x) {
    if (!(p > 1.0)) throw std::invalid_argument("closed_W: p must exceed 1");
    if (!(Geps > 0.0)) throw std::invalid_argument("closed_W: Geps must be positive");
    double bracket = std::pow(Geps, 1.0 - p) - (p - 1.0) * c * detail::ode_phase(a, R, x);
    if (!(bracket > 0.0)) return std::nullopt;
    return std::pow(bracket, -1.0 / (p - 1.0));
}

// Blow-up abscissa of W in closed form; empty means W stays finite for all
// x (the global branch, which exists only for a > 0).
inline std::optional<double> blowup_time_closed(double p, double a, double R, double Geps,
                                                double c = 1.0) {
    if (!(p > 1.0)) throw std::invalid_argument("blowup_time_closed: p must exceed 1");
    if (!(Geps > 0.0)) throw std::invalid_argument("blowup_time_closed: Geps must be positive");
    double lhs = std::pow(Geps, 1.0 - p) / ((p - 1.0) * c);
    if (a < -a_zero_tol)
        return std::pow(-a * lhs + std::pow(1.0 + R, -a), -1.0 / a) - 1.0;
    if (a <= a_zero_tol) return (1.0 + R) * std::exp(lhs) - 1.0;
    double rhs = std::pow(1.0 + R, -a) - a * lhs;
    if (!(rhs > 0.0)) return std::nullopt; // Geps too small: W is global
    return std::pow(rhs, -1.0 / a) - 1.0;
}

struct OdeSolution {
    std::vector<double> xs;
    std::vector<double> ws;
    std::optional<double> blowup_x; // first abscissa where W exceeds the
                                    // threshold or the step collapses
};

// Adaptive RK4 with step doubling. Independent numeric route for the closed
// forms above.
inline OdeSolution ode_integrate(double p, double a, double R, double Geps,
                                 double threshold = 1e12, double c = 1.0,
                                 double x_max = 1e6) {
    if (!(p > 1.0)) throw std::invalid_argument("ode_integrate: p must exceed 1");
    if (!(Geps >= 0.0)) throw std::invalid_argument("ode_integrate: Geps must be >= 0");

    auto rhs = [&](double x, double w) { return c * abs_pow(w, p) * std::pow(1.0 + x, -1.0 - a); };
    auto rk4 = [&](double x, double w, double dx) {
        double k1 = rhs(x, w);
        double k2 = rhs(x + 0.5 * dx, w + 0.5 * dx * k1);
        double k3 = rhs(x + 0.5 * dx, w + 0.5 * dx * k2);
        double k4 = rhs(x + dx, w + dx * k3);
        return w + dx / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    OdeSolution sol;
    double x = R, w = Geps, dx = 1e-3;
    sol.xs.push_back(x);
    sol.ws.push_back(w);
    if (Geps == 0.0) {
        sol.xs.push_back(x_max);
        sol.ws.push_back(0.0);
        return sol; // W ≡ 0
    }
    const std::size_t max_steps = 50'000'000;
    for (std::size_t step = 0; step < max_steps && x < x_max; ++step) {
        if (dx < 1e-12) {
            sol.blowup_x = x;
            break;
        }
        if (x + dx > x_max) dx = x_max - x;
        double w_full = rk4(x, w, dx);
        double w_half = rk4(x + 0.5 * dx, rk4(x, w, 0.5 * dx), 0.5 * dx);
        double err = std::abs(w_half - w_full);
        double tol = 1e-10 * std::max(1.0, std::abs(w_half));
        if (err <= tol || dx <= 1e-12) {
            x += dx;
            w = w_half + (w_half - w_full) / 15.0;
            sol.xs.push_back(x);
            sol.ws.push_back(w);
            if (!std::isfinite(w) || w > threshold) {
                sol.blowup_x = x;
                break;
            }
        }
        double scale = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        dx *= std::min(5.0, std::max(0.2, scale));
    }
    return sol;
}

struct DiagonalSample {
    double x = 0.0;
    double V = 0.0;
};

// V along the diagonal t = x + R: the reconstructed w evaluated at the
// grid-aligned diagonal nodes, for x from R up to the solved horizon.
inline std::vector<DiagonalSample> lower_bound_functional(const ProblemSpec& ps,
                                                          const Field& solved) {
    const CharGrid& g = solved.grid;
    Field w = reconstruct_w(ps, solved);
    std::vector<DiagonalSample> out;
    for (int i = g.m;; ++i) {
        int n = i + g.m; // t = x + R
        if (n >= solved.filled_levels) break;
        out.push_back({g.x(i), w.at(i, n)});
    }
    return out;
}

struct ComparisonReport {
    bool passed = false;
    int checked = 0;
    double x_lo = 0.0, x_hi = 0.0;
    double min_margin = 0.0; // min over samples of V - W
    double x_at_min = 0.0;
    std::optional<double> first_violation_x;
};

// Verifies V(x, x+R) > W(x) at every sampled diagonal node, where W solves
// the comparison ODE with the caller-chosen constant c_used. Strictness is
// tested with a 1e-12 slack; a W that blows up inside the sampled range
// counts as a violation from that abscissa on.
inline ComparisonReport comparison_check(const ProblemSpec& ps, const Field& solved,
                                         double c_used) {
    double Geps = G_from_data(ps.data) * ps.epsilon;
    std::vector<DiagonalSample> diag = lower_bound_functional(ps, solved);
    ComparisonReport rep;
    if (diag.empty()) return rep;
    rep.x_lo = diag.front().x;
    rep.x_hi = diag.back().x;
    rep.checked = int(diag.size());
    rep.passed = true;
    bool first = true;
    for (const auto& s : diag) {
        std::optional<double> W = closed_W(ps.p, ps.a, ps.R, Geps, c_used, s.x);
        double margin = W ? s.V - *W : -std::numeric_limits<double>::infinity();
        if (first || margin < rep.min_margin) {
            rep.min_margin = margin;
            rep.x_at_min = s.x;
            first = false;
        }
        double slack = W ? 1e-12 * std::max(1.0, std::abs(*W)) : 0.0;
        if (!(margin > -slack)) {
            rep.passed = false;
            if (!rep.first_violation_x) rep.first_violation_x = s.x;
        }
    }
    return rep;
}

} // namespace wavelife
