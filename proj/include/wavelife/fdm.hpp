#pragma once

// Independent finite-difference check on the integral-equation solvers:
// explicit three-level leapfrog at CFL = 1 with a backward-difference source
// term. At unit Courant number the scheme propagates the free d'Alembert
// solution exactly, so every observed discrepancy belongs to the source.

#include <wavelife/dalembert.hpp>
#include <wavelife/duhamel.hpp>
#include <wavelife/model.hpp>
#include <wavelife/picard.hpp>

#include <cmath>
#include <optional>
#include <vector>

namespace wavelife {

struct LeapfrogResult {
    Field u;
    Field ut; // centered in time; second-order one-sided at the ends
    std::optional<double> blowup_time;
};

struct LeapfrogOptions {
    double blowup_threshold = 1e6;
    bool nonlinearity = true; // test hook: false zeroes the source term
};

inline LeapfrogResult leapfrog_solve(const ProblemSpec& ps, const CharGrid& g,
                                     LeapfrogOptions opt = {}) {
    ps.validate();
    LeapfrogResult res;
    res.u = Field::zeros(g);
    res.ut = Field::zeros(g);
    Field& u = res.u;
    const double h = g.h;
    const double nl = opt.nonlinearity ? 1.0 : 0.0;

    std::vector<double> wabs(std::size_t(g.half_width(g.levels - 1)) + 1);
    for (std::size_t k = 0; k < wabs.size(); ++k) wabs[k] = weight(double(k) * h, ps.a);

    {
        auto& r0 = u.alloc_level(0);
        int hw = g.half_width(0);
        for (int i = -hw; i <= hw; ++i)
            r0[std::size_t(i + hw)] = std::abs(i) <= g.m ? ps.epsilon * ps.data.f(g.x(i)) : 0.0;
        u.filled_levels = 1;
    }

    if (g.levels > 1) {
        // First step: exact free solution at t = h plus the Taylor source
        // term (h²/2)|ε g|^p weight; the linear part must be exact so the
        // scheme stays on the d'Alembert solution when the source is off.
        auto& r1 = u.alloc_level(1);
        int hw = g.half_width(1);
        for (int i = -hw; i <= hw; ++i) {
            double lin = std::abs(i) <= 1 + g.m ? ps.epsilon * u0(ps.data, g.x(i), h) : 0.0;
            double gi = std::abs(i) <= g.m ? ps.data.g(g.x(i)) : 0.0;
            double src = 0.5 * h * h * abs_pow(ps.epsilon * gi, ps.p) *
                         wabs[std::size_t(std::abs(i))];
            r1[std::size_t(i + hw)] = lin + nl * src;
        }
        u.filled_levels = 2;
        double bsup = 0.0;
        for (int i = -hw; i <= hw; ++i)
            bsup = std::max(bsup, std::abs(u.at(i, 1) - u.at(i, 0)) / h);
        if (!std::isfinite(bsup) || bsup > opt.blowup_threshold) {
            res.blowup_time = g.time(1);
            u.mark_blowup(g.time(1));
        }
    }

    for (int n = 1; n + 1 < g.levels && !res.blowup_time; ++n) {
        auto& r = u.alloc_level(n + 1);
        int hw = g.half_width(n + 1);
        double bsup = 0.0;
        for (int i = -hw; i <= hw; ++i) {
            double dtb = (u.at(i, n) - u.at(i, n - 1)) / h;
            double v = u.at(i + 1, n) + u.at(i - 1, n) - u.at(i, n - 1) +
                       nl * h * h * abs_pow(dtb, ps.p) * wabs[std::size_t(std::abs(i))];
            r[std::size_t(i + hw)] = v;
        }
        u.filled_levels = n + 2;
        for (int i = -hw; i <= hw; ++i)
            bsup = std::max(bsup, std::abs(u.at(i, n + 1) - u.at(i, n)) / h);
        if (!std::isfinite(bsup) || bsup > opt.blowup_threshold) {
            res.blowup_time = g.time(n + 1);
            u.mark_blowup(g.time(n + 1));
        }
    }

    // u_t by differencing the filled levels. Only the physical cone
    // |i| <= n+m is written: u_t vanishes identically outside |x| <= t+R,
    // and at a ghost column the centered stencil would leak the cone growth
    // of level n+1 into level n.
    Field& ut = res.ut;
    int N = u.filled_levels;
    for (int n = 0; n < N; ++n) {
        auto& r = ut.alloc_level(n);
        int hw = g.half_width(n);
        for (int i = -(n + g.m); i <= n + g.m; ++i) {
            double v;
            if (N == 1) {
                v = std::abs(i) <= g.m ? ps.epsilon * ps.data.g(g.x(i)) : 0.0;
            } else if (n == 0) {
                v = N >= 3 ? (-3.0 * u.at(i, 0) + 4.0 * u.at(i, 1) - u.at(i, 2)) / (2.0 * h)
                           : (u.at(i, 1) - u.at(i, 0)) / h;
            } else if (n + 1 < N) {
                v = (u.at(i, n + 1) - u.at(i, n - 1)) / (2.0 * h);
            } else {
                v = N >= 3 ? (3.0 * u.at(i, n) - 4.0 * u.at(i, n - 1) + u.at(i, n - 2)) / (2.0 * h)
                           : (u.at(i, n) - u.at(i, n - 1)) / h;
            }
            r[std::size_t(i + hw)] = v;
        }
        ut.filled_levels = n + 1;
    }
    if (u.blown_up) {
        ut.blown_up = true;
        ut.first_failure_time = u.first_failure_time;
    }
    return res;
}

struct CompareReport {
    std::vector<double> ut_diff; // per common pre-blow-up level
    std::vector<double> u_diff;
    double sup_ut_diff = 0.0;
    double sup_u_diff = 0.0;
    std::optional<double> march_blowup;
    std::optional<double> fdm_blowup;
    bool blowup_mismatch = false; // exactly one solver blew up
    int compared_levels = 0;
};

inline CompareReport compare_solvers(const ProblemSpec& ps, const CharGrid& g,
                                     double blowup_threshold = 1e6) {
    CompareReport rep;
    MarchResult march = march_solve(ps, g, blowup_threshold);
    Field w = reconstruct_w(ps, march.U);
    LeapfrogOptions opt;
    opt.blowup_threshold = blowup_threshold;
    LeapfrogResult fdm = leapfrog_solve(ps, g, opt);

    rep.march_blowup = march.blowup_time;
    rep.fdm_blowup = fdm.blowup_time;
    rep.blowup_mismatch = march.blowup_time.has_value() != fdm.blowup_time.has_value();

    int N = std::min(march.U.filled_levels, fdm.u.filled_levels);
    // Values on a blow-up level are past the threshold; compare below it.
    if (march.blowup_time || fdm.blowup_time) N = std::max(0, N - 1);
    rep.compared_levels = N;
    rep.ut_diff.resize(std::size_t(N), 0.0);
    rep.u_diff.resize(std::size_t(N), 0.0);
    for (int n = 0; n < N; ++n) {
        int hw = g.half_width(n);
        double du = 0.0, dut = 0.0;
        for (int i = -hw; i <= hw; ++i) {
            dut = std::max(dut, std::abs(march.U.at(i, n) - fdm.ut.at(i, n)));
            du = std::max(du, std::abs(w.at(i, n) - fdm.u.at(i, n)));
        }
        rep.ut_diff[std::size_t(n)] = dut;
        rep.u_diff[std::size_t(n)] = du;
        rep.sup_ut_diff = std::max(rep.sup_ut_diff, dut);
        rep.sup_u_diff = std::max(rep.sup_u_diff, du);
    }
    return rep;
}

} // namespace wavelife
