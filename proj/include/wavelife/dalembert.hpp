#pragma once

// Free wave u0 with data (f, g) and its first and second derivatives, all in
// closed form. The running integral of g comes from the exact antiderivative
// in BumpData, so there is no quadrature anywhere in this header.

#include <wavelife/model.hpp>

namespace wavelife {

inline double u0(const BumpData& d, double x, double t) {
    return 0.5 * (d.f(x + t) + d.f(x - t)) +
           0.5 * (d.g_antideriv(x + t) - d.g_antideriv(x - t));
}

inline double u0_t(const BumpData& d, double x, double t) {
    return 0.5 * (d.f_x(x + t) - d.f_x(x - t)) + 0.5 * (d.g(x + t) + d.g(x - t));
}

inline double u0_x(const BumpData& d, double x, double t) {
    return 0.5 * (d.f_x(x + t) + d.f_x(x - t)) + 0.5 * (d.g(x + t) - d.g(x - t));
}

inline double u0_tx(const BumpData& d, double x, double t) {
    return 0.5 * (d.f_xx(x + t) - d.f_xx(x - t)) + 0.5 * (d.g_x(x + t) + d.g_x(x - t));
}

inline double u0_tt(const BumpData& d, double x, double t) {
    return 0.5 * (d.f_xx(x + t) + d.f_xx(x - t)) + 0.5 * (d.g_x(x + t) - d.g_x(x - t));
}

// u0_xx coincides with u0_tt: the free solution solves the wave equation.
inline double u0_xx(const BumpData& d, double x, double t) { return u0_tt(d, x, t); }

// Samples eps * u0_t on every stored node. This is both the first Picard
// iterate and the source term the marching solver corrects. Ghost columns
// get exact zeros because all four data arguments fall outside the support.
inline Field sample_u0_t(const ProblemSpec& ps, const CharGrid& g) {
    Field F = Field::zeros(g);
    for (int n = 0; n < g.levels; ++n) {
        auto& r = F.alloc_level(n);
        double t = g.time(n);
        int hw = g.half_width(n);
        for (int i = -hw; i <= hw; ++i)
            r[std::size_t(i + hw)] = ps.epsilon * u0_t(ps.data, g.x(i), t);
        F.filled_levels = n + 1;
    }
    return F;
}

} // namespace wavelife
