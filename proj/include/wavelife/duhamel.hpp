#pragma once

// Weighted Duhamel operators on the characteristic grid: the cone integral
// L_a, the characteristic line integrals L'_a, and the conjugate L̄'_a.
// All quadrature is composite trapezoid over grid nodes; with dt = dx the
// characteristic samples are exact node hits, so the schemes are
// second-order without interpolation.

#include <wavelife/model.hpp>

#include <cmath>

namespace wavelife {

inline double abs_pow(double v, double p) {
    double m = std::abs(v);
    if (p == 2.0) return m * m;
    if (p == 3.0) return m * m * m;
    return std::pow(m, p);
}

namespace detail {

// Trapezoid along the characteristic s -> (x + dir*(t-s), s) through node
// (i, n), of v(y,s)*weight(y). dir = +1 walks the left-going family.
inline double char_trapezoid(double a, const Field& v, int i, int n, int dir) {
    const CharGrid& g = v.grid;
    if (n == 0) return 0.0;
    double acc = 0.5 * v.at(i + dir * n, 0) * weight(g.x(i + dir * n), a);
    for (int k = 1; k < n; ++k) {
        int j = i + dir * (n - k);
        acc += v.at(j, k) * weight(g.x(j), a);
    }
    acc += 0.5 * v.at(i, n) * weight(g.x(i), a);
    return acc * g.h;
}

} // namespace detail

// L'_a(v)(x,t) = ½∫₀ᵗ v(x+t−s,s)·weight(x+t−s) ds
//              + ½∫₀ᵗ v(x−t+s,s)·weight(x−t+s) ds
inline double apply_Lp(double a, const Field& v, double x, double t) {
    NodeIndex nd = locate_node(v.grid, x, t);
    return 0.5 * (detail::char_trapezoid(a, v, nd.i, nd.n, +1) +
                  detail::char_trapezoid(a, v, nd.i, nd.n, -1));
}

// Same two integrals with a minus sign on the second characteristic.
inline double apply_Lp_bar(double a, const Field& v, double x, double t) {
    NodeIndex nd = locate_node(v.grid, x, t);
    return 0.5 * (detail::char_trapezoid(a, v, nd.i, nd.n, +1) -
                  detail::char_trapezoid(a, v, nd.i, nd.n, -1));
}

// L_a(v)(x,t) = ½∫₀ᵗ ds ∫_{x−t+s}^{x+t−s} v(y,s)·weight(y) dy, iterated
// trapezoid over the backward triangle of dependence.
inline double apply_L(double a, const Field& v, double x, double t) {
    NodeIndex nd = locate_node(v.grid, x, t);
    const CharGrid& g = v.grid;
    if (nd.n == 0) return 0.0;
    auto inner = [&](int k) {
        int half = nd.n - k;
        if (half == 0) return 0.0;
        double acc = 0.5 * (v.at(nd.i - half, k) * weight(g.x(nd.i - half), a) +
                            v.at(nd.i + half, k) * weight(g.x(nd.i + half), a));
        for (int j = nd.i - half + 1; j <= nd.i + half - 1; ++j)
            acc += v.at(j, k) * weight(g.x(j), a);
        return acc * g.h;
    };
    double outer = 0.5 * inner(0); // inner(n) = 0, so the top endpoint drops
    for (int k = 1; k < nd.n; ++k) outer += inner(k);
    outer *= g.h;
    return 0.5 * outer;
}

// Nodewise |U|^p. The weight is applied inside the operators, not here.
// Non-finite results mark the output blown-up at the first offending level.
inline Field nonlinear_source(const ProblemSpec& ps, const Field& U) {
    Field S = Field::zeros(U.grid);
    for (int n = 0; n < U.filled_levels; ++n) {
        const auto& src = U.row(n);
        auto& dst = S.alloc_level(n);
        for (std::size_t k = 0; k < src.size(); ++k) {
            dst[k] = abs_pow(src[k], ps.p);
            if (!std::isfinite(dst[k])) S.mark_blowup(U.grid.time(n));
        }
        S.filled_levels = n + 1;
    }
    if (U.blown_up) {
        S.blown_up = true;
        S.first_failure_time = U.first_failure_time;
    }
    return S;
}

// Evaluates L'_a(v) at every stored node in O(nodes) total, using the
// running sums of the two characteristic trapezoids:
//   A(i,n) = A(i+1,n−1) + (h/2)[φ(i+1,n−1) + φ(i,n)]
//   B(i,n) = B(i−1,n−1) + (h/2)[φ(i−1,n−1) + φ(i,n)]
// with φ = v·weight, and L'_a(v) = (A+B)/2. Node-for-node this reproduces
// apply_Lp up to rounding.
inline Field apply_Lp_field(double a, const Field& v) {
    const CharGrid& g = v.grid;
    Field L = Field::zeros(g);
    int levels = v.filled_levels;
    if (levels == 0) return L;

    std::vector<double> A_prev, B_prev, phi_prev, A_cur, B_cur, phi_cur, wcache;

    for (int n = 0; n < levels; ++n) {
        int hw = g.half_width(n);
        std::size_t w_n = std::size_t(g.width(n));
        A_cur.assign(w_n, 0.0);
        B_cur.assign(w_n, 0.0);
        phi_cur.assign(w_n, 0.0);
        auto& out = L.alloc_level(n);

        const auto& vrow = v.row(n);
        wcache.resize(w_n);
        for (int i = -hw; i <= hw; ++i)
            wcache[std::size_t(i + hw)] = weight(g.x(i), a);
        for (std::size_t k = 0; k < w_n; ++k) phi_cur[k] = vrow[k] * wcache[k];

        if (n > 0) {
            int hwp = g.half_width(n - 1);
            auto prev = [&](const std::vector<double>& arr, int i) {
                return std::abs(i) <= hwp ? arr[std::size_t(i + hwp)] : 0.0;
            };
            double half_h = 0.5 * g.h;
            for (int i = -hw; i <= hw; ++i) {
                std::size_t k = std::size_t(i + hw);
                A_cur[k] = prev(A_prev, i + 1) + half_h * (prev(phi_prev, i + 1) + phi_cur[k]);
                B_cur[k] = prev(B_prev, i - 1) + half_h * (prev(phi_prev, i - 1) + phi_cur[k]);
                out[k] = 0.5 * (A_cur[k] + B_cur[k]);
            }
        }
        L.filled_levels = n + 1;

        A_prev.swap(A_cur);
        B_prev.swap(B_cur);
        phi_prev.swap(phi_cur);
    }
    return L;
}

} // namespace wavelife
