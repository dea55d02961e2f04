#pragma once

// Problem description and discrete geometry for the weighted-nonlinearity
// wave model: amplitude, exponents, compactly supported data, and the
// characteristic grid that every solver in this library marches on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavelife {

// Polynomial in the scaled variable u = x/R, nonzero only for |u| <= 1.
// Exact calculus on the coefficients keeps data derivatives and the
// antiderivative of g free of quadrature error.
struct PolyProfile {
    double R = 1.0;
    std::vector<double> coeffs; // c[k] * u^k

    double value(double x) const {
        double u = x / R;
        if (std::abs(u) > 1.0) return 0.0;
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * u + coeffs[k];
        return acc;
    }

    PolyProfile differentiate() const {
        PolyProfile d;
        d.R = R;
        if (coeffs.size() > 1) {
            d.coeffs.resize(coeffs.size() - 1);
            for (std::size_t k = 1; k < coeffs.size(); ++k)
                d.coeffs[k - 1] = coeffs[k] * double(k) / R; // d/dx = (1/R) d/du
        }
        return d;
    }

    // Antiderivative in x, normalized to vanish at the left support edge -R.
    PolyProfile antidifferentiate() const {
        PolyProfile A;
        A.R = R;
        A.coeffs.resize(coeffs.size() + 1, 0.0);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            A.coeffs[k + 1] = coeffs[k] * R / double(k + 1); // ∫ dx = R ∫ du
        double at_left = 0.0;
        for (std::size_t k = A.coeffs.size(); k-- > 0;)
            at_left = at_left * (-1.0) + A.coeffs[k];
        A.coeffs[0] = -at_left;
        return A;
    }

    double total() const {
        // ∫_{-R}^{R} value dx, exact.
        double acc = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); k += 2)
            acc += coeffs[k] * 2.0 / double(k + 1);
        return acc * R;
    }
};

// Initial data (f, g) with the derivatives and the exact antiderivative of g
// the solvers need. g_antideriv(x) = ∫_{-inf}^{x} g, so it is 0 for x <= -R
// and equals total_g for x >= R.
struct BumpData {
    double R = 1.0;
    std::function<double(double)> f, f_x, f_xx;
    std::function<double(double)> g, g_x, g_antideriv;
    double total_g = 0.0;
};

inline BumpData bump_from_polynomials(const PolyProfile& f, const PolyProfile& g) {
    if (f.R != g.R) throw std::invalid_argument("bump_from_polynomials: f and g disagree on R");
    PolyProfile fx = f.differentiate(), fxx = fx.differentiate();
    PolyProfile gx = g.differentiate(), gi = g.antidifferentiate();
    double R = g.R, tot = g.total();

    BumpData d;
    d.R = R;
    d.f = [f](double x) { return f.value(x); };
    d.f_x = [fx](double x) { return fx.value(x); };
    d.f_xx = [fxx](double x) { return fxx.value(x); };
    d.g = [g](double x) { return g.value(x); };
    d.g_x = [gx](double x) { return gx.value(x); };
    d.g_antideriv = [gi, R, tot](double x) {
        if (x <= -R) return 0.0;
        if (x >= R) return tot;
        return gi.value(x);
    };
    d.total_g = tot;
    return d;
}

// f ≡ 0, g(x) = (1 - (x/R)^2)^4 on |x| <= R. C^3 across the support edge,
// positive total mass: total_g = 256 R / 315.
inline BumpData default_bump(double R = 1.0) {
    if (!(R >= 1.0))
        throw std::invalid_argument("default_bump: R must be >= 1, got " + std::to_string(R));
    PolyProfile f;
    f.R = R;
    PolyProfile g;
    g.R = R;
    g.coeffs = {1.0, 0.0, -4.0, 0.0, 6.0, 0.0, -4.0, 0.0, 1.0}; // (1-u^2)^4
    return bump_from_polynomials(f, g);
}

struct ProblemSpec {
    double p = 2.0;       // nonlinearity exponent, > 1
    double a = 0.0;       // decay exponent of the spatial weight
    double epsilon = 0.1; // data amplitude, >= 0
    double R = 1.0;       // support radius of the data
    BumpData data;

    void validate() const {
        if (!(p > 1.0)) throw std::invalid_argument("ProblemSpec: p must exceed 1");
        if (!(epsilon >= 0.0)) throw std::invalid_argument("ProblemSpec: epsilon must be >= 0");
        if (!(R >= 1.0)) throw std::invalid_argument("ProblemSpec: R must be >= 1");
        if (data.R != R) throw std::invalid_argument("ProblemSpec: data support radius disagrees with R");
    }
};

inline double weight(double y, double a) {
    // (1 + y^2)^{-(1+a)/2}, evaluated in log space so large |y| and very
    // negative a cannot overflow intermediates.
    return std::exp(-0.5 * (1.0 + a) * std::log1p(y * y));
}

// Null grid: dt = dx = h, so every characteristic through a node passes
// through nodes. Level n stores x-indices |i| <= n + m + 1 (physical cone
// |x| <= t + R plus one ghost column each side); R = m*h after snapping.
struct CharGrid {
    double h = 0.0;
    double T = 0.0;  // requested horizon; time(levels-1) >= T
    int levels = 0;  // stored levels, n = 0..levels-1
    int m = 0;
    bool snapped = false;

    double time(int n) const { return n * h; }
    double x(int i) const { return i * h; }
    double R() const { return m * h; }
    int half_width(int n) const { return n + m + 1; }
    int width(int n) const { return 2 * (n + m + 1) + 1; }
    bool in_grid(int i, int n) const { return std::abs(i) <= n + m + 1; }
    bool in_support_cone(int i, int n) const { return std::abs(i) <= n + m; }

    std::int64_t node_count() const {
        std::int64_t L = levels, M = m;
        return L * (2 * M + 3) + L * (L - 1);
    }
};

// max_stored_nodes bounds full-field storage; callers that stream level by
// level (lifespan measurement) pass a larger cap since their memory is
// O(width), not O(nodes).
inline CharGrid build_grid(double T, double R, double h,
                           std::int64_t max_stored_nodes = 2000000000LL) {
    if (!(h > 0.0)) throw std::invalid_argument("build_grid: h must be positive");
    if (!(T >= 0.0)) throw std::invalid_argument("build_grid: T must be >= 0");
    if (!(R > 0.0)) throw std::invalid_argument("build_grid: R must be positive");

    CharGrid grid;
    int m = int(std::llround(R / h));
    if (m < 1) m = 1;
    double h_used = R / m;
    grid.snapped = std::abs(h_used - h) > 1e-12 * h;
    grid.h = h_used;
    grid.m = m;
    grid.T = T;
    double lv = std::ceil(T / h_used - 1e-12) + 1.0;
    if (lv > 2e8)
        throw std::invalid_argument("build_grid: more than 2e8 levels; coarsen h or shorten T");
    grid.levels = int(lv);

    if (grid.node_count() > max_stored_nodes)
        throw std::invalid_argument(
            "build_grid: grid would exceed the node budget; coarsen h or shorten T");
    return grid;
}

// Ragged per-level storage over the light cone (plus ghost columns). Rows
// allocate lazily so a partially marched solve only pays for the levels it
// reached. Reads outside the stored cone return exact zero, which is the
// correct field value by finite propagation speed.
struct Field {
    CharGrid grid;
    std::vector<std::vector<double>> rows; // rows[n][i + n + m + 1]
    int filled_levels = 0;                 // rows 0..filled_levels-1 are valid
    bool blown_up = false;
    std::optional<double> first_failure_time;

    static Field zeros(const CharGrid& g) {
        Field F;
        F.grid = g;
        F.rows.resize(std::size_t(g.levels));
        return F;
    }

    std::vector<double>& alloc_level(int n) {
        auto& r = rows[std::size_t(n)];
        if (r.empty()) r.assign(std::size_t(grid.width(n)), 0.0);
        return r;
    }

    double at(int i, int n) const {
        if (n < 0 || n >= filled_levels) return 0.0;
        if (!grid.in_grid(i, n)) return 0.0;
        const auto& r = rows[std::size_t(n)];
        if (r.empty()) return 0.0;
        return r[std::size_t(i + n + grid.m + 1)];
    }

    void set(int i, int n, double v) { alloc_level(n)[std::size_t(i + n + grid.m + 1)] = v; }

    const std::vector<double>& row(int n) const { return rows[std::size_t(n)]; }

    void mark_blowup(double t) {
        if (!blown_up) {
            blown_up = true;
            first_failure_time = t;
        }
    }

    double sup() const {
        double s = 0.0;
        for (int n = 0; n < filled_levels; ++n)
            for (double v : rows[std::size_t(n)]) s = std::max(s, std::abs(v));
        return s;
    }

    double level_sup(int n) const {
        double s = 0.0;
        if (n >= 0 && n < filled_levels)
            for (double v : rows[std::size_t(n)]) s = std::max(s, std::abs(v));
        return s;
    }
};

// True when the field vanishes exactly outside the physical cone |x| <= t+R:
// the stored ghost columns (array front/back, at |x| = t+R+h) must hold
// exact zeros; everything further out is zero by Field::at construction.
inline bool check_support(const Field& F) {
    for (int n = 0; n < F.filled_levels; ++n) {
        const auto& r = F.rows[std::size_t(n)];
        if (r.empty()) continue;
        if (r.front() != 0.0 || r.back() != 0.0) return false;
    }
    return true;
}

struct DataNorms {
    double M = 0.0; // ||f'|| + ||f''|| + ||g|| + ||g'||   (sup norms)
    double N = 0.0; // ||f'|| + ||g||
};

// Sup norms by dense sampling at resolution h/4 over [-R, R]; the profiles
// are smooth, so the sampling error is O(h^2) and documented as such.
inline DataNorms data_norms(const BumpData& d, double h) {
    DataNorms n;
    double fxmax = 0.0, fxxmax = 0.0, gmax = 0.0, gxmax = 0.0;
    double step = h / 4.0;
    int steps = std::max(1, int(std::ceil(2.0 * d.R / step)));
    for (int k = 0; k <= steps; ++k) {
        double x = -d.R + 2.0 * d.R * double(k) / double(steps);
        fxmax = std::max(fxmax, std::abs(d.f_x(x)));
        fxxmax = std::max(fxxmax, std::abs(d.f_xx(x)));
        gmax = std::max(gmax, std::abs(d.g(x)));
        gxmax = std::max(gxmax, std::abs(d.g_x(x)));
    }
    n.M = fxmax + fxxmax + gmax + gxmax;
    n.N = fxmax + gmax;
    return n;
}

// Compact-support smoothness contract: f, f', f'' and g, g' all vanish at
// the support edge x = ±R, so the data are C^2 x C^1 across it.
inline bool check_profile_smoothness(const BumpData& d, double tol = 1e-12) {
    for (double s : {-1.0, 1.0}) {
        double x = s * d.R;
        if (std::abs(d.f(x)) > tol) return false;
        if (std::abs(d.f_x(x)) > tol) return false;
        if (std::abs(d.f_xx(x)) > tol) return false;
        if (std::abs(d.g(x)) > tol) return false;
        if (std::abs(d.g_x(x)) > tol) return false;
    }
    return true;
}

struct NodeIndex {
    int i = 0;
    int n = 0;
};

inline NodeIndex locate_node(const CharGrid& g, double x, double t) {
    double fi = x / g.h, fn = t / g.h;
    int i = int(std::llround(fi)), n = int(std::llround(fn));
    if (std::abs(fi - i) > 1e-9 || std::abs(fn - n) > 1e-9)
        throw std::invalid_argument("locate_node: (x,t) is not a grid node");
    if (n < 0 || n >= g.levels || !g.in_grid(i, n))
        throw std::invalid_argument("locate_node: node outside the stored cone");
    return {i, n};
}

} // namespace wavelife
