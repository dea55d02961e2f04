#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wavelife {

// Composite trapezoid over [lo, hi] with n panels.
template <class F>
double trapezoid(F&& f, double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("trapezoid: need at least one panel");
    double h = (hi - lo) / n;
    double acc = 0.5 * (f(lo) + f(hi));
    for (int k = 1; k < n; ++k) acc += f(lo + k * h);
    return acc * h;
}

namespace detail {

template <class F>
double simpson_rec(F& f, double lo, double hi, double flo, double fmid, double fhi,
                   double whole, double tol, int depth) {
    double mid = 0.5 * (lo + hi);
    double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
    double flm = f(lmid), frm = f(rmid);
    double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson with Richardson acceptance. tol is absolute.
template <class F>
double adaptive_simpson(F&& f, double lo, double hi, double tol = 1e-12, int max_depth = 40) {
    if (lo == hi) return 0.0;
    double mid = 0.5 * (lo + hi);
    double flo = f(lo), fmid = f(mid), fhi = f(hi);
    double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return detail::simpson_rec(f, lo, hi, flo, fmid, fhi, whole, tol, max_depth);
}

} // namespace wavelife
