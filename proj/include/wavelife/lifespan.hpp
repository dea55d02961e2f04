#pragma once

// Lifespan measurement and ε-sweeps with regression against the scaling
// laws: T(ε) ~ ε^{-(p-1)/(-a)} for a < 0, exp(C ε^{-(p-1)}) for a = 0,
// global existence for a > 0.

#include <wavelife/model.hpp>
#include <wavelife/parallel.hpp>
#include <wavelife/picard.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavelife {

struct LifespanOutcome {
    bool global = false;
    double T_num = 0.0; // detected blow-up time, or T_max when global
    double sup_ut = 0.0;
    std::vector<double> level_sups;
    double h = 0.0;
    bool support_ok = true;
};

// Numerical lifespan: march (streaming, no field storage) until the level
// sup crosses the threshold or T_max is reached.
inline LifespanOutcome measure_lifespan(const ProblemSpec& ps, double h, double threshold,
                                        double T_max) {
    if (!std::isfinite(T_max) || !(T_max > 0.0))
        throw std::invalid_argument("measure_lifespan: T_max must be finite and positive");
    // Streaming march: memory is O(width), so only the level-count guard
    // applies, not the stored-node budget.
    CharGrid g = build_grid(T_max, ps.R, h, std::numeric_limits<std::int64_t>::max());
    MarchStats stats = detail::march_core(ps, g, threshold, nullptr);
    LifespanOutcome out;
    out.h = g.h;
    out.sup_ut = stats.sup_ut;
    out.level_sups = std::move(stats.level_sups);
    out.support_ok = stats.support_ok;
    if (stats.blowup_time) {
        out.global = false;
        out.T_num = *stats.blowup_time;
    } else {
        out.global = true;
        out.T_num = T_max;
    }
    return out;
}

struct LifespanRow {
    double epsilon = 0.0;
    double T_num = std::numeric_limits<double>::quiet_NaN();
    bool global = false;
    double h = 0.0;
    double threshold = 0.0;
    std::string solver = "march";
    std::string error; // nonempty when this row failed; sweep continues
};

struct LifespanTable {
    std::vector<LifespanRow> rows;
    double T_max = 0.0;
};

inline LifespanTable sweep(const ProblemSpec& base, const std::vector<double>& epsilons,
                           double h, double threshold, double T_max, unsigned jobs = 1) {
    if (epsilons.empty()) throw std::invalid_argument("sweep: epsilon list is empty");
    if (epsilons.size() > 1) {
        bool inc = epsilons[1] > epsilons[0];
        for (std::size_t k = 0; k + 1 < epsilons.size(); ++k) {
            bool ok = inc ? epsilons[k + 1] > epsilons[k] : epsilons[k + 1] < epsilons[k];
            if (!ok)
                throw std::invalid_argument(
                    "sweep: epsilon list must be strictly monotone with no duplicates");
        }
    }
    LifespanTable table;
    table.T_max = T_max;
    table.rows.resize(epsilons.size());
    parallel_for(epsilons.size(), jobs, [&](std::size_t k) {
        LifespanRow row;
        row.epsilon = epsilons[k];
        row.h = h;
        row.threshold = threshold;
        try {
            ProblemSpec ps = base;
            ps.epsilon = epsilons[k];
            LifespanOutcome res = measure_lifespan(ps, h, threshold, T_max);
            row.T_num = res.T_num;
            row.global = res.global;
            row.h = res.h;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        table.rows[k] = std::move(row);
    });
    return table;
}

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // max abs deviation in the regression coordinates
    std::string law;       // "power" | "exp"
    double eps_logT_max_over_min = 0.0; // exp law only: spread of ε^{p-1}·log T
};

namespace detail {

inline std::vector<const LifespanRow*> finite_rows(const LifespanTable& t) {
    std::vector<const LifespanRow*> out;
    bool any_global = false;
    for (const auto& r : t.rows) {
        if (!r.error.empty()) continue;
        if (r.global) {
            any_global = true;
            continue;
        }
        if (std::isfinite(r.T_num) && r.T_num > 0.0) out.push_back(&r);
    }
    if (out.empty() && any_global)
        throw std::domain_error(
            "fit: every row is global (no finite lifespan); use the a>0 interpretation "
            "instead of a power/exp fit");
    return out;
}

struct LsqLine {
    double slope = 0.0, intercept = 0.0, residual = 0.0;
};

inline LsqLine least_squares(const std::vector<double>& X, const std::vector<double>& Y) {
    double n = double(X.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < X.size(); ++k) {
        sx += X[k];
        sy += Y[k];
        sxx += X[k] * X[k];
        sxy += X[k] * Y[k];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit: degenerate abscissae");
    LsqLine l;
    l.slope = (n * sxy - sx * sy) / denom;
    l.intercept = (sy - l.slope * sx) / n;
    for (std::size_t k = 0; k < X.size(); ++k)
        l.residual = std::max(l.residual, std::abs(Y[k] - (l.slope * X[k] + l.intercept)));
    return l;
}

} // namespace detail

// Least squares of log T against log ε (the a < 0 branch).
inline FitResult fit_power_law(const LifespanTable& table) {
    auto rows = detail::finite_rows(table);
    if (rows.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 finite rows");
    std::vector<double> X, Y;
    for (auto* r : rows) {
        X.push_back(std::log(r->epsilon));
        Y.push_back(std::log(r->T_num));
    }
    auto l = detail::least_squares(X, Y);
    FitResult f;
    f.slope = l.slope;
    f.intercept = l.intercept;
    f.residual = l.residual;
    f.law = "power";
    return f;
}

// Regression of log log T against log ε (the a = 0 branch), plus the spread
// of the sequence ε^{p-1}·log T, which the exponential law predicts constant.
inline FitResult fit_exp_law(const LifespanTable& table, double p) {
    auto rows = detail::finite_rows(table);
    if (rows.size() < 3)
        throw std::invalid_argument("fit_exp_law: need at least 3 finite rows");
    for (auto* r : rows)
        if (!(r->T_num > 1.0))
            throw std::invalid_argument("fit_exp_law: all lifespans must exceed 1");
    std::vector<double> X, Y;
    double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
    for (auto* r : rows) {
        X.push_back(std::log(r->epsilon));
        Y.push_back(std::log(std::log(r->T_num)));
        double v = std::pow(r->epsilon, p - 1.0) * std::log(r->T_num);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    auto l = detail::least_squares(X, Y);
    FitResult f;
    f.slope = l.slope;
    f.intercept = l.intercept;
    f.residual = l.residual;
    f.law = "exp";
    f.eps_logT_max_over_min = vmax / vmin;
    return f;
}

} // namespace wavelife
