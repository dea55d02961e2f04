// wavelife: experiment driver for the semilinear wave lifespan laboratory.
//
// Subcommands: solve, sweep, fit, verify-apriori, blowup-time, compare-oracle.
// Every output CSV gets a sibling <file>.manifest.json recording the config
// snapshot, seed, timing, and FNV-1a digests. Exit status: 0 success,
// 1 scientific failure, 2 usage or config error.

#include <wavelife/apriori.hpp>
#include <wavelife/blowup.hpp>
#include <wavelife/config.hpp>
#include <wavelife/csv.hpp>
#include <wavelife/dalembert.hpp>
#include <wavelife/duhamel.hpp>
#include <wavelife/fdm.hpp>
#include <wavelife/hash.hpp>
#include <wavelife/lifespan.hpp>
#include <wavelife/manifest.hpp>
#include <wavelife/model.hpp>
#include <wavelife/parallel.hpp>
#include <wavelife/picard.hpp>
#include <wavelife/rng.hpp>
#include <wavelife/svgplot.hpp>
#include <wavelife/version.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace wavelife;
using clock_type = std::chrono::steady_clock;

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("WAVELIFE_SEED");
    if (!s || !*s) return std::nullopt;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0') throw ConfigError("WAVELIFE_SEED must be an unsigned integer");
    return std::uint64_t(v);
}

std::string strip_csv(const std::string& path) {
    if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
        return path.substr(0, path.size() - 4);
    return path;
}

double elapsed_ms(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

// ---------------------------------------------------------------- selftest

struct SelfTest {
    int run = 0, failed = 0;

    void check(const std::string& name, bool ok) {
        ++run;
        if (!ok) {
            ++failed;
            std::printf("selftest FAIL: %s\n", name.c_str());
        }
    }
    void close(const std::string& name, double got, double want, double rel = 1e-12) {
        check(name, std::abs(got - want) <= rel * std::max(1.0, std::abs(want)));
    }
};

int run_selftest() {
    SelfTest t;

    BumpData bump = default_bump(1.0);
    t.close("quartic bump mass 256/315", bump.total_g, 256.0 / 315.0, 1e-14);
    t.close("plateau value 128/315", u0(bump, 0.0, 2.0), 128.0 / 315.0, 1e-14);
    t.close("lower-bound constant G", G_from_data(bump), 128.0 / 315.0, 1e-14);

    CharGrid g = build_grid(1.0, 1.0, 0.5);
    t.check("grid levels", g.levels == 3 && g.m == 2);
    t.check("grid cone extent", g.x(g.levels - 1 + g.m) == 2.0);

    t.close("E_0(2,1) = log 4", E_a(2.0, 1.0, 0.0), std::log(4.0));
    t.close("E_{-1}(2,1) = 4", E_a(2.0, 1.0, -1.0), 4.0);
    t.close("E_1 = 1", E_a(2.0, 1.0, 1.0), 1.0);

    {
        CharGrid gq = build_grid(1.0, 1.0, 0.05);
        Field one = Field::zeros(gq);
        for (int n = 0; n < gq.levels; ++n)
            for (int i = -gq.half_width(n); i <= gq.half_width(n); ++i) one.set(i, n, 1.0);
        one.filled_levels = gq.levels;
        t.close("L'_{-1}(1) = t", apply_Lp(-1.0, one, 0.0, 1.0), 1.0);
        t.close("L_{-1}(1) = t^2/2", apply_L(-1.0, one, 0.0, 1.0), 0.5);
    }

    {
        auto X = blowup_time_closed(2.0, -1.0, 1.0, 0.1);
        t.check("closed blow-up abscissa exists", X.has_value());
        if (X) t.close("closed blow-up abscissa = 11", *X, 11.0);
        auto W0 = closed_W(2.0, -1.0, 1.0, 0.5, 1.0, 1.0);
        t.check("W(R) = Geps", W0 && std::abs(*W0 - 0.5) <= 1e-15);
        t.check("a>0 small data is global", !blowup_time_closed(2.0, 2.0, 1.0, 1e-3).has_value());
    }

    {
        LifespanTable tab;
        tab.T_max = 1e9;
        for (double e : {0.5, 0.4, 0.3, 0.2}) {
            LifespanRow r;
            r.epsilon = e;
            r.T_num = 2.0 / e;
            tab.rows.push_back(r);
        }
        FitResult fr = fit_power_law(tab);
        t.close("synthetic power slope -1", fr.slope, -1.0);
        t.check("synthetic power residual ~ 0", fr.residual <= 1e-12);

        LifespanTable te;
        te.T_max = 1e9;
        for (double e : {0.9, 0.7, 0.5}) {
            LifespanRow r;
            r.epsilon = e;
            r.T_num = std::exp(2.0 / e);
            te.rows.push_back(r);
        }
        FitResult fe = fit_exp_law(te, 2.0);
        t.close("synthetic exp slope -1", fe.slope, -1.0);
        t.close("synthetic exp spread ratio 1", fe.eps_logT_max_over_min, 1.0);
    }

    {
        ProblemSpec ps;
        ps.p = 2.0;
        ps.a = 0.0;
        ps.epsilon = 0.0;
        ps.R = 1.0;
        ps.data = bump;
        CharGrid gz = build_grid(1.0, 1.0, 0.1);
        MarchResult mr = march_solve(ps, gz);
        t.check("zero-data march is zero", mr.U.sup() == 0.0 && !mr.blowup_time);
        CompareReport cr = compare_solvers(ps, gz);
        t.check("zero-data solver agreement", cr.sup_ut_diff == 0.0 && cr.sup_u_diff == 0.0);
    }

    {
        ProblemSpec ps;
        ps.p = 2.5;
        ps.a = 0.0;
        ps.epsilon = 1.0;
        ps.R = 1.0;
        ps.data = bump;
        CharGrid gs = build_grid(0.2, 1.0, 0.1);
        Field U = Field::zeros(gs);
        for (int n = 0; n < gs.levels; ++n)
            for (int i = -gs.half_width(n); i <= gs.half_width(n); ++i) U.set(i, n, -3.0);
        U.filled_levels = gs.levels;
        Field src = nonlinear_source(ps, U);
        t.close("|U|^p at U=-3, p=2.5", src.at(0, 0), std::pow(3.0, 2.5), 1e-15);
    }

    {
        bool threw = false;
        try {
            parse_config("{}");
        } catch (const ConfigError& e) {
            threw = std::string(e.what()).find("\"p\"") != std::string::npos;
        }
        t.check("missing config key is named", threw);
        Rng r1(mix_seed(7, 3)), r2(mix_seed(7, 3));
        t.check("seeded stream is reproducible", r1.uniform() == r2.uniform());
    }

    std::printf("selftest: %d/%d checks passed\n", t.run - t.failed, t.run);
    return t.failed == 0 ? 0 : 1;
}

// ------------------------------------------------------------------ solve

void write_field_csv(const std::string& path, const Field& F, int stride) {
    const CharGrid& g = F.grid;
    CsvWriter w(path, {"t", "x", "u_t"});
    for (int n = 0; n < F.filled_levels; n += stride)
        for (int i = -(n + g.m); i <= n + g.m; i += stride)
            w.write_row(std::vector<double>{g.time(n), g.x(i), F.at(i, n)});
}

int cmd_solve(const std::string& config_path, const std::string& out, std::optional<int> stride,
              std::optional<std::string> solver) {
    auto t0 = clock_type::now();
    RunConfig cfg = load_config(config_path);
    if (stride) cfg.stride = *stride;
    if (solver) cfg.solver = *solver;
    if (cfg.stride < 1) throw ConfigError("stride must be >= 1");
    if (auto s = env_seed()) cfg.seed = *s;

    CharGrid g = build_grid(cfg.T, cfg.spec.R, cfg.h);
    Field ut;
    Field w;
    std::optional<double> blowup;
    if (cfg.solver == "march") {
        MarchResult r = march_solve(cfg.spec, g, cfg.threshold);
        ut = std::move(r.U);
        blowup = r.blowup_time;
        w = reconstruct_w(cfg.spec, ut);
    } else if (cfg.solver == "picard") {
        PicardResult r = picard_solve(cfg.spec, g);
        ut = std::move(r.U);
        w = reconstruct_w(cfg.spec, ut);
    } else if (cfg.solver == "fdm") {
        LeapfrogOptions opt;
        opt.blowup_threshold = cfg.threshold;
        LeapfrogResult r = leapfrog_solve(cfg.spec, g, opt);
        ut = std::move(r.ut);
        blowup = r.blowup_time;
        w = std::move(r.u);
    } else {
        throw ConfigError("unknown solver \"" + cfg.solver + "\" (march, picard, fdm)");
    }

    write_field_csv(out, ut, cfg.stride);

    double residual = std::numeric_limits<double>::quiet_NaN();
    if (w.filled_levels >= 3 && !w.blown_up) residual = pde_residual(cfg.spec, w);
    std::string residual_path = strip_csv(out) + ".residual.csv";
    {
        CsvWriter rw(residual_path, {"h", "levels", "residual_sup"});
        rw.write_row(std::vector<double>{g.h, double(ut.filled_levels), residual});
    }

    RunManifest man;
    man.config_snapshot = cfg.raw;
    man.seed = cfg.seed;
    man.add_output(out);
    man.add_output(residual_path);
    man.timing_ms = elapsed_ms(t0);
    man.write(out + ".manifest.json");

    std::printf("solve: solver=%s levels=%d sup=%s residual=%s%s\n", cfg.solver.c_str(),
                ut.filled_levels, format_g17(ut.sup()).c_str(), format_g17(residual).c_str(),
                blowup ? (" blowup_t=" + format_g17(*blowup)).c_str() : "");
    return 0;
}

// ------------------------------------------------------------------ sweep

int cmd_sweep(const std::string& config_path, const std::vector<double>& eps,
              const std::string& out, std::optional<double> h_over,
              std::optional<double> thr_over, std::optional<double> tmax_over, unsigned jobs) {
    auto t0 = clock_type::now();
    RunConfig cfg = load_config(config_path);
    if (auto s = env_seed()) cfg.seed = *s;
    double h = h_over.value_or(cfg.h);
    double threshold = thr_over.value_or(cfg.threshold);
    double T_max = tmax_over.value_or(cfg.T);

    LifespanTable table = sweep(cfg.spec, eps, h, threshold, T_max, jobs);

    CsvWriter w(out, {"epsilon", "T_num", "global_flag", "h", "threshold"});
    int errors = 0;
    for (const LifespanRow& r : table.rows) {
        if (!r.error.empty()) {
            ++errors;
            std::fprintf(stderr, "sweep: eps=%s failed: %s\n", format_g17(r.epsilon).c_str(),
                         r.error.c_str());
        }
        w.write_row(std::vector<double>{r.epsilon,
                                        r.global ? std::numeric_limits<double>::quiet_NaN()
                                                 : r.T_num,
                                        r.global ? 1.0 : 0.0, r.h, r.threshold});
    }

    RunManifest man;
    man.config_snapshot = cfg.raw;
    man.config_snapshot["sweep"] = {{"eps", eps}, {"h", h}, {"threshold", threshold},
                                    {"T_max", T_max}};
    man.seed = cfg.seed;
    man.add_output(out);
    man.timing_ms = elapsed_ms(t0);
    man.write(out + ".manifest.json");

    for (const LifespanRow& r : table.rows)
        std::printf("sweep: eps=%s %s\n", format_g17(r.epsilon).c_str(),
                    !r.error.empty() ? "error"
                    : r.global       ? "global"
                                     : ("T=" + format_g17(r.T_num)).c_str());
    return errors == 0 ? 0 : 1;
}

// -------------------------------------------------------------------- fit

LifespanTable table_from_csv(const std::string& path) {
    CsvTable csv = read_csv(path);
    int ce = csv.column("epsilon"), ct = csv.column("T_num"), cg = csv.column("global_flag");
    int ch = csv.column("h"), cth = csv.column("threshold");
    LifespanTable table;
    for (const auto& row : csv.rows) {
        LifespanRow r;
        r.epsilon = parse_double(row[std::size_t(ce)]);
        r.T_num = parse_double(row[std::size_t(ct)]);
        r.global = parse_double(row[std::size_t(cg)]) != 0.0;
        r.h = parse_double(row[std::size_t(ch)]);
        r.threshold = parse_double(row[std::size_t(cth)]);
        table.rows.push_back(r);
    }
    return table;
}

int cmd_fit(const std::string& in, const std::string& law, double p,
            std::optional<std::string> prefix, bool strict) {
    auto t0 = clock_type::now();
    LifespanTable table = table_from_csv(in);
    FitResult fr = law == "power" ? fit_power_law(table) : fit_exp_law(table, p);

    std::string pfx = prefix.value_or(strip_csv(in) + ".fit");
    bool exp_law = law == "exp";

    std::vector<std::pair<double, double>> pts;
    for (const LifespanRow& r : table.rows) {
        if (r.global || !std::isfinite(r.T_num)) continue;
        double y = std::log(r.T_num);
        if (exp_law) y = std::log(y);
        pts.emplace_back(std::log(r.epsilon), y);
    }

    std::string plot_csv = pfx + ".csv";
    {
        CsvWriter w(plot_csv,
                    {"log_epsilon", exp_law ? "log_log_T_num" : "log_T_num", "fit"});
        for (auto [x, y] : pts)
            w.write_row(std::vector<double>{x, y, fr.intercept + fr.slope * x});
    }

    std::string plot_svg = pfx + ".svg";
    {
        PlotSeries measured{"measured", pts};
        PlotSeries line{"fit", {}};
        for (auto [x, y] : pts) line.points.emplace_back(x, fr.intercept + fr.slope * x);
        std::ofstream svg(plot_svg);
        if (!svg) throw std::runtime_error("cannot open for writing: " + plot_svg);
        svg << render_line_chart("lifespan fit (" + law + ")", "log eps",
                                 exp_law ? "log log T" : "log T", {measured, line});
    }

    RunManifest man;
    man.config_snapshot = {{"in", in}, {"law", law}, {"p", p}};
    man.add_output(plot_csv);
    man.add_output(plot_svg);
    man.timing_ms = elapsed_ms(t0);
    man.write(plot_csv + ".manifest.json");

    std::printf("fit: law=%s slope=%s intercept=%s residual=%s", law.c_str(),
                format_g17(fr.slope).c_str(), format_g17(fr.intercept).c_str(),
                format_g17(fr.residual).c_str());
    if (exp_law)
        std::printf(" eps_logT_max_over_min=%s", format_g17(fr.eps_logT_max_over_min).c_str());
    std::printf("\n");

    if (strict && fr.residual > 0.3) {
        std::fprintf(stderr, "fit: residual %s exceeds the 0.3 bound\n",
                     format_g17(fr.residual).c_str());
        return 1;
    }
    return 0;
}

// --------------------------------------------------------- verify-apriori

int cmd_verify_apriori(double a, double p, double T, double R, double h, int samples,
                       std::uint64_t seed, const std::string& out, unsigned jobs) {
    auto t0 = clock_type::now();
    if (auto s = env_seed()) seed = *s;
    AprioriReport rep = verify_apriori(a, p, T, R, h, samples, seed, jobs);

    CsvWriter w(out, {"a", "T", "samples", "worst_ratio", "x", "t"});
    w.write_row(std::vector<double>{rep.a, rep.T, double(rep.samples), rep.worst_ratio,
                                    rep.worst_x, rep.worst_t});

    RunManifest man;
    man.config_snapshot = {{"a", a}, {"p", p},           {"T", T},       {"R", R},
                           {"h", h}, {"samples", samples}, {"seed", seed}};
    man.seed = seed;
    man.add_output(out);
    man.timing_ms = elapsed_ms(t0);
    man.write(out + ".manifest.json");

    std::printf("verify-apriori: a=%s worst_ratio=%s at (x=%s, t=%s)\n", format_g17(a).c_str(),
                format_g17(rep.worst_ratio).c_str(), format_g17(rep.worst_x).c_str(),
                format_g17(rep.worst_t).c_str());
    return 0;
}

// ------------------------------------------------------------ blowup-time

int cmd_blowup_time(std::optional<double> p, std::optional<double> a, std::optional<double> R,
                    std::optional<double> geps, double c, bool ode_check, double threshold,
                    std::optional<std::string> batch, std::optional<std::string> out) {
    if (batch) {
        auto t0 = clock_type::now();
        if (!out) throw ConfigError("--batch needs --out");
        CsvTable csv = read_csv(*batch);
        int cp = csv.column("p"), ca = csv.column("a"), cR = csv.column("R"),
            cg = csv.column("geps");
        int cc = -1;
        for (std::size_t k = 0; k < csv.header.size(); ++k)
            if (csv.header[k] == "c") cc = int(k);
        CsvWriter w(*out, {"p", "a", "R", "geps", "c", "X", "global_flag"});
        for (const auto& row : csv.rows) {
            double rp = parse_double(row[std::size_t(cp)]);
            double ra = parse_double(row[std::size_t(ca)]);
            double rR = parse_double(row[std::size_t(cR)]);
            double rg = parse_double(row[std::size_t(cg)]);
            double rc = cc >= 0 ? parse_double(row[std::size_t(cc)]) : 1.0;
            auto X = blowup_time_closed(rp, ra, rR, rg, rc);
            w.write_row(std::vector<double>{
                rp, ra, rR, rg, rc, X ? *X : std::numeric_limits<double>::quiet_NaN(),
                X ? 0.0 : 1.0});
        }
        RunManifest man;
        man.config_snapshot = {{"batch", *batch}};
        man.add_output(*out);
        man.timing_ms = elapsed_ms(t0);
        man.write(*out + ".manifest.json");
        return 0;
    }

    if (!p || !a || !R || !geps)
        throw ConfigError("blowup-time needs --p --a --R --geps (or --batch)");
    auto X = blowup_time_closed(*p, *a, *R, *geps, c);
    std::printf("%s\n", X ? format_g17(*X).c_str() : "global");

    if (!ode_check) return 0;
    OdeSolution ode = ode_integrate(*p, *a, *R, *geps, threshold, c);
    if (X && ode.blowup_x) {
        double rel = std::abs(*ode.blowup_x - *X) / std::max(1.0, std::abs(*X));
        std::printf("ode_check: X_num=%s rel_err=%s\n", format_g17(*ode.blowup_x).c_str(),
                    format_g17(rel).c_str());
        if (rel > 0.01) {
            std::fprintf(stderr, "blowup-time: integrator disagrees beyond 1%%\n");
            return 1;
        }
        return 0;
    }
    if (!X && !ode.blowup_x) {
        std::printf("ode_check: global confirmed up to x=%s\n",
                    format_g17(ode.xs.back()).c_str());
        return 0;
    }
    std::fprintf(stderr, "blowup-time: closed form and integrator disagree on finiteness\n");
    return 1;
}

// --------------------------------------------------------- compare-oracle

int cmd_compare_oracle(const std::string& config_path, const std::string& out) {
    auto t0 = clock_type::now();
    RunConfig cfg = load_config(config_path);
    if (auto s = env_seed()) cfg.seed = *s;
    CharGrid g = build_grid(cfg.T, cfg.spec.R, cfg.h);
    CompareReport rep = compare_solvers(cfg.spec, g, cfg.threshold);

    CsvWriter w(out, {"level", "t", "ut_diff", "u_diff"});
    for (int n = 0; n < rep.compared_levels; ++n)
        w.write_row(std::vector<double>{double(n), g.time(n), rep.ut_diff[std::size_t(n)],
                                        rep.u_diff[std::size_t(n)]});

    RunManifest man;
    man.config_snapshot = cfg.raw;
    man.seed = cfg.seed;
    man.add_output(out);
    man.timing_ms = elapsed_ms(t0);
    man.write(out + ".manifest.json");

    std::printf("compare-oracle: levels=%d sup_ut_diff=%s sup_u_diff=%s%s%s%s\n",
                rep.compared_levels, format_g17(rep.sup_ut_diff).c_str(),
                format_g17(rep.sup_u_diff).c_str(),
                rep.march_blowup ? (" march_blowup=" + format_g17(*rep.march_blowup)).c_str()
                                 : "",
                rep.fdm_blowup ? (" fdm_blowup=" + format_g17(*rep.fdm_blowup)).c_str() : "",
                rep.blowup_mismatch ? " MISMATCH" : "");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelife: lifespan laboratory for u_tt - u_xx = |u_t|^p / (1+x^2)^((1+a)/2)"};
    app.require_subcommand(0, 1);

    bool selftest = false;
    app.add_flag("--selftest", selftest, "run the embedded example suite and exit");
    unsigned jobs = default_jobs();
    app.add_option("--jobs", jobs, "worker cap for sweep and verify-apriori")
        ->capture_default_str();

    // solve
    std::string so_config, so_out;
    std::optional<int> so_stride;
    std::optional<std::string> so_solver;
    auto* solve_cmd = app.add_subcommand("solve", "run one solver and dump the u_t field");
    solve_cmd->add_option("--config", so_config, "run config (JSON)")->required();
    solve_cmd->add_option("--out", so_out, "field CSV path")->required();
    solve_cmd->add_option("--stride", so_stride, "sampling stride over levels and nodes");
    solve_cmd->add_option("--solver", so_solver, "march | picard | fdm")
        ->check(CLI::IsMember({"march", "picard", "fdm"}));

    // sweep
    std::string sw_config, sw_out;
    std::vector<double> sw_eps;
    std::optional<double> sw_h, sw_thr, sw_tmax;
    auto* sweep_cmd = app.add_subcommand("sweep", "measure T(eps) over an epsilon list");
    sweep_cmd->add_option("--config", sw_config, "run config (JSON)")->required();
    sweep_cmd->add_option("--eps", sw_eps, "epsilon list")->required()->delimiter(',');
    sweep_cmd->add_option("--out", sw_out, "table CSV path")->required();
    sweep_cmd->add_option("--grid-h", sw_h, "override grid step");
    sweep_cmd->add_option("--threshold", sw_thr, "override blow-up threshold");
    sweep_cmd->add_option("--T-max", sw_tmax, "override horizon");

    // fit
    std::string f_in, f_law;
    double f_p = 2.0;
    std::optional<std::string> f_prefix;
    bool f_strict = false;
    auto* fit_cmd = app.add_subcommand("fit", "regress a lifespan law on a sweep table");
    fit_cmd->add_option("--in", f_in, "sweep table CSV")->required();
    fit_cmd->add_option("--law", f_law, "power | exp")
        ->required()
        ->check(CLI::IsMember({"power", "exp"}));
    fit_cmd->add_option("--p", f_p, "nonlinearity power (exp law)")->capture_default_str();
    fit_cmd->add_option("--out-prefix", f_prefix, "output prefix (default: <in>.fit)");
    fit_cmd->add_flag("--strict", f_strict, "exit 1 when the residual exceeds 0.3");

    // verify-apriori
    double va_a = 0.0, va_p = 2.0, va_T = 4.0, va_R = 1.0, va_h = 0.1;
    int va_samples = 100;
    std::uint64_t va_seed = 0;
    std::string va_out;
    auto* va_cmd = app.add_subcommand("verify-apriori", "empirical operator-bound constant");
    va_cmd->add_option("--a", va_a, "decay parameter")->required();
    va_cmd->add_option("--p", va_p, "nonlinearity power")->capture_default_str();
    va_cmd->add_option("--T", va_T, "horizon")->capture_default_str();
    va_cmd->add_option("--R", va_R, "data radius")->capture_default_str();
    va_cmd->add_option("--grid-h", va_h, "grid step")->capture_default_str();
    va_cmd->add_option("--samples", va_samples, "random fields")->capture_default_str();
    va_cmd->add_option("--seed", va_seed, "rng seed (WAVELIFE_SEED overrides)")
        ->capture_default_str();
    va_cmd->add_option("--out", va_out, "report CSV path")->required();

    // blowup-time
    std::optional<double> bt_p, bt_a, bt_R, bt_geps;
    double bt_c = 1.0, bt_threshold = 1e12;
    bool bt_ode = false;
    std::optional<std::string> bt_batch, bt_out;
    auto* bt_cmd = app.add_subcommand("blowup-time", "comparison-ODE blow-up abscissa");
    bt_cmd->add_option("--p", bt_p, "nonlinearity power");
    bt_cmd->add_option("--a", bt_a, "decay parameter");
    bt_cmd->add_option("--R", bt_R, "data radius");
    bt_cmd->add_option("--geps", bt_geps, "initial value G*eps");
    bt_cmd->add_option("--c", bt_c, "ODE constant")->capture_default_str();
    bt_cmd->add_flag("--ode-check", bt_ode, "confirm with the adaptive integrator");
    bt_cmd->add_option("--threshold", bt_threshold, "integrator blow-up threshold")
        ->capture_default_str();
    bt_cmd->add_option("--batch", bt_batch, "CSV of (p, a, R, geps[, c]) rows");
    bt_cmd->add_option("--out", bt_out, "batch output CSV path");

    // compare-oracle
    std::string co_config, co_out;
    auto* co_cmd = app.add_subcommand("compare-oracle", "march vs leapfrog per-level diffs");
    co_cmd->add_option("--config", co_config, "run config (JSON)")->required();
    co_cmd->add_option("--out", co_out, "diff CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (selftest) return run_selftest();
        if (solve_cmd->parsed()) return cmd_solve(so_config, so_out, so_stride, so_solver);
        if (sweep_cmd->parsed())
            return cmd_sweep(sw_config, sw_eps, sw_out, sw_h, sw_thr, sw_tmax, jobs);
        if (fit_cmd->parsed()) return cmd_fit(f_in, f_law, f_p, f_prefix, f_strict);
        if (va_cmd->parsed())
            return cmd_verify_apriori(va_a, va_p, va_T, va_R, va_h, va_samples, va_seed, va_out,
                                      jobs);
        if (bt_cmd->parsed())
            return cmd_blowup_time(bt_p, bt_a, bt_R, bt_geps, bt_c, bt_ode, bt_threshold,
                                   bt_batch, bt_out);
        if (co_cmd->parsed()) return cmd_compare_oracle(co_config, co_out);
        std::fprintf(stderr, "%s", app.help().c_str());
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
