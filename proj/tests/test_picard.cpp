#include <wavelife/dalembert.hpp>
#include <wavelife/duhamel.hpp>
#include <wavelife/picard.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace wavelife;

namespace {

ProblemSpec make_spec(double p, double a, double eps) {
    ProblemSpec ps;
    ps.p = p;
    ps.a = a;
    ps.epsilon = eps;
    ps.R = 1.0;
    ps.data = default_bump(1.0);
    return ps;
}

} // namespace

TEST_CASE("zero amplitude fixes the zero solution immediately", "[picard]") {
    ProblemSpec ps = make_spec(2.0, 0.0, 0.0);
    CharGrid g = build_grid(1.0, 1.0, 0.1);
    PicardResult r = picard_solve(ps, g);
    CHECK(r.diag.converged);
    CHECK(r.diag.iterations == 1);
    CHECK(r.U.sup() == 0.0);
    CHECK(check_support(r.U));
}

TEST_CASE("one iterate matches a hand-rolled composition", "[picard]") {
    ProblemSpec ps = make_spec(2.0, -0.5, 0.2);
    CharGrid g = build_grid(1.0, 1.0, 0.125);
    Field U0 = sample_u0_t(ps, g);
    Field U1 = picard_iterate(ps, U0);

    // independent route: raw |U0|^p nodewise, then the pointwise operator
    for (double x : {0.0, 0.25, -0.5, 1.125}) {
        for (double t : {0.25, 0.625, 1.0}) {
            CAPTURE(x, t);
            Field src = Field::zeros(g);
            for (int n = 0; n < g.levels; ++n) {
                int hw = g.half_width(n);
                auto& row = src.alloc_level(n);
                for (int i = -hw; i <= hw; ++i) {
                    double v = U0.at(i, n);
                    row[std::size_t(i + hw)] = std::abs(v) * std::abs(v);
                }
                src.filled_levels = n + 1;
            }
            double direct = ps.epsilon * u0_t(ps.data, x, t) + apply_Lp(ps.a, src, x, t);
            CHECK(U1.at(locate_node(g, x, t).i, locate_node(g, x, t).n) ==
                  Catch::Approx(direct).margin(1e-12));
        }
    }
}

TEST_CASE("small data contracts geometrically within budget", "[picard]") {
    ProblemSpec ps = make_spec(2.0, 0.0, 0.01);
    CharGrid g = build_grid(2.0, 1.0, 0.02);
    PicardResult r = picard_solve(ps, g);
    REQUIRE(r.diag.converged);
    REQUIRE(r.diag.ratios.size() >= 1);
    for (double q : r.diag.ratios) CHECK(q <= 0.5);
    // the contraction budget kappa = ||U||^{p-1} E_a(T) is small here
    CHECK(r.diag.contraction_budget < 0.5);
    // and the solution obeys the a-priori amplitude bound
    DataNorms nm = data_norms(ps.data, g.h);
    CHECK(r.U.sup() <= 2.0 * nm.M * ps.epsilon * 1.01);
    CHECK(check_support(r.U));
}

TEST_CASE("past the lifespan the iteration reports divergence", "[picard]") {
    ProblemSpec ps = make_spec(2.0, -1.0, 5.0);
    CharGrid g = build_grid(4.0, 1.0, 0.05);
    try {
        picard_solve(ps, g);
        FAIL("expected NotConverged");
    } catch (const NotConverged& e) {
        CHECK(std::string(e.what()).find("lifespan") != std::string::npos);
        CHECK_FALSE(e.diagnostics.converged);
        CHECK(e.diagnostics.diffs.size() >= 2);
    }
}

TEST_CASE("marching and iterating land on the same fixed point", "[picard]") {
    ProblemSpec ps = make_spec(2.0, 0.0, 0.05);
    CharGrid g = build_grid(1.0, 1.0, 0.05);
    MarchResult m = march_solve(ps, g);
    PicardResult p = picard_solve(ps, g);
    REQUIRE_FALSE(m.blowup_time.has_value());
    REQUIRE(p.diag.converged);
    double worst = 0.0;
    for (int n = 0; n < g.levels; ++n)
        for (int i = -(n + g.m); i <= n + g.m; ++i)
            worst = std::max(worst, std::abs(m.U.at(i, n) - p.U.at(i, n)));
    CHECK(worst <= 1e-8);
}

TEST_CASE("march detects blow-up and stops at the crossing level", "[picard]") {
    ProblemSpec ps = make_spec(2.0, -1.0, 0.5);
    CharGrid g = build_grid(10.0, 1.0, 0.05);
    MarchResult r = march_solve(ps, g, 1e6);
    REQUIRE(r.blowup_time.has_value());
    // detected around 6.7 on the fine grid; the coarse march stays close
    CHECK(*r.blowup_time > 5.5);
    CHECK(*r.blowup_time < 8.0);
    CHECK(r.U.blown_up);
    CHECK(r.U.first_failure_time.value() == *r.blowup_time);
    CHECK(r.U.filled_levels < g.levels);
    CHECK(r.stats.support_ok);
    CHECK(int(r.stats.level_sups.size()) == r.U.filled_levels);
}

TEST_CASE("primitive reconstruction integrates exactly on constants", "[picard]") {
    ProblemSpec ps = make_spec(2.0, 0.0, 0.0); // eps = 0 wipes the f term
    CharGrid g = build_grid(1.0, 1.0, 0.25);
    Field U = Field::zeros(g);
    for (int n = 0; n < g.levels; ++n) {
        int hw = g.half_width(n);
        auto& row = U.alloc_level(n);
        for (int i = -hw; i <= hw; ++i) row[std::size_t(i + hw)] = 3.0;
        U.filled_levels = n + 1;
    }
    Field w = reconstruct_w(ps, U);
    for (int n = 0; n < g.levels; ++n) {
        CAPTURE(n);
        CHECK(w.at(0, n) == Catch::Approx(3.0 * g.time(n)).margin(1e-14));
    }
}

TEST_CASE("reconstructed field tracks the free solution at tiny amplitude", "[picard]") {
    ProblemSpec ps = make_spec(2.0, 0.0, 1e-6);
    CharGrid g = build_grid(1.0, 1.0, 0.02);
    MarchResult m = march_solve(ps, g);
    Field w = reconstruct_w(ps, m.U);
    double worst = 0.0;
    for (int n = 0; n < g.levels; n += 5)
        for (int i = -(n + g.m); i <= n + g.m; i += 5)
            worst = std::max(worst,
                             std::abs(w.at(i, n) - ps.epsilon * u0(ps.data, g.x(i), g.time(n))));
    CHECK(worst <= 1e-8);
}

TEST_CASE("interior defect vanishes with the grid at second order", "[picard]") {
    ProblemSpec ps = make_spec(2.0, 0.0, 0.05);
    double res_coarse = 0.0, res_fine = 0.0;
    {
        CharGrid g = build_grid(1.0, 1.0, 0.04);
        res_coarse = pde_residual(ps, reconstruct_w(ps, march_solve(ps, g).U));
    }
    {
        CharGrid g = build_grid(1.0, 1.0, 0.02);
        res_fine = pde_residual(ps, reconstruct_w(ps, march_solve(ps, g).U));
    }
    REQUIRE(res_fine > 0.0);
    CHECK(res_coarse / res_fine >= 1.8);

    // the zero solution has a zero defect
    ProblemSpec z = make_spec(2.0, 0.0, 0.0);
    CharGrid g = build_grid(1.0, 1.0, 0.1);
    CHECK(pde_residual(z, reconstruct_w(z, march_solve(z, g).U)) == 0.0);

    CharGrid tiny = build_grid(0.1, 1.0, 0.1);
    CHECK_THROWS_AS(pde_residual(ps, reconstruct_w(ps, march_solve(ps, tiny).U)),
                    std::invalid_argument);
}
