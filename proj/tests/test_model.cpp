#include <wavelife/model.hpp>
#include <wavelife/quadrature.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace wavelife;

TEST_CASE("quartic bump mass matches an independent quadrature", "[model]") {
    BumpData d = default_bump(1.0);
    double oracle = adaptive_simpson([&](double x) { return d.g(x); }, -1.0, 1.0, 1e-13);
    CHECK(d.total_g == Catch::Approx(oracle).epsilon(1e-11));
    CHECK(d.total_g == Catch::Approx(256.0 / 315.0).epsilon(1e-14));

    // scaling: stretching the support scales the mass linearly
    BumpData d3 = default_bump(3.0);
    CHECK(d3.total_g == Catch::Approx(3.0 * 256.0 / 315.0).epsilon(1e-14));
}

TEST_CASE("polynomial calculus is exact", "[model]") {
    PolyProfile q{2.0, {1.0, 0.0, -4.0, 0.0, 6.0, 0.0, -4.0, 0.0, 1.0}};
    PolyProfile dq = q.differentiate();
    PolyProfile Aq = q.antidifferentiate();

    // derivative against a centered difference at interior points
    for (double x : {-1.5, -0.3, 0.0, 0.7, 1.9}) {
        double delta = 1e-6;
        double fd = (q.value(x + delta) - q.value(x - delta)) / (2.0 * delta);
        CHECK(dq.value(x) == Catch::Approx(fd).margin(1e-7));
    }
    // antiderivative vanishes at the left edge and recovers the mass at the right
    CHECK(Aq.value(-2.0) == Catch::Approx(0.0).margin(1e-15));
    CHECK(Aq.value(2.0) == Catch::Approx(q.total()).epsilon(1e-14));
}

TEST_CASE("profiles vanish identically outside the support", "[model]") {
    BumpData d = default_bump(1.0);
    for (double x : {1.0, -1.0, 1.0 + 1e-12, -3.0, 7.5}) {
        CAPTURE(x);
        CHECK(d.g(x) == 0.0);
        CHECK(d.g_x(x) == 0.0);
        CHECK(d.f(x) == 0.0);
    }
    // the antiderivative saturates at the total mass to the right
    CHECK(d.g_antideriv(5.0) == Catch::Approx(d.total_g).epsilon(1e-14));
    CHECK(d.g_antideriv(-5.0) == 0.0);
}

TEST_CASE("admissibility check requires smooth edges", "[model]") {
    CHECK(check_profile_smoothness(default_bump(1.0)));

    // (1 - u^2)^2 has nonzero second derivative at the edge: g' ok, f needs C2
    PolyProfile f{1.0, {1.0, 0.0, -2.0, 0.0, 1.0}};
    PolyProfile g{1.0, {1.0, 0.0, -4.0, 0.0, 6.0, 0.0, -4.0, 0.0, 1.0}};
    BumpData d = bump_from_polynomials(f, g);
    CHECK_FALSE(check_profile_smoothness(d));
}

TEST_CASE("grid covers the widened cone with one ghost column", "[model]") {
    CharGrid g = build_grid(1.0, 1.0, 0.5);
    CHECK(g.levels == 3);
    CHECK(g.m == 2);
    CHECK(g.h == 0.5);
    CHECK_FALSE(g.snapped);
    // top level: physical cone reaches |x| = T + R = 2, storage one node wider
    CHECK(g.x(g.levels - 1 + g.m) == 2.0);
    CHECK(g.in_support_cone(4, 2));
    CHECK_FALSE(g.in_support_cone(5, 2));
    CHECK(g.in_grid(5, 2));
    CHECK_FALSE(g.in_grid(6, 2));

    CharGrid g0 = build_grid(0.0, 1.0, 0.25);
    CHECK(g0.levels == 1);

    // h that does not divide R snaps to R/m
    CharGrid gs = build_grid(1.0, 1.0, 0.3);
    CHECK(gs.snapped);
    CHECK(gs.m == 3);
    CHECK(gs.h == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(gs.R() == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("node count is exact and the stored-node budget rejects huge grids", "[model]") {
    CharGrid g = build_grid(10.0, 1.0, 0.01);
    // closed form: levels*(2m+3) + levels*(levels-1)
    CHECK(g.levels == 1001);
    CHECK(g.m == 100);
    CHECK(g.node_count() == 1001LL * 203LL + 1001LL * 1000LL);

    std::int64_t counted = 0;
    CharGrid gsmall = build_grid(1.0, 1.0, 0.25);
    for (int n = 0; n < gsmall.levels; ++n) counted += gsmall.width(n);
    CHECK(counted == gsmall.node_count());

    CHECK_THROWS_AS(build_grid(4000.0, 1.0, 0.04), std::invalid_argument);
    // the same geometry is fine for a streaming caller
    CHECK_NOTHROW(build_grid(4000.0, 1.0, 0.04, std::numeric_limits<std::int64_t>::max()));
    // the level-count guard binds regardless of the node budget
    CHECK_THROWS_AS(build_grid(1e5, 1.0, 1e-4, std::numeric_limits<std::int64_t>::max()),
                    std::invalid_argument);
}

TEST_CASE("data norms of the default bump", "[model]") {
    BumpData d = default_bump(1.0);
    DataNorms nm = data_norms(d, 0.01);
    // f = 0, so M = sup|g| + sup|g'| and N = sup|g| = 1
    CHECK(nm.N == Catch::Approx(1.0).epsilon(1e-10));
    double g1max = 1728.0 / (343.0 * std::sqrt(7.0)); // max of |g'| on [-1,1]
    // dense sampling misses the maximizer by <= step/2 = h/8; the curvature
    // of |g'| there is ~4, so the shortfall is ~4e-6 at h = 0.01
    CHECK(nm.M == Catch::Approx(1.0 + g1max).margin(1e-5));
}

TEST_CASE("field reads zero outside the stored cone and tracks blow-up", "[model]") {
    CharGrid g = build_grid(1.0, 1.0, 0.5);
    Field F = Field::zeros(g);
    F.set(0, 0, 3.0);
    F.filled_levels = 1;
    CHECK(F.at(0, 0) == 3.0);
    CHECK(F.at(50, 0) == 0.0);
    CHECK(F.at(-50, 0) == 0.0);
    CHECK(F.sup() == 3.0);

    CHECK_FALSE(F.blown_up);
    F.mark_blowup(0.5);
    CHECK(F.blown_up);
    CHECK(F.first_failure_time.value() == 0.5);
}

TEST_CASE("support check detects a polluted ghost column", "[model]") {
    CharGrid g = build_grid(1.0, 1.0, 0.25);
    Field F = Field::zeros(g);
    for (int n = 0; n < g.levels; ++n) {
        for (int i = -(n + g.m); i <= n + g.m; ++i) F.set(i, n, 1.0);
        F.set(-g.half_width(n), n, 0.0);
        F.set(g.half_width(n), n, 0.0);
    }
    F.filled_levels = g.levels;
    CHECK(check_support(F));

    F.set(g.half_width(2), 2, 1e-300); // any nonzero leak fails, no tolerance
    CHECK_FALSE(check_support(F));
}

TEST_CASE("node lookup rejects off-grid queries", "[model]") {
    CharGrid g = build_grid(1.0, 1.0, 0.25);
    NodeIndex id = locate_node(g, 0.5, 0.75);
    CHECK(id.i == 2);
    CHECK(id.n == 3);
    CHECK_THROWS_AS(locate_node(g, 0.13, 0.75), std::invalid_argument);
    CHECK_THROWS_AS(locate_node(g, 0.0, 9.0), std::invalid_argument);
    CHECK_THROWS_AS(locate_node(g, 8.0, 0.25), std::invalid_argument);
}

TEST_CASE("problem validation", "[model]") {
    ProblemSpec ps;
    ps.p = 2.0;
    ps.a = 0.0;
    ps.epsilon = 0.1;
    ps.R = 1.0;
    ps.data = default_bump(1.0);
    CHECK_NOTHROW(ps.validate());

    ProblemSpec bad = ps;
    bad.p = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ps;
    bad.epsilon = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ps;
    bad.R = 2.0; // data support no longer matches
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
