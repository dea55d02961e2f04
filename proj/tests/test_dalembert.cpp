#include <wavelife/dalembert.hpp>
#include <wavelife/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace wavelife;

namespace {

// five-point central difference stencils, h^4 accurate
template <class F>
double d1(F f, double s, double delta) {
    return (-f(s + 2 * delta) + 8 * f(s + delta) - 8 * f(s - delta) + f(s - 2 * delta)) /
           (12.0 * delta);
}

} // namespace

TEST_CASE("free solution plateaus at half the mass inside the cone", "[dalembert]") {
    BumpData d = default_bump(1.0);
    CHECK(u0(d, 0.0, 2.0) == Catch::Approx(128.0 / 315.0).epsilon(1e-14));
    CHECK(u0(d, 0.0, 2.0) == Catch::Approx(0.5 * d.total_g).epsilon(1e-14));
    // the plateau extends over |x| < t - R and persists for all later times
    CHECK(u0(d, 0.7, 2.0) == Catch::Approx(0.5 * d.total_g).epsilon(1e-14));
    CHECK(u0(d, -3.0, 50.0) == Catch::Approx(0.5 * d.total_g).epsilon(1e-14));
}

TEST_CASE("derivative-form Huygens principle: u0_t vanishes inside the cone", "[dalembert]") {
    BumpData d = default_bump(1.0);
    for (double x : {0.0, 1.0, -1.5, 1.9, -1.99}) {
        CAPTURE(x);
        CHECK(u0_t(d, x, 3.0) == 0.0); // |x| < t - R, exactly zero
        CHECK(u0_x(d, x, 3.0) == 0.0);
    }
    // and outside the forward cone |x| > t + R
    CHECK(u0_t(d, 4.1, 3.0) == 0.0);
    CHECK(u0(d, -4.1, 3.0) == 0.0);
}

TEST_CASE("worked point value from the averaging formula", "[dalembert]") {
    BumpData d = default_bump(1.0);
    double want = 0.5 * (d.g(0.75) + d.g(0.25)); // f = 0 drops the f' terms
    CHECK(u0_t(d, 0.5, 0.25) == Catch::Approx(want).epsilon(1e-15));
}

TEST_CASE("closed-form derivatives match high-order finite differences", "[dalembert]") {
    BumpData d = default_bump(1.0);
    Rng rng(mix_seed(2024, 1));
    // the bump's fourth derivative jumps at the support edge, so a stencil
    // straddling it is only O(delta^3 |g''''|) accurate; delta keeps that
    // well under the margin
    const double delta = 1e-4;
    for (int k = 0; k < 100; ++k) {
        double x = -2.5 + 5.0 * rng.uniform();
        double t = 2.5 * rng.uniform();
        CAPTURE(x, t);
        double dt = d1([&](double s) { return u0(d, x, s); }, t, delta);
        double dx = d1([&](double s) { return u0(d, s, t); }, x, delta);
        double dtx = d1([&](double s) { return u0_t(d, s, t); }, x, delta);
        double dtt = d1([&](double s) { return u0_t(d, x, s); }, t, delta);
        CHECK(u0_t(d, x, t) == Catch::Approx(dt).margin(1e-8));
        CHECK(u0_x(d, x, t) == Catch::Approx(dx).margin(1e-8));
        CHECK(u0_tx(d, x, t) == Catch::Approx(dtx).margin(1e-8));
        CHECK(u0_tt(d, x, t) == Catch::Approx(dtt).margin(1e-8));
    }
}

TEST_CASE("the free field solves the wave equation identically", "[dalembert]") {
    BumpData d = default_bump(1.0);
    Rng rng(mix_seed(2024, 2));
    for (int k = 0; k < 100; ++k) {
        double x = -4.0 + 8.0 * rng.uniform();
        double t = 3.0 * rng.uniform();
        CAPTURE(x, t);
        CHECK(u0_tt(d, x, t) == u0_xx(d, x, t));
    }
}

TEST_CASE("sampled initial iterate respects the support invariant", "[dalembert]") {
    ProblemSpec ps;
    ps.p = 2.0;
    ps.a = 0.0;
    ps.epsilon = 0.25;
    ps.R = 1.0;
    ps.data = default_bump(1.0);
    CharGrid g = build_grid(2.0, 1.0, 0.125);
    Field F = sample_u0_t(ps, g);
    REQUIRE(F.filled_levels == g.levels);
    CHECK(check_support(F));
    // interior sample agrees with the pointwise formula, scaled by epsilon
    CHECK(F.at(3, 4) == Catch::Approx(0.25 * u0_t(ps.data, g.x(3), g.time(4))).epsilon(1e-15));
}
