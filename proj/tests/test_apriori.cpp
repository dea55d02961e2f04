#include <wavelife/apriori.hpp>
#include <wavelife/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace wavelife;

TEST_CASE("horizon envelope has three regimes", "[apriori]") {
    CHECK(E_a(2.0, 1.0, 0.0) == Catch::Approx(1.3862943611198906).epsilon(1e-15)); // log 4
    CHECK(E_a(2.0, 1.0, -1.0) == 4.0);
    CHECK(E_a(2.0, 1.0, -0.5) == Catch::Approx(2.0).epsilon(1e-15)); // 4^{1/2}
    CHECK(E_a(2.0, 1.0, 1.0) == 1.0);
    CHECK(E_a(100.0, 1.0, 0.25) == 1.0);
    // the a -> 0 limit is continuous through the log branch
    CHECK(E_a(2.0, 1.0, -1e-13) == Catch::Approx(std::log(4.0)).epsilon(1e-10));

    // growth in T only for a <= 0
    CHECK(E_a(8.0, 1.0, -1.0) > E_a(4.0, 1.0, -1.0));
    CHECK(E_a(8.0, 1.0, 0.0) > E_a(4.0, 1.0, 0.0));
    CHECK(E_a(8.0, 1.0, 1.0) == E_a(4.0, 1.0, 1.0));
}

TEST_CASE("characteristic kernel closed form at a = 0", "[apriori]") {
    // I_+(1, 3, a=0, R=1) = log(7/4); dual-route checking is built into the
    // evaluation, so agreement with quadrature is implicit in not throwing
    double frozen = 0.5596157879354227;
    CHECK(std::log(1.75) == Catch::Approx(frozen).epsilon(1e-15));
    CHECK(I_plus(1.0, 3.0, 0.0, 1.0) == Catch::Approx(frozen).epsilon(1e-12));

    CHECK(I_plus(0.3, 0.0, 0.0, 1.0) == 0.0);
    CHECK(I_minus(-0.7, 0.0, -1.0, 2.0) == 0.0);
    CHECK_THROWS_AS(I_plus(0.0, -0.1, 0.0, 1.0), std::invalid_argument);

    // continuity of the a -> 0 branch switch
    CHECK(I_plus(1.0, 3.0, 1e-13, 1.0) == Catch::Approx(frozen).epsilon(1e-9));
    CHECK(I_plus(1.0, 3.0, -1e-13, 1.0) == Catch::Approx(frozen).epsilon(1e-9));
}

TEST_CASE("kernel symmetry under x-reflection", "[apriori]") {
    Rng rng(mix_seed(404, 0));
    for (int k = 0; k < 1000; ++k) {
        double x = -5.0 + 10.0 * rng.uniform();
        double t = 6.0 * rng.uniform();
        double a = -1.5 + 3.0 * rng.uniform();
        double R = 1.0 + rng.uniform();
        CAPTURE(x, t, a, R);
        double ip = I_plus(-x, t, a, R);
        double im = I_minus(x, t, a, R);
        REQUIRE(ip >= 0.0);
        REQUIRE(std::abs(ip - im) <= 1e-12 * std::max(1.0, std::abs(im)));
    }
}

TEST_CASE("kernels accumulate along characteristics and decay in a", "[apriori]") {
    for (double x : {-2.0, 0.0, 1.5}) {
        CAPTURE(x);
        // following the left-moving characteristic (t + x fixed) only ever
        // extends the integration ranges of a nonnegative integrand
        CHECK(I_plus(x - 1.0, 3.0, -0.5, 1.0) >= I_plus(x, 2.0, -0.5, 1.0));
        CHECK(I_minus(x + 1.0, 3.0, 0.5, 1.0) >= I_minus(x, 2.0, 0.5, 1.0));
        // the integrand base is >= 1, so a larger a shrinks it pointwise
        CHECK(I_plus(x, 3.0, 0.0, 1.0) >= I_plus(x, 3.0, 0.5, 1.0));
        CHECK(I_plus(x, 3.0, -1.0, 1.0) >= I_plus(x, 3.0, 0.0, 1.0));
    }
}

TEST_CASE("operator-bound measurement is deterministic and order-stable", "[apriori]") {
    AprioriReport r1 = verify_apriori(0.0, 2.0, 2.0, 1.0, 0.1, 16, 99, 1);
    AprioriReport r2 = verify_apriori(0.0, 2.0, 2.0, 1.0, 0.1, 16, 99, 1);
    AprioriReport r3 = verify_apriori(0.0, 2.0, 2.0, 1.0, 0.1, 16, 99, 3);
    CHECK(r1.worst_ratio == r2.worst_ratio);
    CHECK(r1.worst_x == r2.worst_x);
    CHECK(r1.worst_ratio == r3.worst_ratio); // jobs must not change the result

    AprioriReport other = verify_apriori(0.0, 2.0, 2.0, 1.0, 0.1, 16, 100, 1);
    CHECK(other.worst_ratio != r1.worst_ratio);
}

TEST_CASE("empirical constant is stable as the horizon doubles", "[apriori]") {
    // the ratio sup|L'(|U|^p)| / E_a is the measured constant; doubling T
    // must not double it
    for (double a : {-1.0, 0.0, 1.0}) {
        CAPTURE(a);
        AprioriReport r4 = verify_apriori(a, 2.0, 4.0, 1.0, 0.1, 24, 7, 1);
        AprioriReport r8 = verify_apriori(a, 2.0, 8.0, 1.0, 0.1, 24, 7, 1);
        REQUIRE(r4.worst_ratio > 0.0);
        CHECK(r8.worst_ratio / r4.worst_ratio <= 2.0);
    }
}

TEST_CASE("the worst point lies inside the reported cone", "[apriori]") {
    AprioriReport r = verify_apriori(-0.5, 2.0, 3.0, 1.0, 0.1, 8, 5, 1);
    CHECK(r.samples == 8);
    CHECK(r.worst_t >= 0.0);
    CHECK(r.worst_t <= 3.0 + 1e-12);
    CHECK(std::abs(r.worst_x) <= r.worst_t + 1.0 + 1e-12);
}
