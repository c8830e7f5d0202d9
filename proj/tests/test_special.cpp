#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "logitkit/errors.hpp"
#include "logitkit/special.hpp"

using namespace logitkit;

TEST_CASE("normal_cdf matches high-precision reference values") {
    // mpmath, 40 digits
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429486).epsilon(1e-14));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.1586552539314570514).epsilon(1e-14));
    CHECK(normal_cdf(1.54) == doctest::Approx(0.9382198232881881045).epsilon(1e-14));
    CHECK(normal_cdf(1.959964) == doctest::Approx(0.9750000009035575957).epsilon(1e-14));
    CHECK(normal_cdf(-8.0) == doctest::Approx(6.220960574271784861e-16).epsilon(1e-10));
    CHECK(normal_cdf(37.0) == 1.0);
    CHECK(normal_cdf(-40.0) == 0.0);
}

TEST_CASE("normal_cdf is symmetric and monotone") {
    for (double z = -6.0; z <= 6.0; z += 0.37)
        CHECK(normal_cdf(z) + normal_cdf(-z) == doctest::Approx(1.0).epsilon(1e-14));
    double prev = 0.0;
    for (double z = -10.0; z <= 10.0; z += 0.1) {
        const double p = normal_cdf(z);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("normal_quantile inverts normal_cdf") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
    for (double p : {1e-10, 1e-4, 0.025, 0.1, 0.5, 0.9, 0.975, 1.0 - 1e-4, 1.0 - 1e-10})
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    for (double z = -5.0; z <= 5.0; z += 0.61)
        CHECK(normal_quantile(normal_cdf(z)) == doctest::Approx(z).epsilon(1e-10));
    CHECK_THROWS_AS(normal_quantile(0.0), ValidationError);
    CHECK_THROWS_AS(normal_quantile(1.0), ValidationError);
    CHECK_THROWS_AS(normal_quantile(-0.5), ValidationError);
}

TEST_CASE("regularized gamma P and Q are complements on both branches") {
    // both the series branch (x < a+1) and the continued fraction branch
    for (double a : {0.5, 1.0, 2.5, 7.0, 40.0}) {
        for (double x : {0.1, 0.9, 1.0, 3.0, 10.0, 80.0}) {
            const double p = regularized_gamma_p(a, x);
            const double q = regularized_gamma_q(a, x);
            CHECK(p + q == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
    CHECK(regularized_gamma_p(1.0, 0.0) == 0.0);
    // P(1, x) = 1 - e^-x
    for (double x : {0.25, 1.0, 4.0})
        CHECK(regularized_gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-14));
    CHECK_THROWS_AS(regularized_gamma_p(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(regularized_gamma_p(1.0, -1.0), ValidationError);
}

TEST_CASE("chi-square CDF matches reference values") {
    CHECK(chi_square_cdf(3.841, 1) == doctest::Approx(0.9499863162360433).epsilon(1e-12));
    CHECK(chi_square_cdf(5.5, 3) == doctest::Approx(0.8613613826175849).epsilon(1e-12));
    CHECK(chi_square_sf(3.841, 1) == doctest::Approx(1.0 - 0.9499863162360433).epsilon(1e-10));
    CHECK(chi_square_cdf(0.0, 4) == 0.0);
}

TEST_CASE("chi-square with two degrees of freedom has a closed form") {
    for (double x = 0.05; x < 25.0; x += 0.4142) {
        const double exact = 1.0 - std::exp(-x / 2.0);
        CHECK(std::fabs(chi_square_cdf(x, 2) - exact) <= 1e-10);
        CHECK(std::fabs(chi_square_sf(x, 2) - std::exp(-x / 2.0)) <= 1e-10);
    }
}

TEST_CASE("chi-square rejects bad domains") {
    CHECK_THROWS_AS(chi_square_cdf(1.0, 0), ValidationError);
    CHECK_THROWS_AS(chi_square_cdf(1.0, -3), ValidationError);
    CHECK_THROWS_AS(chi_square_cdf(-0.5, 2), ValidationError);
}

TEST_CASE("chi_square_cdf is monotone in x and in df") {
    for (int df : {1, 2, 3, 5, 9, 20}) {
        double prev = 0.0;
        for (double x = 0.0; x <= 40.0; x += 0.5) {
            const double p = chi_square_cdf(x, df);
            CHECK(p >= prev);
            prev = p;
        }
    }
    // more degrees of freedom push mass to the right, so the CDF falls
    for (double x : {0.5, 2.0, 5.5, 11.0, 24.0}) {
        double prev = 1.0;
        for (int df = 1; df <= 30; ++df) {
            const double p = chi_square_cdf(x, df);
            CHECK(p <= prev + 1e-15);
            prev = p;
        }
    }
}
