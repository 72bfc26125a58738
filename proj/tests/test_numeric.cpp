#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "twosample/numeric.hpp"

using namespace twosample;

// reference values computed with 30-digit arithmetic (mpmath)

TEST_CASE("regularized incomplete gamma") {
    CHECK(reg_gamma_p(3.0, 2.5) == doctest::Approx(0.45618688411667048).epsilon(1e-12));
    CHECK(reg_gamma_q(0.5, 1.2) == doctest::Approx(0.12133525035848215).epsilon(1e-12));
    CHECK(reg_gamma_p(10.0, 9.0) == doctest::Approx(0.41259175566805859).epsilon(1e-12));
    CHECK(reg_gamma_q(2.5, 0.3) == doctest::Approx(0.98800324279409373).epsilon(1e-12));
    CHECK(reg_gamma_p(1.0, 0.0) == 0.0);
    CHECK(reg_gamma_p(2.0, 1.0) + reg_gamma_q(2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("regularized incomplete beta") {
    CHECK(reg_beta(2.0, 3.0, 0.4) == doctest::Approx(0.5248).epsilon(1e-12));
    CHECK(reg_beta(0.5, 0.5, 0.25) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(reg_beta(5.0, 2.0, 0.8) == doctest::Approx(0.65536).epsilon(1e-12));
    CHECK(reg_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(reg_beta(2.0, 3.0, 1.0) == 1.0);
}

TEST_CASE("normal distribution and quantile") {
    CHECK(norm_cdf(1.96) == doctest::Approx(0.97500210485177957).epsilon(1e-12));
    CHECK(norm_cdf(-0.5) == doctest::Approx(0.3085375387259869).epsilon(1e-12));
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(norm_quantile(0.975) == doctest::Approx(1.9599639845400542).epsilon(1e-10));
    CHECK(norm_quantile(0.005) == doctest::Approx(-2.5758293035489008).epsilon(1e-10));
    CHECK(norm_quantile(1e-10) == doctest::Approx(-6.3613409024040562).epsilon(1e-9));
    for (double p : {0.01, 0.2, 0.5, 0.77, 0.999})
        CHECK(norm_cdf(norm_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("student t distribution") {
    CHECK(t_cdf(1.0, 5.0) == doctest::Approx(0.81839126617543869).epsilon(1e-12));
    CHECK(t_cdf(-2.0, 5.0) == doctest::Approx(0.050969739414929178).epsilon(1e-12));
    CHECK(t_cdf(0.5, 3.0) == doctest::Approx(0.6742760175759245).epsilon(1e-12));
    CHECK(t_cdf(0.0, 7.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("binomial upper tail") {
    CHECK(binom_upper_tail(10, 0.3, 4) == doctest::Approx(0.3503892816).epsilon(1e-12));
    CHECK(binom_upper_tail(20, 0.05, 0) == 1.0);
    CHECK(binom_upper_tail(20, 0.05, 3) == doctest::Approx(0.075483673788496343).epsilon(1e-12));
    CHECK(binom_upper_tail(7, 0.5, 7) == doctest::Approx(0.0078125).epsilon(1e-12));
    CHECK(binom_upper_tail(7, 0.5, 8) == 0.0);
    CHECK(binom_upper_tail(5, 0.0, 1) == 0.0);
}

TEST_CASE("chi-square upper tail") {
    CHECK(chisq_upper_tail(3.0, 7.814728) == doctest::Approx(0.049999997831966137).epsilon(1e-10));
    CHECK(chisq_upper_tail(1.0, 3.841459) == doctest::Approx(0.049999994653195765).epsilon(1e-10));
    CHECK(chisq_upper_tail(24.0, 36.42) == doctest::Approx(0.049943840636221524).epsilon(1e-10));
    CHECK(chisq_upper_tail(4.0, 0.0) == 1.0);
}

TEST_CASE("kolmogorov p-value with small-sample correction") {
    CHECK(kolmogorov_p(0.2, 50) == doctest::Approx(0.031376652153072551).epsilon(1e-10));
    CHECK(kolmogorov_p(0.05, 1000) == doctest::Approx(0.012958845703741693).epsilon(1e-10));
    CHECK(kolmogorov_p(0.0, 100) == 1.0);
    CHECK(kolmogorov_p(1e-9, 100) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(kolmogorov_p(0.9, 100) < 1e-12);
    // monotone decreasing in the statistic
    double prev = 2.0;
    for (double d = 0.02; d < 0.4; d += 0.02) {
        double p = kolmogorov_p(d, 200);
        CHECK(p <= prev);
        prev = p;
    }
}

TEST_CASE("log choose and capped choose") {
    CHECK(log_choose(52, 5) == doctest::Approx(14.770621922970371).epsilon(1e-12));
    CHECK(log_choose(10, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::isinf(log_choose(3, 5)));
    CHECK(choose_capped(6, 3, 1000000) == 20);
    CHECK(choose_capped(10, 5, 1000000) == 252);
    CHECK(choose_capped(50, 25, 100000) == 100001);  // saturates just past the limit
    CHECK(choose_capped(3, 5, 100) == 0);
    CHECK(choose_capped(5, 0, 100) == 1);
    CHECK(choose_capped(5, 5, 100) == 1);
}
