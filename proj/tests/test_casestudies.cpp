#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "twosample/casestudies.hpp"
#include "twosample/numeric.hpp"
#include "twosample/rng.hpp"

using namespace twosample;

namespace {

bool in_unit_interval(const Sample& s) {
    for (double v : s.data)
        if (v < 0.0 || v > 1.0) return false;
    return true;
}

double tau_of(CopulaFamily family, double theta, std::size_t dim, std::size_t size,
              std::uint64_t seed) {
    Rng rng(seed, 0);
    Sample s = archimedean_sample(family, theta, dim, size, rng);
    return kendall_tau(s, 0, 1);
}

}  // namespace

TEST_CASE("catalog names and flags") {
    const auto& cat = case_catalog();
    CHECK(cat.size() == 37);
    for (const auto& cs : cat) {
        bool d_name = cs.name.ends_with("D2") || cs.name.ends_with("D5");
        CHECK(cs.marginals_equal == d_name);
        if (cs.name.ends_with("D5") || cs.name.ends_with("M5"))
            CHECK(cs.dim == 5);
        else
            CHECK(cs.dim == 2);
    }
    CHECK(find_case("ClaytonD2").dim == 2);
    CHECK_THROWS_AS(find_case("NopeD2"), input_error);
}

TEST_CASE("sampling is deterministic in seed") {
    for (const char* name : {"NormalD2", "FrankD5", "UniformRotateM", "ClaytonNormalM5"}) {
        const CaseStudy& cs = find_case(name);
        Rng r1(404, 7), r2(404, 7);
        Sample a = sample_case(cs, WhichSample::y, cs.default_theta, 50, r1);
        Sample b = sample_case(cs, WhichSample::y, cs.default_theta, 50, r2);
        CHECK(a.data == b.data);
        Rng r3(405, 7);
        Sample c = sample_case(cs, WhichSample::y, cs.default_theta, 50, r3);
        CHECK(a.data != c.data);
    }
}

TEST_CASE("archimedean samples live on the unit cube") {
    Rng rng(151, 0);
    for (auto fam : {CopulaFamily::frank, CopulaFamily::clayton, CopulaFamily::gumbel,
                     CopulaFamily::joe}) {
        double theta = (fam == CopulaFamily::gumbel || fam == CopulaFamily::joe) ? 2.0 : 3.0;
        for (std::size_t dim : {2u, 5u}) {
            Sample s = archimedean_sample(fam, theta, dim, 400, rng);
            CHECK(s.n == 400);
            CHECK(s.d == dim);
            CHECK(in_unit_interval(s));
        }
    }
}

TEST_CASE("kendall tau identities for clayton and gumbel") {
    // clayton: tau = theta/(theta+2); gumbel: tau = 1 - 1/theta
    CHECK(tau_of(CopulaFamily::clayton, 2.0, 2, 10000, 1) == doctest::Approx(0.5).epsilon(0.04));
    CHECK(tau_of(CopulaFamily::gumbel, 2.0, 2, 10000, 2) == doctest::Approx(0.5).epsilon(0.04));
    CHECK(tau_of(CopulaFamily::clayton, 1.0, 2, 10000, 3) ==
          doctest::Approx(1.0 / 3.0).epsilon(0.06));
    CHECK(tau_of(CopulaFamily::gumbel, 4.0, 2, 10000, 4) == doctest::Approx(0.75).epsilon(0.03));
}

TEST_CASE("kendall tau is monotone in theta") {
    struct Probe {
        CopulaFamily fam;
        double lo, mid, hi;
    };
    for (auto pr : {Probe{CopulaFamily::frank, 1.0, 4.0, 10.0},
                    Probe{CopulaFamily::clayton, 0.5, 2.0, 6.0},
                    Probe{CopulaFamily::gumbel, 1.2, 2.0, 4.0},
                    Probe{CopulaFamily::joe, 1.3, 2.5, 5.0}}) {
        double a = tau_of(pr.fam, pr.lo, 2, 10000, 11);
        double b = tau_of(pr.fam, pr.mid, 2, 10000, 12);
        double c = tau_of(pr.fam, pr.hi, 2, 10000, 13);
        CHECK(a < b);
        CHECK(b < c);
    }
}

TEST_CASE("independence limits") {
    // frank theta=0 and clayton theta=0, gumbel and joe theta=1 are exact independence
    struct Limit {
        CopulaFamily fam;
        double theta;
    };
    for (auto lim : {Limit{CopulaFamily::frank, 0.0}, Limit{CopulaFamily::clayton, 0.0},
                     Limit{CopulaFamily::gumbel, 1.0}, Limit{CopulaFamily::joe, 1.0}}) {
        Rng rng(163, 0);
        Sample s = archimedean_sample(lim.fam, lim.theta, 2, 8000, rng);
        CHECK(in_unit_interval(s));
        CHECK(kendall_tau(s, 0, 1) == doctest::Approx(0.0).epsilon(0.03));
    }
}

TEST_CASE("frank negative theta gives negative dependence in two dimensions") {
    Rng rng(167, 0);
    Sample s = archimedean_sample(CopulaFamily::frank, -5.0, 2, 8000, rng);
    CHECK(in_unit_interval(s));
    CHECK(kendall_tau(s, 0, 1) < -0.3);
    CHECK_THROWS_AS(archimedean_sample(CopulaFamily::frank, -5.0, 3, 10, rng), input_error);
}

TEST_CASE("gaussian copula tau follows the sine identity") {
    Rng rng(173, 0);
    double rho = 0.7;
    Sample s = gaussian_copula_sample(rho, 2, 10000, rng);
    CHECK(in_unit_interval(s));
    double expect = 2.0 / M_PI * std::asin(rho);
    CHECK(kendall_tau(s, 0, 1) == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("marginal quantile and cdf are inverse") {
    std::vector<MarginalSpec> specs;
    MarginalSpec e;
    e.kind = MarginalSpec::exponential;
    e.a = 1.7;
    specs.push_back(e);
    MarginalSpec t;
    t.kind = MarginalSpec::trunc_exponential;
    t.a = 1.0;
    t.b = 2.0;
    specs.push_back(t);
    MarginalSpec l;
    l.kind = MarginalSpec::linear;
    l.a = 0.8;
    specs.push_back(l);
    MarginalSpec nt;
    nt.kind = MarginalSpec::normal_tail;
    nt.a = 1.4;
    specs.push_back(nt);
    MarginalSpec b;
    b.kind = MarginalSpec::beta;
    b.a = 2.0;
    b.b = 2.0;
    specs.push_back(b);
    for (const auto& spec : specs)
        for (double u : {0.05, 0.3, 0.5, 0.77, 0.95}) {
            double q = marginal_quantile(spec, u);
            CHECK(marginal_cdf(spec, q) == doctest::Approx(u).epsilon(1e-6));
        }
    // linear marginal with slope 0.5 is the uniform
    MarginalSpec flat;
    flat.kind = MarginalSpec::linear;
    flat.a = 0.5;
    for (double u : {0.1, 0.5, 0.9})
        CHECK(marginal_quantile(flat, u) == doctest::Approx(u).epsilon(1e-12));
}

TEST_CASE("marginal transforms move coordinates off the cube") {
    Rng rng(179, 0);
    Sample s = archimedean_sample(CopulaFamily::frank, 5.0, 2, 500, rng);
    MarginalSpec e;
    e.kind = MarginalSpec::exponential;
    e.a = 1.0;
    apply_marginals(s, e);
    double mean = 0;
    for (double v : s.data) {
        CHECK(v >= 0.0);
        mean += v;
    }
    CHECK(mean / double(s.data.size()) == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("case x and y draws at the null parameter share the marginal law") {
    // light smoke check: the full distributional check runs in the power harness
    const CaseStudy& cs = find_case("NormalD2");
    Rng rx(191, 1), ry(191, 2);
    Sample x = sample_case(cs, WhichSample::x, cs.null_theta, 4000, rx);
    Sample y = sample_case(cs, WhichSample::y, cs.null_theta, 4000, ry);
    double mx = 0, my = 0, vx = 0, vy = 0;
    for (std::size_t i = 0; i < x.n; ++i) {
        mx += x.at(i, 0);
        my += y.at(i, 0);
        vx += x.at(i, 0) * x.at(i, 0);
        vy += y.at(i, 0) * y.at(i, 0);
    }
    CHECK(mx / double(x.n) == doctest::Approx(my / double(y.n)).epsilon(0.1));
    CHECK(std::abs(vx / double(x.n) - vy / double(y.n)) < 0.1);
}

TEST_CASE("stretch case controls the second coordinate variance") {
    const CaseStudy& cs = find_case("NormalStretchM");
    Rng rng(193, 0);
    Sample y = sample_case(cs, WhichSample::y, 2.6, 20000, rng);
    double v0 = 0, v1 = 0, cov = 0, m0 = 0, m1 = 0;
    for (std::size_t i = 0; i < y.n; ++i) {
        m0 += y.at(i, 0);
        m1 += y.at(i, 1);
    }
    m0 /= double(y.n);
    m1 /= double(y.n);
    for (std::size_t i = 0; i < y.n; ++i) {
        double a = y.at(i, 0) - m0, b = y.at(i, 1) - m1;
        v0 += a * a;
        v1 += b * b;
        cov += a * b;
    }
    CHECK(v0 / double(y.n) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(v1 / double(y.n) == doctest::Approx(2.6).epsilon(0.05));
    CHECK(cov / double(y.n) == doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("rotation case rotates about the origin") {
    const CaseStudy& cs = find_case("UniformRotateM");
    Rng rng(197, 0);
    double angle = 0.3;
    Sample y = sample_case(cs, WhichSample::y, angle, 2000, rng);
    // the rotated square's corner (1,1) maps outside the unit square
    double max1 = 0;
    for (std::size_t i = 0; i < y.n; ++i) max1 = std::max(max1, y.at(i, 1));
    CHECK(max1 > 1.05);
    // norms stay inside the rotated square's diagonal
    for (std::size_t i = 0; i < y.n; ++i) {
        double r = std::hypot(y.at(i, 0), y.at(i, 1));
        CHECK(r <= std::sqrt(2.0) + 1e-9);
    }
    // theta = 0 leaves the square untouched
    Rng rng0(199, 0);
    Sample y0 = sample_case(cs, WhichSample::y, 0.0, 500, rng0);
    CHECK(in_unit_interval(y0));
}

TEST_CASE("structured alternatives expose the named operations") {
    Rng rng(211, 0);
    Sample s = structured_alternatives("NormalShiftM", 0.5, 100, rng);
    CHECK(s.n == 100);
    CHECK(s.d == 2);
    CHECK_THROWS_AS(structured_alternatives("NotAnOp", 0.5, 100, rng), input_error);
}

TEST_CASE("invalid copula parameters raise input errors") {
    Rng rng(223, 0);
    CHECK_THROWS_AS(archimedean_sample(CopulaFamily::clayton, -1.0, 2, 10, rng), input_error);
    CHECK_THROWS_AS(archimedean_sample(CopulaFamily::gumbel, 0.5, 2, 10, rng), input_error);
    CHECK_THROWS_AS(archimedean_sample(CopulaFamily::joe, 0.5, 2, 10, rng), input_error);
    CHECK_THROWS_AS(gaussian_copula_sample(1.5, 2, 10, rng), input_error);
}
