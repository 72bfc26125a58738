#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "twosample/numeric.hpp"
#include "twosample/permutation.hpp"
#include "twosample/rng.hpp"

using namespace twosample;

namespace {

PooledSample random_pooled(std::size_t n, std::size_t m, std::size_t d, Rng& rng) {
    PooledSample p;
    p.n = n;
    p.m = m;
    p.d = d;
    p.data.resize((n + m) * d);
    for (auto& v : p.data) v = rng.normal();
    p.labels.assign(n, 1);
    p.labels.insert(p.labels.end(), m, 0);
    return p;
}

PermutationPlan base_plan(std::vector<Method> methods, std::size_t B, std::uint64_t seed) {
    PermutationPlan plan;
    plan.methods = std::move(methods);
    plan.B = B;
    plan.seed = seed;
    return plan;
}

}  // namespace

TEST_CASE("outcome is identical for 1, 2 and 8 workers") {
    Rng rng(103, 0);
    PooledSample p = random_pooled(20, 25, 2, rng);
    PermutationPlan plan = base_plan({Method::KS, Method::CvM, Method::AZ, Method::NN5, Method::FR},
                                     500, 99);
    plan.mode = PermMode::monte_carlo;
    PermutationOutcome ref = permutation_test(p, plan);
    for (std::size_t workers : {2u, 8u}) {
        plan.threads = workers;
        PermutationOutcome out = permutation_test(p, plan);
        REQUIRE(out.results.size() == ref.results.size());
        CHECK(out.B_used == ref.B_used);
        for (std::size_t i = 0; i < ref.results.size(); ++i) {
            CHECK(out.results[i].statistic == ref.results[i].statistic);
            CHECK(out.results[i].p_value == ref.results[i].p_value);
        }
    }
}

TEST_CASE("automatic mode goes exhaustive at small N") {
    Rng rng(107, 0);
    PooledSample p = random_pooled(3, 3, 2, rng);
    PermutationPlan plan = base_plan({Method::KS, Method::AZ}, 1000, 5);
    PermutationOutcome out = permutation_test(p, plan);
    CHECK(out.exhaustive);
    CHECK(out.B_used == 20);  // C(6,3)
    // p-values are multiples of 1/20 with the observed labeling counted
    for (const auto& r : out.results) {
        double scaled = r.p_value * 20.0;
        CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-9));
        CHECK(r.p_value >= 1.0 / 20.0);
        CHECK(r.p_value <= 1.0);
    }
}

TEST_CASE("monte carlo p-values respect the add-one bounds") {
    Rng rng(109, 0);
    PooledSample p = random_pooled(15, 15, 2, rng);
    PermutationPlan plan = base_plan({Method::KS, Method::AD, Method::BF, Method::NN1}, 99, 3);
    plan.mode = PermMode::monte_carlo;
    PermutationOutcome out = permutation_test(p, plan);
    CHECK_FALSE(out.exhaustive);
    CHECK(out.B_used == 99);
    for (const auto& r : out.results) {
        CHECK(r.p_value >= 1.0 / 100.0);
        CHECK(r.p_value <= 1.0);
        double scaled = r.p_value * 100.0;
        CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-9));
    }
}

TEST_CASE("identical samples leave permutation p-values at the top") {
    PooledSample p;
    p.n = p.m = 6;
    p.d = 2;
    for (int rep = 0; rep < 2; ++rep)
        for (int i = 0; i < 6; ++i) {
            p.data.push_back(i * 0.25);
            p.data.push_back(1.0 - i * 0.125);
        }
    p.labels.assign(6, 1);
    p.labels.insert(p.labels.end(), 6, 0);
    PermutationPlan plan = base_plan({Method::KS, Method::CvM, Method::AD, Method::BF}, 200, 11);
    PermutationOutcome out = permutation_test(p, plan);
    for (const auto& r : out.results) {
        CHECK(r.statistic == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.p_value == 1.0);  // every permuted statistic ties or beats zero
    }
}

TEST_CASE("p-value estimates are stable across B") {
    Rng rng(113, 0);
    PooledSample p = random_pooled(12, 12, 2, rng);
    // shift y to make a moderate signal
    for (std::size_t i = 12; i < 24; ++i) p.data[i * 2] += 1.0;
    PermutationPlan plan = base_plan({Method::KS}, 100, 21);
    plan.mode = PermMode::monte_carlo;
    double p100 = permutation_test(p, plan).results[0].p_value;
    plan.B = 1000;
    double p1000 = permutation_test(p, plan).results[0].p_value;
    plan.B = 10000;
    double p10000 = permutation_test(p, plan).results[0].p_value;
    auto se = [](double q, std::size_t B) { return std::sqrt(q * (1 - q) / double(B)); };
    CHECK(std::abs(p100 - p10000) <= 3 * se(p10000, 100) + 0.02);
    CHECK(std::abs(p1000 - p10000) <= 3 * se(p10000, 1000) + 0.005);
}

TEST_CASE("asymptotic methods ride along without permutation") {
    Rng rng(127, 0);
    PooledSample p = random_pooled(30, 30, 2, rng);
    PermutationPlan plan = base_plan({Method::KS, Method::NN0, Method::ES, Method::EP}, 99, 2);
    PermutationOutcome out = permutation_test(p, plan);
    REQUIRE(out.results.size() == 4);
    CHECK(out.results[0].p_method == PValueMethod::permutation);
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(out.results[i].p_method == PValueMethod::asymptotic);
        CHECK_FALSE(out.results[i].failed);
        CHECK(out.results[i].p_value >= 0.0);
        CHECK(out.results[i].p_value <= 1.0);
    }
}

TEST_CASE("inapplicable methods fail without stopping the rest") {
    Rng rng(131, 0);
    PooledSample p = random_pooled(20, 20, 5, rng);  // 5-D: no 2-D binning
    PermutationPlan plan = base_plan({Method::KS, Method::ES, Method::AZ}, 99, 2);
    PermutationOutcome out = permutation_test(p, plan);
    REQUIRE(out.results.size() == 3);
    CHECK_FALSE(out.results[0].failed);
    CHECK(out.results[1].failed);
    CHECK(!out.results[1].error.empty());
    CHECK_FALSE(out.results[2].failed);
    CHECK(out.any_failed());
    CHECK(out.find(Method::AZ) != nullptr);
    CHECK(out.find(Method::BG) == nullptr);
}

TEST_CASE("fr can switch to its asymptotic approximation") {
    Rng rng(137, 0);
    PooledSample p = random_pooled(25, 25, 2, rng);
    PermutationPlan plan = base_plan({Method::FR}, 199, 4);
    PermutationOutcome perm = permutation_test(p, plan);
    CHECK(perm.results[0].p_method == PValueMethod::permutation);
    plan.fr_asymptotic = true;
    PermutationOutcome asym = permutation_test(p, plan);
    CHECK(asym.results[0].p_method == PValueMethod::asymptotic);
    CHECK(asym.results[0].statistic == perm.results[0].statistic);
    CHECK(std::abs(asym.results[0].p_value - perm.results[0].p_value) < 0.25);
}

TEST_CASE("combinatorics helpers") {
    CHECK(labeling_count(6, 3, 100000) == 20);
    CHECK(labeling_count(30, 15, 100000) == 100001);  // capped
    std::vector<std::uint32_t> subset;
    unrank_combination(0, 5, 2, subset);
    CHECK(subset == std::vector<std::uint32_t>{0, 1});
    unrank_combination(9, 5, 2, subset);
    CHECK(subset == std::vector<std::uint32_t>{3, 4});
    unrank_combination(5, 5, 2, subset);
    CHECK(subset == std::vector<std::uint32_t>{1, 3});
}

TEST_CASE("min-p combination bounds and determinism") {
    Rng rng(139, 0);
    PooledSample p = random_pooled(15, 15, 2, rng);
    for (std::size_t i = 15; i < 30; ++i) p.data[i * 2] += 1.5;
    PermutationPlan plan = base_plan({Method::KS, Method::AZ, Method::NN5}, 400, 17);
    plan.combine = true;
    PermutationOutcome a = combine_tests(p, plan);
    PermutationOutcome b = combine_tests(p, plan);
    CHECK(a.combined);
    CHECK(a.min_p_observed == b.min_p_observed);
    CHECK(a.combined_p == b.combined_p);
    CHECK(a.combined_p >= 1.0 / 401.0);
    CHECK(a.combined_p <= 1.0);
    CHECK(a.min_p_observed > 0.0);
    CHECK(a.min_p_observed <= 1.0);
    // a strong signal should drive the combined p low
    CHECK(a.combined_p < 0.05);
}

TEST_CASE("keep_perm_stats returns one value per trial") {
    Rng rng(149, 0);
    PooledSample p = random_pooled(8, 8, 2, rng);
    PermutationPlan plan = base_plan({Method::KS}, 150, 9);
    plan.mode = PermMode::monte_carlo;
    plan.keep_perm_stats = true;
    PermutationOutcome out = permutation_test(p, plan);
    CHECK(out.results[0].perm_stats.size() == out.B_used + 1);
}
