#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twosample/binned.hpp"
#include "twosample/common.hpp"
#include "twosample/distance_tests.hpp"
#include "twosample/edf.hpp"
#include "twosample/graph_tests.hpp"

namespace twosample {

enum class PermMode { automatic, monte_carlo, exhaustive };

struct PermutationPlan {
    std::vector<Method> methods;
    std::size_t B = 1000;
    std::uint64_t seed = 0;
    PermMode mode = PermMode::automatic;
    std::size_t threads = 1;
    bool combine = false;
    bool keep_perm_stats = false;
    bool fr_asymptotic = false;          // report FR from its normal approximation
    std::size_t grid_rows = 5, grid_cols = 5;  // binning for ES / EP on 2-D input
    std::size_t exhaustive_limit = 100000;     // automatic mode switches when C(N,n) fits
};

// Support structures built once per dataset and shared read-only by every
// permutation worker.
struct TestContext {
    const PooledSample* pooled = nullptr;
    DistanceMatrix dm;
    EdfCache edf;
    KernelCache kernels;
    NeighborLists nn1, nn5;
    SpanningTree tree;
    bool has_dm = false, has_edf = false, has_kernels = false;
    bool has_nn1 = false, has_nn5 = false, has_tree = false;

    void prepare(const PooledSample& p, const std::vector<Method>& methods);
};

struct MethodOutcome {
    Method method = Method::KS;
    double statistic = 0.0;
    double p_value = 1.0;
    PValueMethod p_method = PValueMethod::permutation;
    bool failed = false;
    std::string error;
    std::vector<double> perm_stats;  // filled only when the plan asks for them
};

struct PermutationOutcome {
    std::vector<MethodOutcome> results;
    std::size_t B_used = 0;     // Monte Carlo draws, or all labelings when exhaustive
    bool exhaustive = false;
    bool combined = false;
    double min_p_observed = 1.0;
    double combined_p = 1.0;

    const MethodOutcome* find(Method m) const;
    bool any_failed() const;
};

// Runs every requested method on the pooled sample: permutation methods share
// one pass over B relabelings (or all C(N, n) labelings in exhaustive mode),
// asymptotic methods are evaluated once. Inapplicable methods produce failed
// entries without stopping the rest.
PermutationOutcome permutation_test(const PooledSample& p, const PermutationPlan& plan);

// Same single pass plus the min-p combination over the permutation methods.
PermutationOutcome combine_tests(const PooledSample& p, const PermutationPlan& plan);

// Number of distinct relabelings of the pooled sample, capped at limit + 1.
std::uint64_t labeling_count(std::size_t N, std::size_t n, std::uint64_t limit);

// Lexicographic rank -> n-subset of {0..N-1}; the exhaustive trial order.
void unrank_combination(std::uint64_t rank, std::size_t N, std::size_t n,
                        std::vector<std::uint32_t>& out);

}  // namespace twosample
