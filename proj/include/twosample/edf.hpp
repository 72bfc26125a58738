#pragma once

#include <cstdint>
#include <vector>

#include "twosample/common.hpp"

namespace twosample {

// Lower-orthant empirical distribution functions evaluated at every pooled
// point: F over x, G over y, H over the pool. A point counts itself.
struct EdfEvaluation {
    std::vector<double> F, G, H;
    std::size_t n = 0, m = 0;
};

EdfEvaluation edf_evaluate(const PooledSample& p);

double ks_statistic(const EdfEvaluation& e);
double kuiper_statistic(const EdfEvaluation& e);
double cvm_statistic(const EdfEvaluation& e);
double ad_statistic(const EdfEvaluation& e);

// Membership bitmask over pooled indices; bit i set means point i belongs to
// the first sample under the current labeling.
struct LabelMask {
    std::vector<std::uint64_t> words;
    std::size_t n = 0, m = 0;
};

LabelMask make_label_mask(const std::vector<std::uint8_t>& labels);

// Pairwise componentwise-dominance bitsets, built once per dataset; with a
// LabelMask they give every EDF value by popcount, so permutations cost
// O(N^2/64) instead of O(N^2 d).
struct EdfCache {
    std::size_t N = 0, words = 0;
    std::vector<std::uint64_t> dom;       // row i: bits j with z_j <= z_i in every coordinate
    std::vector<std::uint32_t> dom_count; // label-free dominated count per point

    void build(const PooledSample& p);
    bool empty() const { return N == 0; }
};

struct EdfStats {
    double ks = 0, kuiper = 0, cvm = 0, ad = 0;
};

EdfStats edf_statistics(const EdfCache& cache, const LabelMask& mask);

}  // namespace twosample
