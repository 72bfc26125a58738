#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "twosample/common.hpp"

namespace twosample {

enum class BinScheme { equal_size, equal_probability };

// 2-D binned counts for both samples. Cells are indexed row-major with the
// first coordinate as the row axis.
struct GridData {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint32_t> counts_x, counts_y;  // rows * cols each
    std::vector<double> edges_row, edges_col;       // strictly increasing, sizes rows+1 / cols+1
    std::vector<double> centers;                    // rows * cols pairs (row coord, col coord)

    std::size_t cell(std::size_t i, std::size_t j) const { return i * cols + j; }
    std::uint64_t total() const;
};

GridData bin2d(const PooledSample& p, std::size_t rows, std::size_t cols, BinScheme scheme);

struct MergedBins {
    std::vector<int> group_of;  // per cell; -1 for cells with no observations
    std::vector<std::pair<std::uint64_t, std::uint64_t>> group_counts;  // (x, y) per group
};

// Deterministic greedy merge: occupied cells in row-major order accumulate
// into the current group until its pooled count reaches min_count; a deficient
// trailing group joins its predecessor.
MergedBins merge_bins(const GridData& g, std::uint64_t min_count = 5);

// Two-sample homogeneity chi-square over the merged groups, asymptotic
// p-value with #groups - 1 degrees of freedom. The method tag records which
// binning scheme produced the grid.
TestResult chisquare_test(const GridData& g, const MergedBins& merged, Method tag = Method::ES);

// Expands cell counts into a pooled sample of cell-center observations so the
// counting-based statistics run on binned data unchanged.
PooledSample discrete_pooled(const GridData& g);

}  // namespace twosample
