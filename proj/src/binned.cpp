#include "twosample/binned.hpp"

#include <algorithm>
#include <cmath>

#include "twosample/numeric.hpp"

namespace twosample {

namespace {

std::vector<double> axis_edges(std::vector<double> values, std::size_t bins, BinScheme scheme) {
    std::sort(values.begin(), values.end());
    const double lo = values.front();
    const double hi = values.back();
    if (!(hi > lo)) throw input_error("degenerate axis: all coordinates equal");
    std::vector<double> edges;
    edges.reserve(bins + 1);
    if (scheme == BinScheme::equal_size) {
        for (std::size_t k = 0; k <= bins; ++k)
            edges.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins));
        edges.back() = hi;
    } else {
        // pooled quantiles, inverse ECDF with lower interpolation
        edges.push_back(lo);
        const std::size_t N = values.size();
        for (std::size_t k = 1; k < bins; ++k) {
            double p = static_cast<double>(k) / static_cast<double>(bins);
            std::size_t pos = static_cast<std::size_t>(
                std::ceil(p * static_cast<double>(N)));
            if (pos == 0) pos = 1;
            edges.push_back(values[pos - 1]);
        }
        edges.push_back(hi);
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        if (edges.size() < 3) throw input_error("tied data leaves fewer than two bins on an axis");
    }
    return edges;
}

// first cell is [e0, e1], later cells (e_k, e_{k+1}]
std::size_t locate(const std::vector<double>& edges, double v) {
    auto it = std::lower_bound(edges.begin() + 1, edges.end(), v);
    if (it == edges.end()) --it;
    return static_cast<std::size_t>(it - edges.begin()) - 1;
}

}  // namespace

std::uint64_t GridData::total() const {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < counts_x.size(); ++i) t += counts_x[i] + counts_y[i];
    return t;
}

GridData bin2d(const PooledSample& p, std::size_t rows, std::size_t cols, BinScheme scheme) {
    if (p.d != 2) throw input_error("binning is only supported for 2-D data");
    if (rows < 2 || cols < 2) throw input_error("grid needs at least 2 bins per axis");
    const std::size_t N = p.size();
    std::vector<double> a0(N), a1(N);
    for (std::size_t i = 0; i < N; ++i) {
        a0[i] = p.at(i, 0);
        a1[i] = p.at(i, 1);
    }
    GridData g;
    g.edges_row = axis_edges(a0, rows, scheme);
    g.edges_col = axis_edges(a1, cols, scheme);
    g.rows = g.edges_row.size() - 1;
    g.cols = g.edges_col.size() - 1;
    g.counts_x.assign(g.rows * g.cols, 0);
    g.counts_y.assign(g.rows * g.cols, 0);
    g.centers.assign(g.rows * g.cols * 2, 0.0);
    for (std::size_t i = 0; i < g.rows; ++i) {
        for (std::size_t j = 0; j < g.cols; ++j) {
            g.centers[g.cell(i, j) * 2] = 0.5 * (g.edges_row[i] + g.edges_row[i + 1]);
            g.centers[g.cell(i, j) * 2 + 1] = 0.5 * (g.edges_col[j] + g.edges_col[j + 1]);
        }
    }
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t r = locate(g.edges_row, p.at(i, 0));
        std::size_t c = locate(g.edges_col, p.at(i, 1));
        if (p.labels[i])
            ++g.counts_x[g.cell(r, c)];
        else
            ++g.counts_y[g.cell(r, c)];
    }
    return g;
}

MergedBins merge_bins(const GridData& g, std::uint64_t min_count) {
    if (g.total() < min_count) throw input_error("too few observations to form one bin group");
    MergedBins mb;
    mb.group_of.assign(g.rows * g.cols, -1);
    std::uint64_t acc_x = 0, acc_y = 0;
    std::vector<std::size_t> open_cells;
    for (std::size_t ci = 0; ci < g.rows * g.cols; ++ci) {
        std::uint64_t pooled = g.counts_x[ci] + g.counts_y[ci];
        if (pooled == 0) continue;
        open_cells.push_back(ci);
        acc_x += g.counts_x[ci];
        acc_y += g.counts_y[ci];
        if (acc_x + acc_y >= min_count) {
            int gid = static_cast<int>(mb.group_counts.size());
            for (std::size_t c : open_cells) mb.group_of[c] = gid;
            mb.group_counts.emplace_back(acc_x, acc_y);
            open_cells.clear();
            acc_x = acc_y = 0;
        }
    }
    if (!open_cells.empty()) {
        // deficient tail joins the previous group
        int gid = static_cast<int>(mb.group_counts.size()) - 1;
        for (std::size_t c : open_cells) mb.group_of[c] = gid;
        mb.group_counts[gid].first += acc_x;
        mb.group_counts[gid].second += acc_y;
    }
    return mb;
}

TestResult chisquare_test(const GridData& g, const MergedBins& merged, Method tag) {
    const std::size_t groups = merged.group_counts.size();
    if (groups < 2) throw input_error("chi-square needs at least two bin groups");
    std::uint64_t n = 0, m = 0;
    for (const auto& [cx, cy] : merged.group_counts) {
        n += cx;
        m += cy;
    }
    if (n == 0 || m == 0) throw method_error("chi-square needs observations from both samples");
    const double dn = static_cast<double>(n), dm = static_cast<double>(m);
    const double dN = dn + dm;
    double stat = 0.0;
    for (const auto& [cx, cy] : merged.group_counts) {
        double t = static_cast<double>(cx + cy);
        double ex = dn * t / dN;
        double ey = dm * t / dN;
        double dx = static_cast<double>(cx) - ex;
        double dy = static_cast<double>(cy) - ey;
        stat += dx * dx / ex + dy * dy / ey;
    }
    TestResult r;
    r.method = tag;
    r.statistic = stat;
    r.p_value = chisq_upper_tail(static_cast<double>(groups - 1), stat);
    r.p_method = PValueMethod::asymptotic;
    return r;
}

PooledSample discrete_pooled(const GridData& g) {
    PooledSample p;
    p.d = 2;
    std::uint64_t n = 0, m = 0;
    for (std::size_t ci = 0; ci < g.counts_x.size(); ++ci) {
        n += g.counts_x[ci];
        m += g.counts_y[ci];
    }
    p.n = n;
    p.m = m;
    p.data.reserve((n + m) * 2);
    p.labels.reserve(n + m);
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t ci = 0; ci < g.counts_x.size(); ++ci) {
            std::uint32_t reps = pass == 0 ? g.counts_x[ci] : g.counts_y[ci];
            for (std::uint32_t r = 0; r < reps; ++r) {
                p.data.push_back(g.centers[ci * 2]);
                p.data.push_back(g.centers[ci * 2 + 1]);
                p.labels.push_back(pass == 0 ? 1 : 0);
            }
        }
    }
    return p;
}

}  // namespace twosample
