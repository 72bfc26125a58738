#include "twosample/edf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace twosample {

namespace {

constexpr double kBoundaryTol = 1e-12;

bool dominates(const double* a, const double* b, std::size_t d) {
    // true when b <= a componentwise
    for (std::size_t k = 0; k < d; ++k)
        if (b[k] > a[k]) return false;
    return true;
}

}  // namespace

EdfEvaluation edf_evaluate(const PooledSample& p) {
    const std::size_t N = p.size();
    EdfEvaluation e;
    e.n = p.n;
    e.m = p.m;
    e.F.assign(N, 0.0);
    e.G.assign(N, 0.0);
    e.H.assign(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t cx = 0, cy = 0;
        for (std::size_t j = 0; j < N; ++j) {
            if (!dominates(p.row(i), p.row(j), p.d)) continue;
            if (p.labels[j])
                ++cx;
            else
                ++cy;
        }
        e.F[i] = static_cast<double>(cx) / static_cast<double>(p.n);
        e.G[i] = static_cast<double>(cy) / static_cast<double>(p.m);
        e.H[i] = static_cast<double>(cx + cy) / static_cast<double>(N);
    }
    return e;
}

double ks_statistic(const EdfEvaluation& e) {
    double best = 0.0;
    for (std::size_t i = 0; i < e.F.size(); ++i)
        best = std::max(best, std::fabs(e.F[i] - e.G[i]));
    return best;
}

double kuiper_statistic(const EdfEvaluation& e) {
    double hi = -1.0, lo = 1.0;
    for (std::size_t i = 0; i < e.F.size(); ++i) {
        double diff = e.F[i] - e.G[i];
        hi = std::max(hi, diff);
        lo = std::min(lo, diff);
    }
    return hi - lo;
}

double cvm_statistic(const EdfEvaluation& e) {
    double sum = 0.0;
    for (std::size_t i = 0; i < e.F.size(); ++i) {
        double diff = e.F[i] - e.G[i];
        sum += diff * diff;
    }
    return sum;
}

double ad_statistic(const EdfEvaluation& e) {
    double sum = 0.0;
    for (std::size_t i = 0; i < e.F.size(); ++i) {
        double h = e.H[i];
        if (h < kBoundaryTol || h > 1.0 - kBoundaryTol) continue;
        double diff = e.F[i] - e.G[i];
        sum += diff * diff / (h * (1.0 - h));
    }
    return sum;
}

LabelMask make_label_mask(const std::vector<std::uint8_t>& labels) {
    LabelMask mask;
    mask.words.assign((labels.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i]) {
            mask.words[i >> 6] |= 1ULL << (i & 63);
            ++mask.n;
        } else {
            ++mask.m;
        }
    }
    return mask;
}

void EdfCache::build(const PooledSample& p) {
    N = p.size();
    words = (N + 63) / 64;
    dom.assign(N * words, 0);
    dom_count.assign(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        std::uint64_t* row = dom.data() + i * words;
        std::uint32_t count = 0;
        for (std::size_t j = 0; j < N; ++j) {
            if (dominates(p.row(i), p.row(j), p.d)) {
                row[j >> 6] |= 1ULL << (j & 63);
                ++count;
            }
        }
        dom_count[i] = count;
    }
}

EdfStats edf_statistics(const EdfCache& cache, const LabelMask& mask) {
    const double inv_n = 1.0 / static_cast<double>(mask.n);
    const double inv_m = 1.0 / static_cast<double>(mask.m);
    const double inv_N = 1.0 / static_cast<double>(cache.N);
    EdfStats s;
    double hi = -1.0, lo = 1.0;
    for (std::size_t i = 0; i < cache.N; ++i) {
        const std::uint64_t* row = cache.dom.data() + i * cache.words;
        std::uint32_t cx = 0;
        for (std::size_t w = 0; w < cache.words; ++w) cx += std::popcount(row[w] & mask.words[w]);
        double f = static_cast<double>(cx) * inv_n;
        double g = static_cast<double>(cache.dom_count[i] - cx) * inv_m;
        double h = static_cast<double>(cache.dom_count[i]) * inv_N;
        double diff = f - g;
        double adiff = std::fabs(diff);
        if (adiff > s.ks) s.ks = adiff;
        if (diff > hi) hi = diff;
        if (diff < lo) lo = diff;
        s.cvm += diff * diff;
        if (h >= kBoundaryTol && h <= 1.0 - kBoundaryTol) s.ad += diff * diff / (h * (1.0 - h));
    }
    s.kuiper = hi - lo;
    return s;
}

}  // namespace twosample
