#include "twosample/permutation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "twosample/numeric.hpp"
#include "twosample/rng.hpp"

namespace twosample {

namespace {

bool needs_distance(Method m) {
    switch (m) {
        case Method::NN1:
        case Method::NN5:
        case Method::NN0:
        case Method::AZ:
        case Method::BF:
        case Method::BG:
        case Method::FR: return true;
        default: return false;
    }
}

bool is_edf(Method m) {
    return m == Method::KS || m == Method::K || m == Method::CvM || m == Method::AD;
}

bool is_kernel(Method m) { return m == Method::AZ || m == Method::BF || m == Method::BG; }

// reason a method cannot run on this dataset, empty if it can
std::string applicability(Method m, const PooledSample& p) {
    const std::size_t N = p.size();
    switch (m) {
        case Method::AZ:
            if (p.n < 2 || p.m < 2) return "AZ requires at least two observations per sample";
            break;
        case Method::BG:
            if (p.n < 2 || p.m < 2) return "BG requires at least two observations per sample";
            break;
        case Method::NN1:
            if (N < 2) return "NN1 requires at least two pooled points";
            break;
        case Method::NN5:
            if (N < 6) return "NN5 requires more than five pooled points";
            break;
        case Method::NN0:
            if (N < 2) return "NN0 requires at least two pooled points";
            break;
        case Method::FR:
            if (N < 2) return "FR requires at least two pooled points";
            break;
        case Method::ES:
        case Method::EP:
            if (p.d != 2) return method_name(m) + " requires 2-D data";
            break;
        default: break;
    }
    return "";
}

struct Evaluator {
    const TestContext* ctx;
    std::vector<Method> perm_methods;
    bool need_edf = false, need_kernel = false;
    bool need_nn1 = false, need_nn5 = false, need_fr = false;

    explicit Evaluator(const TestContext& c, const std::vector<Method>& methods) : ctx(&c) {
        for (Method m : methods) {
            perm_methods.push_back(m);
            need_edf |= is_edf(m);
            need_kernel |= is_kernel(m);
            need_nn1 |= m == Method::NN1;
            need_nn5 |= m == Method::NN5;
            need_fr |= m == Method::FR;
        }
    }

    void eval(const std::vector<std::uint8_t>& labels, const LabelMask& mask, double* out) const {
        const std::size_t n = ctx->pooled->n, m = ctx->pooled->m;
        EdfStats es;
        KernelSums ks;
        if (need_edf) es = edf_statistics(ctx->edf, mask);
        if (need_kernel) ks = kernel_sums(ctx->kernels, labels);
        for (std::size_t t = 0; t < perm_methods.size(); ++t) {
            switch (perm_methods[t]) {
                case Method::KS: out[t] = es.ks; break;
                case Method::K: out[t] = es.kuiper; break;
                case Method::CvM: out[t] = es.cvm; break;
                case Method::AD: out[t] = es.ad; break;
                case Method::NN1: out[t] = knn_statistic(ctx->nn1, labels); break;
                case Method::NN5: out[t] = knn_statistic(ctx->nn5, labels); break;
                case Method::AZ: out[t] = az_from_sums(ks.log_k, n, m); break;
                case Method::BF: out[t] = bf_from_sums(ks.sqrt_k, n, m); break;
                case Method::BG: out[t] = bg_from_sums(ks.sqrt_k, n, m); break;
                case Method::FR: out[t] = fr_statistic(ctx->tree, labels); break;
                default: out[t] = 0.0; break;
            }
        }
    }
};

void labels_from_xset(const std::vector<std::uint32_t>& xset, std::size_t N,
                      std::vector<std::uint8_t>& labels) {
    std::fill(labels.begin(), labels.end(), std::uint8_t{0});
    for (std::uint32_t i : xset) labels[i] = 1;
}

void mask_from_labels(const std::vector<std::uint8_t>& labels, LabelMask& mask) {
    std::fill(mask.words.begin(), mask.words.end(), 0ULL);
    mask.n = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i]) {
            mask.words[i >> 6] |= 1ULL << (i & 63);
            ++mask.n;
        }
    }
    mask.m = labels.size() - mask.n;
}

// per-trial random n-subset via partial Fisher-Yates on the (seed, trial) stream
void random_xset(std::uint64_t seed, std::uint64_t trial, std::size_t N, std::size_t n,
                 std::vector<std::uint32_t>& scratch, std::vector<std::uint32_t>& out) {
    Rng rng(seed, trial + 1);
    scratch.resize(N);
    std::iota(scratch.begin(), scratch.end(), 0u);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.uniform_int(N - i));
        std::swap(scratch[i], scratch[j]);
    }
    out.assign(scratch.begin(), scratch.begin() + n);
}

}  // namespace

std::uint64_t labeling_count(std::size_t N, std::size_t n, std::uint64_t limit) {
    return choose_capped(N, n, limit);
}

void unrank_combination(std::uint64_t rank, std::size_t N, std::size_t n,
                        std::vector<std::uint32_t>& out) {
    out.clear();
    std::size_t remaining = n;
    for (std::uint32_t i = 0; i < N && remaining > 0; ++i) {
        std::uint64_t with_i = choose_capped(N - 1 - i, remaining - 1, UINT64_MAX - 1);
        if (rank < with_i) {
            out.push_back(i);
            --remaining;
        } else {
            rank -= with_i;
        }
    }
}

void TestContext::prepare(const PooledSample& p, const std::vector<Method>& methods) {
    pooled = &p;
    bool any_dist = false, any_edf = false, any_kernel = false;
    bool any_nn1 = false, any_nn5 = false, any_fr = false;
    for (Method m : methods) {
        if (!applicability(m, p).empty()) continue;
        any_dist |= needs_distance(m);
        any_edf |= is_edf(m);
        any_kernel |= is_kernel(m);
        any_nn1 |= m == Method::NN1 || m == Method::NN0;
        any_nn5 |= m == Method::NN5;
        any_fr |= m == Method::FR;
    }
    if (any_dist && !has_dm) {
        dm = distance_matrix(p);
        has_dm = true;
    }
    if (any_edf && !has_edf) {
        edf.build(p);
        has_edf = true;
    }
    if (any_kernel && !has_kernels) {
        kernels.build(dm);
        has_kernels = true;
    }
    if (any_nn1 && !has_nn1) {
        nn1.build(dm, 1);
        has_nn1 = true;
    }
    if (any_nn5 && !has_nn5) {
        nn5.build(dm, 5);
        has_nn5 = true;
    }
    if (any_fr && !has_tree) {
        tree = mst(dm);
        has_tree = true;
    }
}

PermutationOutcome permutation_test(const PooledSample& p, const PermutationPlan& plan) {
    if (plan.methods.empty()) throw input_error("no methods requested");
    if (plan.B < 1) throw input_error("B must be at least 1");
    const std::size_t N = p.size();

    PermutationOutcome out;
    out.results.resize(plan.methods.size());

    // split requested methods into runnable permutation methods, runnable
    // asymptotic methods, and failures
    std::vector<Method> runnable_perm;
    std::vector<std::size_t> perm_slot, asym_slot;
    for (std::size_t i = 0; i < plan.methods.size(); ++i) {
        Method m = plan.methods[i];
        MethodOutcome& mo = out.results[i];
        mo.method = m;
        std::string why = applicability(m, p);
        if (why.empty() && m == Method::FR && plan.fr_asymptotic && N < 4)
            why = "FR asymptotic moments need at least four points";
        if (!why.empty()) {
            mo.failed = true;
            mo.error = why;
            continue;
        }
        if (method_uses_permutation(m) && !(m == Method::FR && plan.fr_asymptotic)) {
            perm_slot.push_back(i);
            runnable_perm.push_back(m);
        } else {
            asym_slot.push_back(i);
        }
    }

    TestContext ctx;
    {
        std::vector<Method> runnable;
        for (std::size_t i : perm_slot) runnable.push_back(plan.methods[i]);
        for (std::size_t i : asym_slot) runnable.push_back(plan.methods[i]);
        if (plan.fr_asymptotic)
            runnable.push_back(Method::FR);  // tree still needed for the asymptotic path
        ctx.prepare(p, runnable);
    }

    // asymptotic methods evaluate once
    for (std::size_t i : asym_slot) {
        MethodOutcome& mo = out.results[i];
        try {
            switch (mo.method) {
                case Method::NN0: {
                    TestResult r = nn0_test(ctx.nn1, p.labels);
                    mo.statistic = r.statistic;
                    mo.p_value = r.p_value;
                    mo.p_method = r.p_method;
                    break;
                }
                case Method::ES:
                case Method::EP: {
                    BinScheme scheme = mo.method == Method::ES ? BinScheme::equal_size
                                                               : BinScheme::equal_probability;
                    GridData g = bin2d(p, plan.grid_rows, plan.grid_cols, scheme);
                    TestResult r = chisquare_test(g, merge_bins(g), mo.method);
                    mo.statistic = r.statistic;
                    mo.p_value = r.p_value;
                    mo.p_method = r.p_method;
                    break;
                }
                case Method::FR: {
                    TestResult r = fr_asymptotic_test(ctx.tree, p.labels);
                    mo.statistic = r.statistic;
                    mo.p_value = r.p_value;
                    mo.p_method = r.p_method;
                    break;
                }
                default: break;
            }
        } catch (const std::exception& e) {
            mo.failed = true;
            mo.error = e.what();
        }
    }

    if (runnable_perm.empty()) return out;

    // decide exhaustive vs Monte Carlo
    std::uint64_t total_labelings = labeling_count(N, p.n, plan.exhaustive_limit);
    bool exhaustive = plan.mode == PermMode::exhaustive ||
                      (plan.mode == PermMode::automatic && total_labelings <= plan.exhaustive_limit);
    if (plan.mode == PermMode::exhaustive && total_labelings > plan.exhaustive_limit)
        throw input_error("exhaustive enumeration exceeds the labeling limit");

    const std::size_t T = exhaustive ? static_cast<std::size_t>(total_labelings) : plan.B + 1;
    const std::size_t nmeth = runnable_perm.size();
    Evaluator evaluator(ctx, runnable_perm);
    std::vector<double> stats(static_cast<std::size_t>(T) * nmeth);

    // observed labeling evaluates as a trial of its own: the last slot in
    // Monte Carlo mode, its lexicographic rank in exhaustive mode
    std::size_t obs_trial;
    if (exhaustive) {
        std::uint64_t rank = 0;
        std::size_t chosen = 0;
        for (std::uint32_t i = 0; i < N && chosen < p.n; ++i) {
            if (p.labels[i]) {
                ++chosen;
            } else {
                rank += choose_capped(N - 1 - i, p.n - chosen - 1, UINT64_MAX - 1);
            }
        }
        obs_trial = static_cast<std::size_t>(rank);
    } else {
        obs_trial = T - 1;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        std::vector<std::uint8_t> labels(N);
        LabelMask mask;
        mask.words.assign((N + 63) / 64, 0);
        std::vector<std::uint32_t> xset, scratch;
        for (;;) {
            std::size_t t = next.fetch_add(1);
            if (t >= T) break;
            if (exhaustive) {
                unrank_combination(t, N, p.n, xset);
                labels_from_xset(xset, N, labels);
            } else if (t == obs_trial) {
                std::copy(p.labels.begin(), p.labels.end(), labels.begin());
            } else {
                random_xset(plan.seed, t, N, p.n, scratch, xset);
                labels_from_xset(xset, N, labels);
            }
            mask_from_labels(labels, mask);
            evaluator.eval(labels, mask, stats.data() + t * nmeth);
        }
    };
    std::size_t nthreads = std::max<std::size_t>(1, std::min(plan.threads, T));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < nthreads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    out.B_used = exhaustive ? T : plan.B;
    out.exhaustive = exhaustive;

    for (std::size_t t = 0; t < nmeth; ++t) {
        MethodOutcome& mo = out.results[perm_slot[t]];
        const double obs = stats[obs_trial * nmeth + t];
        const bool upper = method_tail(mo.method) == Tail::upper;
        std::size_t count = 0;
        for (std::size_t s = 0; s < T; ++s) {
            double v = stats[s * nmeth + t];
            count += upper ? v >= obs : v <= obs;
        }
        mo.statistic = obs;
        mo.p_value = static_cast<double>(count) / static_cast<double>(T);
        mo.p_method = PValueMethod::permutation;
        if (plan.keep_perm_stats) {
            mo.perm_stats.resize(T);
            for (std::size_t s = 0; s < T; ++s) mo.perm_stats[s] = stats[s * nmeth + t];
        }
    }

    if (plan.combine && nmeth >= 2) {
        // midrank pseudo p-values per method over all trials, then min-p
        std::vector<double> min_p(T, 2.0);
        std::vector<double> sorted(T);
        for (std::size_t t = 0; t < nmeth; ++t) {
            const bool upper = method_tail(runnable_perm[t]) == Tail::upper;
            for (std::size_t s = 0; s < T; ++s) sorted[s] = stats[s * nmeth + t];
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t s = 0; s < T; ++s) {
                double v = stats[s * nmeth + t];
                auto lo = std::lower_bound(sorted.begin(), sorted.end(), v);
                auto hi = std::upper_bound(lo, sorted.end(), v);
                std::size_t below = static_cast<std::size_t>(lo - sorted.begin());
                std::size_t ties = static_cast<std::size_t>(hi - lo);
                std::size_t stricter = upper ? T - below - ties : below;
                double pseudo = (static_cast<double>(stricter) +
                                 0.5 * static_cast<double>(ties - 1) + 1.0) /
                                static_cast<double>(T);
                if (pseudo < min_p[s]) min_p[s] = pseudo;
            }
        }
        double obs_minp = min_p[obs_trial];
        std::size_t count = 0;
        for (std::size_t s = 0; s < T; ++s) count += min_p[s] <= obs_minp;
        out.combined = true;
        out.min_p_observed = obs_minp;
        out.combined_p = static_cast<double>(count) / static_cast<double>(T);
    }

    return out;
}

PermutationOutcome combine_tests(const PooledSample& p, const PermutationPlan& plan) {
    std::size_t perm_count = 0;
    for (Method m : plan.methods)
        perm_count += method_uses_permutation(m) && !(m == Method::FR && plan.fr_asymptotic);
    if (perm_count < 2) throw input_error("combination needs at least two permutation methods");
    PermutationPlan combined = plan;
    combined.combine = true;
    return permutation_test(p, combined);
}

const MethodOutcome* PermutationOutcome::find(Method m) const {
    for (const auto& r : results)
        if (r.method == m) return &r;
    return nullptr;
}

bool PermutationOutcome::any_failed() const {
    for (const auto& r : results)
        if (r.failed) return true;
    return false;
}

}  // namespace twosample
