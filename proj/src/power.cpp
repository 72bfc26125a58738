#include "twosample/power.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <thread>

namespace twosample {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_config(const StudyConfig& cfg) {
    if (cfg.n == 0 || cfg.m == 0) throw input_error("sample sizes must be positive");
    if (cfg.nsim == 0) throw input_error("nsim must be at least 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw input_error("alpha must lie in (0, 1)");
    if (cfg.plan.methods.empty()) throw input_error("no methods requested");
    if (cfg.plan.mode != PermMode::exhaustive &&
        cfg.alpha * static_cast<double>(cfg.plan.B + 1) < 1.0)
        throw input_error("B is too small for the requested alpha");
}

}  // namespace

PowerRow estimate_power(const StudyConfig& cfg, double theta) {
    validate_config(cfg);
    const std::size_t nmeth = cfg.plan.methods.size();
    const std::size_t nsim = cfg.nsim;

    // 1 = reject, 0 = accept, -1 = method failed on this replication
    std::vector<std::int8_t> outcome(nsim * nmeth, 0);

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        try {
            for (;;) {
                std::size_t r = next.fetch_add(1);
                if (r >= nsim) break;
                Rng x_rng(cfg.plan.seed, static_cast<std::uint64_t>(r) * 3 + 1);
                Rng y_rng(cfg.plan.seed, static_cast<std::uint64_t>(r) * 3 + 2);
                Sample x = sample_case(cfg.case_study, WhichSample::x, 0.0, cfg.n, x_rng);
                Sample y = std::isnan(theta)
                               ? sample_case(cfg.case_study, WhichSample::x, 0.0, cfg.m, y_rng)
                               : sample_case(cfg.case_study, WhichSample::y, theta, cfg.m, y_rng);
                PermutationPlan plan = cfg.plan;
                plan.seed = mix_seed(cfg.plan.seed, r, 3);
                plan.threads = 1;
                plan.combine = false;
                plan.keep_perm_stats = false;
                PermutationOutcome out = permutation_test(pool(x, y), plan);
                for (std::size_t j = 0; j < nmeth; ++j) {
                    const MethodOutcome& mo = out.results[j];
                    outcome[r * nmeth + j] =
                        mo.failed ? std::int8_t{-1} : std::int8_t{mo.p_value <= cfg.alpha};
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::size_t workers = std::max<std::size_t>(1, cfg.plan.threads);
    workers = std::min(workers, nsim);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool_threads;
        for (std::size_t w = 0; w < workers; ++w) pool_threads.emplace_back(worker);
        for (auto& t : pool_threads) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    PowerRow row;
    row.case_name = cfg.case_study.name;
    row.theta = theta;
    row.methods = cfg.plan.methods;
    row.nsim = nsim;
    row.cells.resize(nmeth);
    for (std::size_t j = 0; j < nmeth; ++j) {
        std::size_t rejects = 0;
        bool any_failed = false;
        for (std::size_t r = 0; r < nsim; ++r) {
            std::int8_t v = outcome[r * nmeth + j];
            if (v < 0)
                any_failed = true;
            else
                rejects += static_cast<std::size_t>(v);
        }
        PowerCell& cell = row.cells[j];
        if (any_failed) {
            cell.defined = false;
            cell.freq = kNaN;
            cell.se = kNaN;
        } else {
            cell.defined = true;
            cell.freq = static_cast<double>(rejects) / static_cast<double>(nsim);
            cell.se = std::sqrt(cell.freq * (1.0 - cell.freq) / static_cast<double>(nsim));
        }
    }
    return row;
}

bool PowerTable::defined(std::size_t i, std::size_t j) const {
    return !std::isnan(value(i, j));
}

PowerTable power_table(const std::vector<PowerRow>& rows) {
    if (rows.empty()) throw input_error("no power rows to tabulate");
    PowerTable t;
    for (Method m : rows.front().methods) t.methods.push_back(method_name(m));
    for (const PowerRow& row : rows) {
        if (row.methods != rows.front().methods)
            throw input_error("power rows use inconsistent method sets");
        t.cases.push_back(row.case_name);
        for (const PowerCell& cell : row.cells) t.values.push_back(cell.defined ? cell.freq : kNaN);
    }
    return t;
}

Summary summarize(const PowerTable& table) {
    const std::size_t nc = table.cases.size();
    const std::size_t nm = table.methods.size();
    if (nc == 0 || nm == 0) throw input_error("empty power table");

    std::vector<double> mean(nm, kNaN);
    for (std::size_t j = 0; j < nm; ++j) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < nc; ++i) {
            if (!table.defined(i, j)) continue;
            sum += table.value(i, j);
            ++count;
        }
        if (count > 0) mean[j] = sum / static_cast<double>(count);
    }

    // close[i][j]: method j reaches at least 90% of case i's best power
    std::vector<std::uint8_t> close(nc * nm, 0);
    for (std::size_t i = 0; i < nc; ++i) {
        double best = -1.0;
        for (std::size_t j = 0; j < nm; ++j)
            if (table.defined(i, j)) best = std::max(best, table.value(i, j));
        if (best < 0.0) continue;
        for (std::size_t j = 0; j < nm; ++j)
            if (table.defined(i, j) && table.value(i, j) >= 0.9 * best) close[i * nm + j] = 1;
    }

    std::vector<std::size_t> close_count(nm, 0);
    for (std::size_t j = 0; j < nm; ++j)
        for (std::size_t i = 0; i < nc; ++i) close_count[j] += close[i * nm + j];

    Summary s;
    std::vector<std::size_t> order(nm);
    for (std::size_t j = 0; j < nm; ++j) order[j] = j;

    auto by_mean = order;
    std::sort(by_mean.begin(), by_mean.end(), [&](std::size_t a, std::size_t b) {
        double ma = std::isnan(mean[a]) ? -1.0 : mean[a];
        double mb = std::isnan(mean[b]) ? -1.0 : mean[b];
        if (ma != mb) return ma > mb;
        return table.methods[a] < table.methods[b];
    });
    for (std::size_t j : by_mean) s.mean_power.push_back({table.methods[j], mean[j]});

    auto by_close = order;
    std::sort(by_close.begin(), by_close.end(), [&](std::size_t a, std::size_t b) {
        if (close_count[a] != close_count[b]) return close_count[a] > close_count[b];
        return table.methods[a] < table.methods[b];
    });
    for (std::size_t j : by_close) {
        int pct = static_cast<int>(
            std::llround(100.0 * static_cast<double>(close_count[j]) / static_cast<double>(nc)));
        s.close_to_best.push_back({table.methods[j], pct});
    }

    // greedy covering: cases with no defined cell need no coverage
    std::vector<std::uint8_t> covered(nc, 0);
    for (std::size_t i = 0; i < nc; ++i) {
        bool any = false;
        for (std::size_t j = 0; j < nm; ++j) any = any || table.defined(i, j);
        if (!any) covered[i] = 1;
    }
    std::vector<std::uint8_t> chosen(nm, 0);
    for (;;) {
        std::size_t uncovered = 0;
        for (std::size_t i = 0; i < nc; ++i) uncovered += covered[i] == 0;
        if (uncovered == 0) break;
        std::size_t best_j = nm;
        std::size_t best_gain = 0;
        for (std::size_t j = 0; j < nm; ++j) {
            if (chosen[j]) continue;
            std::size_t gain = 0;
            for (std::size_t i = 0; i < nc; ++i)
                if (!covered[i] && close[i * nm + j]) ++gain;
            if (gain == 0) continue;
            if (best_j == nm) {
                best_j = j;
                best_gain = gain;
                continue;
            }
            bool better = gain > best_gain;
            if (gain == best_gain) {
                double mj = std::isnan(mean[j]) ? -1.0 : mean[j];
                double mb = std::isnan(mean[best_j]) ? -1.0 : mean[best_j];
                if (mj != mb)
                    better = mj > mb;
                else
                    better = table.methods[j] < table.methods[best_j];
            }
            if (better) {
                best_j = j;
                best_gain = gain;
            }
        }
        if (best_j == nm) break;  // remaining cases have no close-to-best method at all
        chosen[best_j] = 1;
        s.selection.push_back(table.methods[best_j]);
        for (std::size_t i = 0; i < nc; ++i)
            if (close[i * nm + best_j]) covered[i] = 1;
    }
    return s;
}

Summary summarize(const std::vector<PowerRow>& rows) { return summarize(power_table(rows)); }

}  // namespace twosample
