#pragma once

#include <string>
#include <vector>

#include "twosample/casestudies.hpp"
#include "twosample/common.hpp"
#include "twosample/permutation.hpp"

namespace twosample {

struct StudyConfig {
    CaseStudy case_study;
    std::size_t n = 100, m = 100;
    std::size_t nsim = 200;
    PermutationPlan plan;
    double alpha = 0.05;
};

struct PowerCell {
    double freq = 0.0;
    double se = 0.0;
    bool defined = false;
};

struct PowerRow {
    std::string case_name;
    double theta = 0.0;
    std::vector<Method> methods;
    std::vector<PowerCell> cells;
    std::size_t nsim = 0;
};

// Rejection frequency of every planned method over cfg.nsim replications: x is
// drawn at the case reference, y at theta (theta = NaN draws y from the
// reference law too). Deterministic given plan.seed for any thread count.
PowerRow estimate_power(const StudyConfig& cfg, double theta);

// Case-by-method grid of power values; NaN marks an undefined cell (a method
// that cannot run on that case).
struct PowerTable {
    std::vector<std::string> methods;
    std::vector<std::string> cases;
    std::vector<double> values;  // row-major, cases x methods

    double value(std::size_t i, std::size_t j) const { return values[i * methods.size() + j]; }
    bool defined(std::size_t i, std::size_t j) const;
};

PowerTable power_table(const std::vector<PowerRow>& rows);

struct MeanPowerEntry {
    std::string method;
    double mean = 0.0;
};

struct CloseToBestEntry {
    std::string method;
    int percent = 0;
};

struct Summary {
    std::vector<MeanPowerEntry> mean_power;       // descending by mean
    std::vector<CloseToBestEntry> close_to_best;  // descending by percentage
    std::vector<std::string> selection;           // greedy covering order
};

// Mean power per method over its defined cells; percentage of cases (out of
// all cases) where the method is within 90% of the case's best; greedy minimal
// method set leaving no case without a close-to-best member.
Summary summarize(const PowerTable& table);
Summary summarize(const std::vector<PowerRow>& rows);

}  // namespace twosample
