#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "twosample/io.hpp"
#include "twosample/power.hpp"

using namespace twosample;

namespace {

StudyConfig tiny_config(const std::string& name, std::vector<Method> methods) {
    StudyConfig cfg;
    cfg.case_study = find_case(name);
    cfg.n = cfg.m = 20;
    cfg.nsim = 12;
    cfg.plan.methods = std::move(methods);
    cfg.plan.B = 60;
    cfg.plan.seed = 99;
    return cfg;
}

PowerRow manual_row(const std::string& name, std::vector<std::string> methods,
                    std::vector<double> values) {
    PowerRow row;
    row.case_name = name;
    row.nsim = 100;
    for (std::size_t i = 0; i < methods.size(); ++i) {
        row.methods.push_back(parse_method(methods[i]));
        PowerCell cell;
        cell.defined = !std::isnan(values[i]);
        cell.freq = cell.defined ? values[i] : 0.0;
        row.cells.push_back(cell);
    }
    return row;
}

}  // namespace

TEST_CASE("estimate_power validates its configuration") {
    StudyConfig cfg = tiny_config("NormalD2", {Method::KS});
    cfg.nsim = 0;
    CHECK_THROWS_AS(estimate_power(cfg, 0.5), input_error);
    cfg = tiny_config("NormalD2", {Method::KS});
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(estimate_power(cfg, 0.5), input_error);
    cfg = tiny_config("NormalD2", {Method::KS});
    cfg.alpha = 0.01;
    cfg.plan.B = 50;  // alpha (B+1) < 1: the add-one p-value can never reject
    CHECK_THROWS_AS(estimate_power(cfg, 0.5), input_error);
}

TEST_CASE("estimate_power is reproducible and reports standard errors") {
    StudyConfig cfg = tiny_config("NormalD2", {Method::KS, Method::AZ});
    PowerRow a = estimate_power(cfg, 0.6);
    PowerRow b = estimate_power(cfg, 0.6);
    REQUIRE(a.cells.size() == 2);
    CHECK(a.case_name == "NormalD2");
    CHECK(a.theta == 0.6);
    CHECK(a.nsim == 12);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a.cells[i].defined);
        CHECK(a.cells[i].freq == b.cells[i].freq);
        double se = std::sqrt(a.cells[i].freq * (1 - a.cells[i].freq) / 12.0);
        CHECK(a.cells[i].se == doctest::Approx(se).epsilon(1e-12));
        CHECK(a.cells[i].freq >= 0.0);
        CHECK(a.cells[i].freq <= 1.0);
    }
}

TEST_CASE("estimate_power is thread-count independent") {
    StudyConfig cfg = tiny_config("FrankD2", {Method::KS, Method::CvM});
    PowerRow one = estimate_power(cfg, 3.0);
    cfg.plan.threads = 4;
    PowerRow four = estimate_power(cfg, 3.0);
    for (std::size_t i = 0; i < one.cells.size(); ++i)
        CHECK(one.cells[i].freq == four.cells[i].freq);
}

TEST_CASE("inapplicable methods yield undefined cells") {
    StudyConfig cfg = tiny_config("FrankD5", {Method::KS, Method::ES});
    PowerRow row = estimate_power(cfg, 2.0);
    CHECK(row.cells[0].defined);
    CHECK_FALSE(row.cells[1].defined);  // no 2-D binning in five dimensions
    PowerTable table = power_table({row});
    CHECK(table.defined(0, 0));
    CHECK_FALSE(table.defined(0, 1));
}

TEST_CASE("power table rejects inconsistent method sets") {
    PowerRow a = manual_row("A", {"KS", "AZ"}, {0.5, 0.6});
    PowerRow b = manual_row("B", {"KS", "BF"}, {0.5, 0.6});
    CHECK_THROWS_AS(power_table({a, b}), input_error);
    PowerRow c = manual_row("B", {"KS", "AZ"}, {0.2, 0.9});
    PowerTable t = power_table({a, c});
    CHECK(t.methods == std::vector<std::string>{"KS", "AZ"});
    CHECK(t.cases == std::vector<std::string>{"A", "B"});
    CHECK(t.value(1, 1) == 0.9);
}

TEST_CASE("summarize on a single row") {
    PowerRow row = manual_row("OnlyCase", {"KS", "AZ", "BF"}, {0.4, 0.8, 0.75});
    Summary s = summarize({row});
    REQUIRE(s.mean_power.size() == 3);
    CHECK(s.mean_power[0].method == "AZ");
    CHECK(s.mean_power[0].mean == doctest::Approx(0.8));
    CHECK(s.mean_power[1].method == "BF");
    // close to best: AZ is best; BF at 0.75 >= 0.72 counts, KS at 0.4 does not
    int az_pct = 0, bf_pct = 0, ks_pct = 0;
    for (const auto& e : s.close_to_best) {
        if (e.method == "AZ") az_pct = e.percent;
        if (e.method == "BF") bf_pct = e.percent;
        if (e.method == "KS") ks_pct = e.percent;
    }
    CHECK(az_pct == 100);
    CHECK(bf_pct == 100);
    CHECK(ks_pct == 0);
    REQUIRE(s.selection.size() == 1);
    CHECK(s.selection[0] == "AZ");
}

TEST_CASE("summarize covering needs both specialists") {
    PowerTable t;
    t.methods = {"M1", "M2"};
    t.cases = {"CaseA", "CaseB"};
    t.values = {0.9, 0.1, 0.1, 0.9};
    Summary s = summarize(t);
    REQUIRE(s.selection.size() == 2);
    CHECK(((s.selection[0] == "M1" && s.selection[1] == "M2") ||
           (s.selection[0] == "M2" && s.selection[1] == "M1")));
}

TEST_CASE("summarize reproduces the published continuous tables") {
    PowerTable t = read_power_table(std::string(FIXTURES_DIR) + "/appendix_power_continuous.tsv");
    CHECK(t.cases.size() == 50);
    CHECK(t.methods.size() == 18);
    Summary s = summarize(t);
    REQUIRE(!s.mean_power.empty());
    // ordering and means frozen from the published table (2-decimal inputs)
    CHECK(s.mean_power[0].method == "AZ");
    CHECK(s.mean_power[0].mean == doctest::Approx(82.52).epsilon(1e-4));
    CHECK(s.mean_power[1].method == "ES");
    CHECK(s.mean_power[1].mean == doctest::Approx(80.8529).epsilon(1e-4));
    CHECK(s.mean_power[2].method == "EP");
    CHECK(s.mean_power[2].mean == doctest::Approx(76.1176).epsilon(1e-4));
    int az = -1, es = -1, nn0 = -1, cf4 = -1;
    for (const auto& e : s.close_to_best) {
        if (e.method == "AZ") az = e.percent;
        if (e.method == "ES") es = e.percent;
        if (e.method == "NN0") nn0 = e.percent;
        if (e.method == "CF4") cf4 = e.percent;
    }
    CHECK(az == 72);
    CHECK(es == 44);
    CHECK(nn0 == 2);
    CHECK(cf4 == 10);
    REQUIRE(s.selection.size() == 5);
    CHECK(s.selection[0] == "AZ");
    CHECK(s.selection[1] == "ES");
    CHECK(s.selection[2] == "AD");
    CHECK(s.selection[3] == "NN5");
    CHECK(s.selection[4] == "BG");
}

TEST_CASE("summarize reproduces the published discrete tables") {
    PowerTable t = read_power_table(std::string(FIXTURES_DIR) + "/appendix_power_discrete.tsv");
    CHECK(t.cases.size() == 34);
    CHECK(t.methods.size() == 8);
    Summary s = summarize(t);
    CHECK(s.mean_power[0].method == "Chisquare");
    CHECK(s.mean_power[0].mean == doctest::Approx(79.3824).epsilon(1e-4));
    CHECK(s.mean_power[1].method == "NN");
    CHECK(s.mean_power[1].mean == doctest::Approx(53.1765).epsilon(1e-4));
    int chi = -1;
    for (const auto& e : s.close_to_best)
        if (e.method == "Chisquare") chi = e.percent;
    CHECK(chi == 85);
    REQUIRE(s.selection.size() == 4);
    CHECK(s.selection[0] == "Chisquare");
    CHECK(s.selection[1] == "KS");
    CHECK(s.selection[2] == "AD");
    CHECK(s.selection[3] == "AZ");
}

TEST_CASE("null parameter keeps rejection near the level") {
    StudyConfig cfg = tiny_config("FrankD2", {Method::KS, Method::AZ});
    cfg.nsim = 60;
    cfg.n = cfg.m = 30;
    cfg.plan.B = 99;
    PowerRow row = estimate_power(cfg, find_case("FrankD2").null_theta);
    for (const auto& cell : row.cells) {
        CHECK(cell.defined);
        CHECK(cell.freq <= 0.20);  // loose desk-scale band around alpha = 0.05
    }
}
