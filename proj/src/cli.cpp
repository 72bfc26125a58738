#include "twosample/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "twosample/binned.hpp"
#include "twosample/casestudies.hpp"
#include "twosample/common.hpp"
#include "twosample/io.hpp"
#include "twosample/numeric.hpp"
#include "twosample/permutation.hpp"
#include "twosample/power.hpp"

namespace twosample {

namespace {

using nlohmann::json;

std::string fmt_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt_f2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_f1(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

std::string join_methods(const std::vector<Method>& ms) {
    std::string out;
    for (Method m : ms) {
        if (!out.empty()) out += ",";
        out += method_name(m);
    }
    return out;
}

void parse_grid(const std::string& text, std::size_t& rows, std::size_t& cols) {
    std::size_t xpos = text.find_first_of("xX");
    bool ok = xpos != std::string::npos && xpos > 0 && xpos + 1 < text.size();
    if (ok) {
        try {
            rows = std::stoul(text.substr(0, xpos));
            cols = std::stoul(text.substr(xpos + 1));
        } catch (const std::exception&) {
            ok = false;
        }
    }
    if (!ok || rows < 2 || cols < 2)
        throw input_error("bad grid '" + text + "': expected RxC with R, C >= 2");
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw input_error("bad value for " + key + ": '" + value + "'");
    }
}

double parse_double_value(const std::string& key, const std::string& value) {
    if (value == "nan") return std::numeric_limits<double>::quiet_NaN();
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw input_error("bad value for " + key + ": '" + value + "'");
    }
}

bool parse_bool_value(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw input_error("bad value for " + key + ": '" + value + "'");
}

void validate_spec(const RunSpec& spec) {
    static const std::vector<std::string> subs = {"test",  "test-discrete", "generate",
                                                  "power", "null-check",    "summarize"};
    if (std::find(subs.begin(), subs.end(), spec.subcommand) == subs.end())
        throw input_error("unknown subcommand '" + spec.subcommand + "'");
    if (spec.format != "tsv" && spec.format != "json" && spec.format != "text")
        throw input_error("format must be tsv, json or text");
    if (spec.mode != "auto" && spec.mode != "mc" && spec.mode != "exhaustive")
        throw input_error("mode must be auto, mc or exhaustive");
    if (!spec.scheme.empty() && spec.scheme != "es" && spec.scheme != "ep")
        throw input_error("scheme must be es or ep");
    if (spec.which != "x" && spec.which != "y") throw input_error("which must be x or y");
    if (spec.threads < 1) throw input_error("threads must be positive");
    if (spec.B < 1) throw input_error("B must be positive");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw input_error("alpha must lie in (0, 1)");
    if (spec.grid_rows < 2 || spec.grid_cols < 2)
        throw input_error("grid must be at least 2x2");
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string serialize_spec(const RunSpec& spec) {
    std::ostringstream os;
    os << "subcommand=" << spec.subcommand << "\n";
    for (const std::string& p : spec.inputs) os << "input=" << p << "\n";
    os << "methods=" << spec.methods << "\n";
    os << "B=" << spec.B << "\n";
    os << "seed=" << spec.seed << "\n";
    os << "alpha=" << format_double(spec.alpha) << "\n";
    os << "grid=" << spec.grid_rows << "x" << spec.grid_cols << "\n";
    os << "scheme=" << spec.scheme << "\n";
    os << "threads=" << spec.threads << "\n";
    os << "format=" << spec.format << "\n";
    os << "case=" << spec.case_name << "\n";
    os << "theta=" << format_double(spec.theta) << "\n";
    os << "which=" << spec.which << "\n";
    os << "size=" << spec.size << "\n";
    os << "n=" << spec.n << "\n";
    os << "m=" << spec.m << "\n";
    os << "nsim=" << spec.nsim << "\n";
    os << "mode=" << spec.mode << "\n";
    os << "combine=" << bool_str(spec.combine) << "\n";
    os << "fr_asymptotic=" << bool_str(spec.fr_asymptotic) << "\n";
    os << "out=" << spec.out << "\n";
    return os.str();
}

void apply_config_value(RunSpec& spec, const std::string& key, const std::string& value) {
    if (key == "subcommand")
        spec.subcommand = value;
    else if (key == "input")
        spec.inputs.push_back(value);
    else if (key == "methods")
        spec.methods = value;
    else if (key == "B")
        spec.B = parse_u64_value(key, value);
    else if (key == "seed")
        spec.seed = parse_u64_value(key, value);
    else if (key == "alpha")
        spec.alpha = parse_double_value(key, value);
    else if (key == "grid")
        parse_grid(value, spec.grid_rows, spec.grid_cols);
    else if (key == "scheme")
        spec.scheme = value;
    else if (key == "threads")
        spec.threads = static_cast<std::size_t>(parse_u64_value(key, value));
    else if (key == "format")
        spec.format = value;
    else if (key == "case")
        spec.case_name = value;
    else if (key == "theta")
        spec.theta = parse_double_value(key, value);
    else if (key == "which")
        spec.which = value;
    else if (key == "size")
        spec.size = static_cast<std::size_t>(parse_u64_value(key, value));
    else if (key == "n")
        spec.n = static_cast<std::size_t>(parse_u64_value(key, value));
    else if (key == "m")
        spec.m = static_cast<std::size_t>(parse_u64_value(key, value));
    else if (key == "nsim")
        spec.nsim = static_cast<std::size_t>(parse_u64_value(key, value));
    else if (key == "mode")
        spec.mode = value;
    else if (key == "combine")
        spec.combine = parse_bool_value(key, value);
    else if (key == "fr_asymptotic")
        spec.fr_asymptotic = parse_bool_value(key, value);
    else if (key == "out")
        spec.out = value;
    else
        throw input_error("unknown config key '" + key + "'");
}

namespace {

void echo_config(std::ostream& os, const RunSpec& spec) {
    std::istringstream lines(serialize_spec(spec));
    std::string line;
    while (std::getline(lines, line)) os << "# " << line << "\n";
}

json config_json(const RunSpec& spec) {
    json j;
    j["subcommand"] = spec.subcommand;
    j["inputs"] = spec.inputs;
    j["methods"] = spec.methods;
    j["B"] = spec.B;
    j["seed"] = spec.seed;
    j["alpha"] = spec.alpha;
    j["grid"] = std::to_string(spec.grid_rows) + "x" + std::to_string(spec.grid_cols);
    j["scheme"] = spec.scheme;
    j["threads"] = spec.threads;
    j["format"] = spec.format;
    j["case"] = spec.case_name;
    if (std::isnan(spec.theta))
        j["theta"] = nullptr;
    else
        j["theta"] = spec.theta;
    j["which"] = spec.which;
    j["size"] = spec.size;
    j["n"] = spec.n;
    j["m"] = spec.m;
    j["nsim"] = spec.nsim;
    j["mode"] = spec.mode;
    j["combine"] = spec.combine;
    j["fr_asymptotic"] = spec.fr_asymptotic;
    j["out"] = spec.out;
    return j;
}

std::vector<Method> all_continuous_methods(std::size_t d) {
    std::vector<Method> ms = {Method::KS,  Method::K,  Method::CvM, Method::AD, Method::NN1,
                              Method::NN5, Method::NN0, Method::AZ,  Method::BF, Method::BG,
                              Method::FR};
    if (d == 2) {
        ms.push_back(Method::ES);
        ms.push_back(Method::EP);
    }
    return ms;
}

std::vector<Method> all_discrete_methods() {
    return {Method::KS, Method::K,   Method::CvM, Method::AD, Method::NN1,
            Method::NN5, Method::NN0, Method::AZ,  Method::BF, Method::ES};
}

std::vector<Method> resolve_methods(const RunSpec& spec, bool discrete, std::size_t d) {
    std::vector<Method> ms;
    if (spec.methods.empty())
        ms = discrete ? all_discrete_methods() : all_continuous_methods(d);
    else
        ms = parse_method_list(spec.methods);
    if (discrete) {
        for (Method m : ms) {
            if (m == Method::BG) throw method_error("BG is not available for binned data");
            if (m == Method::FR) throw method_error("FR is not available for binned data");
        }
    }
    if (!spec.scheme.empty()) {
        Method drop = spec.scheme == "es" ? Method::EP : Method::ES;
        ms.erase(std::remove(ms.begin(), ms.end(), drop), ms.end());
    }
    if (ms.empty()) throw input_error("method list is empty after the scheme filter");
    return ms;
}

PermutationPlan make_plan(const RunSpec& spec, std::vector<Method> methods) {
    PermutationPlan plan;
    plan.methods = std::move(methods);
    plan.B = spec.B;
    plan.seed = spec.seed;
    plan.mode = spec.mode == "mc"           ? PermMode::monte_carlo
                : spec.mode == "exhaustive" ? PermMode::exhaustive
                                            : PermMode::automatic;
    plan.threads = spec.threads;
    plan.combine = spec.combine;
    plan.fr_asymptotic = spec.fr_asymptotic;
    plan.grid_rows = spec.grid_rows;
    plan.grid_cols = spec.grid_cols;
    return plan;
}

void emit_outcome_text(std::ostream& os, const PermutationOutcome& out, bool combined) {
    os << std::left << std::setw(9) << "method" << std::setw(14) << "statistic" << std::setw(12)
       << "p_value" << "p_from\n";
    for (const MethodOutcome& mo : out.results) {
        os << std::setw(9) << method_name(mo.method);
        if (mo.failed) {
            os << "failed: " << mo.error << "\n";
            continue;
        }
        os << std::setw(14) << fmt_g6(mo.statistic) << std::setw(12) << fmt_g6(mo.p_value)
           << (mo.p_method == PValueMethod::permutation ? "permutation" : "asymptotic") << "\n";
    }
    if (combined)
        os << std::setw(9) << "combined" << std::setw(14) << fmt_g6(out.min_p_observed)
           << std::setw(12) << fmt_g6(out.combined_p) << "permutation\n";
    os << "trials: " << (out.exhaustive ? "all " : "") << out.B_used
       << (out.exhaustive ? " labelings" : " random relabelings") << "\n";
}

void emit_outcome_tsv(std::ostream& os, const PermutationOutcome& out, bool combined) {
    os << "method\tstatistic\tp_value\tp_from\tstatus\terror\n";
    for (const MethodOutcome& mo : out.results) {
        os << method_name(mo.method) << "\t";
        if (mo.failed) {
            os << "\t\t\tfailed\t" << mo.error << "\n";
            continue;
        }
        os << format_double(mo.statistic) << "\t" << format_double(mo.p_value) << "\t"
           << (mo.p_method == PValueMethod::permutation ? "permutation" : "asymptotic")
           << "\tok\t\n";
    }
    if (combined)
        os << "combined\t" << format_double(out.min_p_observed) << "\t"
           << format_double(out.combined_p) << "\tpermutation\tok\t\n";
}

json outcome_json(const PermutationOutcome& out, bool combined) {
    json j;
    j["B_used"] = out.B_used;
    j["exhaustive"] = out.exhaustive;
    json rows = json::array();
    for (const MethodOutcome& mo : out.results) {
        json r;
        r["method"] = method_name(mo.method);
        r["failed"] = mo.failed;
        if (mo.failed) {
            r["error"] = mo.error;
        } else {
            r["statistic"] = mo.statistic;
            r["p_value"] = mo.p_value;
            r["p_from"] = mo.p_method == PValueMethod::permutation ? "permutation" : "asymptotic";
        }
        rows.push_back(r);
    }
    j["results"] = rows;
    if (combined) {
        j["combined"] = {{"min_p", out.min_p_observed}, {"p_value", out.combined_p}};
    }
    return j;
}

int emit_test_output(std::ostream& os, const RunSpec& spec, const PermutationOutcome& out) {
    if (spec.format == "json") {
        json j;
        j["config"] = config_json(spec);
        j.update(outcome_json(out, spec.combine));
        os << j.dump(2) << "\n";
    } else {
        echo_config(os, spec);
        if (spec.format == "tsv")
            emit_outcome_tsv(os, out, spec.combine);
        else
            emit_outcome_text(os, out, spec.combine);
    }
    return out.any_failed() ? 3 : 0;
}

int cmd_test(RunSpec spec, std::ostream& os) {
    if (spec.inputs.size() != 2) throw input_error("test needs two csv paths (x, y)");
    Sample x = read_csv_sample(spec.inputs[0]);
    Sample y = read_csv_sample(spec.inputs[1]);
    PooledSample p = pool(x, y);
    std::vector<Method> methods = resolve_methods(spec, false, p.d);
    spec.methods = join_methods(methods);
    PermutationPlan plan = make_plan(spec, methods);
    PermutationOutcome out = spec.combine ? combine_tests(p, plan) : permutation_test(p, plan);
    return emit_test_output(os, spec, out);
}

int cmd_test_discrete(RunSpec spec, std::ostream& os) {
    if (spec.inputs.size() != 1) throw input_error("test-discrete needs one grid csv path");
    GridData g = read_grid_csv(spec.inputs[0]);
    std::vector<Method> methods = resolve_methods(spec, true, 2);
    spec.methods = join_methods(methods);

    std::vector<Method> point_methods;
    for (Method m : methods)
        if (m != Method::ES && m != Method::EP) point_methods.push_back(m);

    PermutationOutcome out;
    if (!point_methods.empty()) {
        PooledSample p = discrete_pooled(g);
        PermutationPlan plan = make_plan(spec, point_methods);
        out = spec.combine ? combine_tests(p, plan) : permutation_test(p, plan);
    }

    // chi-square runs on the given cells directly, no re-binning
    std::vector<MethodOutcome> merged_results;
    std::size_t next_point = 0;
    for (Method m : methods) {
        if (m != Method::ES && m != Method::EP) {
            merged_results.push_back(out.results[next_point++]);
            continue;
        }
        MethodOutcome mo;
        mo.method = m;
        try {
            MergedBins merged = merge_bins(g);
            TestResult tr = chisquare_test(g, merged, m);
            mo.statistic = tr.statistic;
            mo.p_value = tr.p_value;
            mo.p_method = tr.p_method;
        } catch (const std::exception& e) {
            mo.failed = true;
            mo.error = e.what();
        }
        merged_results.push_back(mo);
    }
    out.results = std::move(merged_results);
    return emit_test_output(os, spec, out);
}

int cmd_generate(RunSpec spec, std::ostream& os) {
    if (spec.case_name.empty()) throw input_error("generate needs --case");
    const CaseStudy& cs = find_case(spec.case_name);
    if (std::isnan(spec.theta)) spec.theta = cs.default_theta;
    if (spec.size < 1) throw input_error("size must be positive");
    WhichSample which = spec.which == "x" ? WhichSample::x : WhichSample::y;
    Rng rng(spec.seed, which == WhichSample::x ? 1 : 2);
    Sample s = sample_case(cs, which, spec.theta, spec.size, rng);
    echo_config(os, spec);
    write_csv_sample(os, s);
    return 0;
}

StudyConfig make_study(const RunSpec& spec, const CaseStudy& cs,
                       const std::vector<Method>& methods) {
    StudyConfig cfg;
    cfg.case_study = cs;
    cfg.n = spec.n;
    cfg.m = spec.m;
    cfg.nsim = spec.nsim;
    cfg.alpha = spec.alpha;
    cfg.plan = make_plan(spec, methods);
    return cfg;
}

void emit_power_text(std::ostream& os, const PowerRow& row) {
    os << std::left << std::setw(9) << "method" << std::setw(10) << "power" << "se\n";
    for (std::size_t j = 0; j < row.methods.size(); ++j) {
        const PowerCell& c = row.cells[j];
        os << std::setw(9) << method_name(row.methods[j]);
        if (c.defined)
            os << std::setw(10) << fmt_f2(100.0 * c.freq) << fmt_f2(100.0 * c.se) << "\n";
        else
            os << "-\n";
    }
}

void emit_power_tsv(std::ostream& os, const PowerRow& row) {
    os << "case";
    for (Method m : row.methods) os << "\t" << method_name(m);
    os << "\n" << row.case_name;
    for (const PowerCell& c : row.cells) {
        os << "\t";
        if (c.defined) os << fmt_f2(100.0 * c.freq);
    }
    os << "\n";
}

json power_json(const PowerRow& row) {
    json j;
    j["case"] = row.case_name;
    if (std::isnan(row.theta))
        j["theta"] = nullptr;
    else
        j["theta"] = row.theta;
    j["nsim"] = row.nsim;
    json cells = json::array();
    for (std::size_t i = 0; i < row.methods.size(); ++i) {
        json c;
        c["method"] = method_name(row.methods[i]);
        c["defined"] = row.cells[i].defined;
        if (row.cells[i].defined) {
            c["power"] = row.cells[i].freq;
            c["se"] = row.cells[i].se;
        }
        cells.push_back(c);
    }
    j["cells"] = cells;
    return j;
}

int cmd_power(RunSpec spec, std::ostream& os) {
    if (spec.case_name.empty()) throw input_error("power needs --case");
    const CaseStudy& cs = find_case(spec.case_name);
    if (std::isnan(spec.theta)) spec.theta = cs.default_theta;
    std::vector<Method> methods = resolve_methods(spec, false, cs.dim);
    spec.methods = join_methods(methods);
    PowerRow row = estimate_power(make_study(spec, cs, methods), spec.theta);
    if (spec.format == "json") {
        json j;
        j["config"] = config_json(spec);
        j["power"] = power_json(row);
        os << j.dump(2) << "\n";
    } else {
        echo_config(os, spec);
        if (spec.format == "tsv")
            emit_power_tsv(os, row);
        else
            emit_power_text(os, row);
    }
    return 0;
}

// central 99% acceptance region of Binomial(nsim, alpha), as frequencies
void binomial_band(std::size_t nsim, double alpha, double& lo, double& hi) {
    auto cdf = [&](std::size_t k) {
        if (k + 1 > nsim) return 1.0;
        return 1.0 - binom_upper_tail(nsim, alpha, k + 1);
    };
    std::size_t k1 = 0;
    while (k1 < nsim && !(cdf(k1) > 0.005)) ++k1;
    std::size_t k2 = k1;
    while (k2 < nsim && !(cdf(k2) >= 0.995)) ++k2;
    lo = static_cast<double>(k1) / static_cast<double>(nsim);
    hi = static_cast<double>(k2) / static_cast<double>(nsim);
}

int cmd_null_check(RunSpec spec, std::ostream& os) {
    if (spec.case_name.empty()) throw input_error("null-check needs --case");
    const CaseStudy& cs = find_case(spec.case_name);
    spec.theta = cs.null_theta;
    std::vector<Method> methods = resolve_methods(spec, false, cs.dim);
    spec.methods = join_methods(methods);
    PowerRow row = estimate_power(make_study(spec, cs, methods), cs.null_theta);
    double lo, hi;
    binomial_band(spec.nsim, spec.alpha, lo, hi);
    auto status = [&](const PowerCell& c) {
        if (!c.defined) return "na";
        return c.freq >= lo && c.freq <= hi ? "ok" : "outside";
    };
    if (spec.format == "json") {
        json j;
        j["config"] = config_json(spec);
        j["power"] = power_json(row);
        j["band"] = {{"lo", lo}, {"hi", hi}};
        json st = json::object();
        for (std::size_t i = 0; i < row.methods.size(); ++i)
            st[method_name(row.methods[i])] = status(row.cells[i]);
        j["status"] = st;
        os << j.dump(2) << "\n";
    } else {
        echo_config(os, spec);
        if (spec.format == "tsv") {
            os << "method\tfreq\tse\tband_lo\tband_hi\tstatus\n";
            for (std::size_t i = 0; i < row.methods.size(); ++i) {
                const PowerCell& c = row.cells[i];
                os << method_name(row.methods[i]) << "\t"
                   << (c.defined ? format_double(c.freq) : "") << "\t"
                   << (c.defined ? format_double(c.se) : "") << "\t" << format_double(lo) << "\t"
                   << format_double(hi) << "\t" << status(c) << "\n";
            }
        } else {
            os << "99% acceptance band for alpha " << fmt_g6(spec.alpha) << ": ["
               << fmt_g6(lo) << ", " << fmt_g6(hi) << "]\n";
            os << std::left << std::setw(9) << "method" << std::setw(10) << "freq" << "status\n";
            for (std::size_t i = 0; i < row.methods.size(); ++i) {
                const PowerCell& c = row.cells[i];
                os << std::setw(9) << method_name(row.methods[i]);
                if (c.defined)
                    os << std::setw(10) << fmt_g6(c.freq) << status(c) << "\n";
                else
                    os << std::setw(10) << "-" << "na\n";
            }
        }
    }
    return 0;
}

int cmd_summarize(const RunSpec& spec, std::ostream& os) {
    if (spec.inputs.size() != 1) throw input_error("summarize needs one table path");
    PowerTable table = read_power_table(spec.inputs[0]);
    Summary s = summarize(table);
    if (spec.format == "json") {
        json j;
        j["config"] = config_json(spec);
        json mean = json::array();
        for (const MeanPowerEntry& e : s.mean_power)
            mean.push_back({{"method", e.method}, {"mean", e.mean}});
        json close = json::array();
        for (const CloseToBestEntry& e : s.close_to_best)
            close.push_back({{"method", e.method}, {"percent", e.percent}});
        j["summary"] = {{"mean_power", mean}, {"close_to_best", close},
                        {"selection", s.selection}};
        os << j.dump(2) << "\n";
    } else if (spec.format == "tsv") {
        echo_config(os, spec);
        os << "method\tmean_power\tclose_to_best_pct\tselection_order\n";
        for (const MeanPowerEntry& e : s.mean_power) {
            int pct = 0;
            for (const CloseToBestEntry& c : s.close_to_best)
                if (c.method == e.method) pct = c.percent;
            std::size_t order = 0;
            for (std::size_t i = 0; i < s.selection.size(); ++i)
                if (s.selection[i] == e.method) order = i + 1;
            os << e.method << "\t" << fmt_f1(e.mean) << "\t" << pct << "\t";
            if (order > 0) os << order;
            os << "\n";
        }
    } else {
        echo_config(os, spec);
        for (const MeanPowerEntry& e : s.mean_power) os << e.method << " " << fmt_f1(e.mean) << "\n";
        os << "\n";
        os << "close_to_best\n";
        for (const CloseToBestEntry& e : s.close_to_best)
            os << e.method << " " << e.percent << "\n";
        os << "\n";
        os << "selection";
        for (const std::string& m : s.selection) os << " " << m;
        os << "\n";
    }
    return 0;
}

int dispatch(RunSpec spec, std::ostream& os) {
    if (spec.subcommand == "test") return cmd_test(std::move(spec), os);
    if (spec.subcommand == "test-discrete") return cmd_test_discrete(std::move(spec), os);
    if (spec.subcommand == "generate") return cmd_generate(std::move(spec), os);
    if (spec.subcommand == "power") return cmd_power(std::move(spec), os);
    if (spec.subcommand == "null-check") return cmd_null_check(std::move(spec), os);
    return cmd_summarize(spec, os);
}

}  // namespace

int run(const RunSpec& spec, std::ostream& os) {
    validate_spec(spec);
    if (!spec.out.empty()) {
        std::ofstream file(spec.out);
        if (!file) throw input_error("cannot write " + spec.out);
        return dispatch(spec, file);
    }
    return dispatch(spec, os);
}

int run_cli(int argc, const char* const* argv, std::ostream& os, std::ostream& err) {
    RunSpec spec;
    try {
        CLI::App app{"nonparametric multivariate two-sample tests"};
        app.require_subcommand(0, 1);

        struct Flags {
            std::string config, methods, scheme, format, mode, case_name, which, out, grid;
            std::uint64_t B = 0, seed = 0;
            double alpha = 0.0, theta = 0.0;
            std::uint64_t threads = 0, size = 0, n = 0, m = 0, nsim = 0;
            bool combine = false, fr_asymptotic = false;
            std::vector<std::string> paths;
        } f;

        auto add_common = [&](CLI::App* sub, bool with_perm) {
            sub->add_option("--config", f.config, "key=value config file; flags win");
            sub->add_option("--format", f.format, "output format: tsv, json or text");
            sub->add_option("--out", f.out, "write output to this file");
            sub->add_option("--seed", f.seed, "RNG seed");
            if (with_perm) {
                sub->add_option("--methods", f.methods, "comma-separated method list");
                sub->add_option("--B", f.B, "Monte Carlo permutation count");
                sub->add_option("--alpha", f.alpha, "significance level");
                sub->add_option("--threads", f.threads, "worker count");
                sub->add_option("--mode", f.mode, "permutation mode: auto, mc or exhaustive");
            }
        };

        // config-driven invocation: no subcommand, the file names one, flags override
        add_common(&app, true);
        app.add_option("--grid", f.grid, "chi-square grid, RxC");
        app.add_option("--scheme", f.scheme, "keep one chi-square variant: es or ep");
        app.add_flag("--combine", f.combine, "add the min-p combined test");
        app.add_flag("--fr-asymptotic", f.fr_asymptotic, "FR p-value from the normal approximation");
        app.add_option("--case", f.case_name, "case-study name");
        app.add_option("--theta", f.theta, "alternative strength (default: case default)");
        app.add_option("--which", f.which, "draw from x or y");
        app.add_option("--size", f.size, "observations to draw");
        app.add_option("--n", f.n, "x sample size");
        app.add_option("--m", f.m, "y sample size");
        app.add_option("--nsim", f.nsim, "replications");

        CLI::App* t = app.add_subcommand("test", "two-sample tests on two csv files");
        t->add_option("files", f.paths, "x csv and y csv")->expected(0, 2);
        add_common(t, true);
        t->add_option("--grid", f.grid, "chi-square grid, RxC");
        t->add_option("--scheme", f.scheme, "keep one chi-square variant: es or ep");
        t->add_flag("--combine", f.combine, "add the min-p combined test");
        t->add_flag("--fr-asymptotic", f.fr_asymptotic, "FR p-value from the normal approximation");

        CLI::App* td = app.add_subcommand("test-discrete", "tests on a binned grid csv");
        td->add_option("file", f.paths, "grid csv")->expected(0, 1);
        add_common(td, true);
        td->add_option("--scheme", f.scheme, "keep one chi-square variant: es or ep");
        td->add_flag("--combine", f.combine, "add the min-p combined test");

        CLI::App* g = app.add_subcommand("generate", "draw a case-study sample as csv");
        add_common(g, false);
        g->add_option("--case", f.case_name, "case-study name");
        g->add_option("--theta", f.theta, "alternative strength (default: case default)");
        g->add_option("--which", f.which, "draw from x or y");
        g->add_option("--size", f.size, "observations to draw");

        CLI::App* pw = app.add_subcommand("power", "estimate rejection frequency for a case");
        add_common(pw, true);
        pw->add_option("--case", f.case_name, "case-study name");
        pw->add_option("--theta", f.theta, "alternative strength (default: case default)");
        pw->add_option("--n", f.n, "x sample size");
        pw->add_option("--m", f.m, "y sample size");
        pw->add_option("--nsim", f.nsim, "replications");
        pw->add_option("--grid", f.grid, "chi-square grid, RxC");
        pw->add_option("--scheme", f.scheme, "keep one chi-square variant: es or ep");
        pw->add_flag("--fr-asymptotic", f.fr_asymptotic,
                     "FR p-value from the normal approximation");

        CLI::App* nc = app.add_subcommand("null-check", "rejection frequency at the null");
        add_common(nc, true);
        nc->add_option("--case", f.case_name, "case-study name");
        nc->add_option("--n", f.n, "x sample size");
        nc->add_option("--m", f.m, "y sample size");
        nc->add_option("--nsim", f.nsim, "replications");
        nc->add_option("--grid", f.grid, "chi-square grid, RxC");
        nc->add_option("--scheme", f.scheme, "keep one chi-square variant: es or ep");
        nc->add_flag("--fr-asymptotic", f.fr_asymptotic,
                     "FR p-value from the normal approximation");

        CLI::App* sm = app.add_subcommand("summarize", "mean power and close-to-best tables");
        sm->add_option("file", f.paths, "case-by-method power table, tsv")->expected(0, 1);
        add_common(sm, false);

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            int code = app.exit(e, os, err);
            return code == 0 ? 0 : 2;
        }

        CLI::App* sub =
            app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        if (sub == nullptr && app.count("--config") == 0)
            throw input_error("a subcommand or --config is required");
        if (sub != nullptr) spec.subcommand = sub->get_name();

        if ((sub != nullptr && sub->count("--config")) || app.count("--config")) {
            for (const auto& [key, value] : read_config(f.config)) {
                if (key == "subcommand" && sub != nullptr) continue;  // invoked subcommand wins
                if (key == "out" && value.empty()) continue;
                apply_config_value(spec, key, value);
            }
        }
        if (!f.paths.empty()) spec.inputs = f.paths;
        auto has = [&](const std::string& name) {
            if (sub != nullptr) {
                const CLI::Option* so = sub->get_option_no_throw(name);
                if (so != nullptr && so->count() > 0) return true;
            }
            const CLI::Option* o = app.get_option_no_throw(name);
            return o != nullptr && o->count() > 0;
        };
        if (has("--methods")) spec.methods = f.methods;
        if (has("--B")) spec.B = f.B;
        if (has("--seed")) spec.seed = f.seed;
        if (has("--alpha")) spec.alpha = f.alpha;
        if (has("--grid")) parse_grid(f.grid, spec.grid_rows, spec.grid_cols);
        if (has("--scheme")) spec.scheme = f.scheme;
        if (has("--threads")) spec.threads = static_cast<std::size_t>(f.threads);
        if (has("--format")) spec.format = f.format;
        if (has("--case")) spec.case_name = f.case_name;
        if (has("--theta")) spec.theta = f.theta;
        if (has("--which")) spec.which = f.which;
        if (has("--size")) spec.size = static_cast<std::size_t>(f.size);
        if (has("--n")) spec.n = static_cast<std::size_t>(f.n);
        if (has("--m")) spec.m = static_cast<std::size_t>(f.m);
        if (has("--nsim")) spec.nsim = static_cast<std::size_t>(f.nsim);
        if (has("--mode")) spec.mode = f.mode;
        if (has("--combine")) spec.combine = f.combine;
        if (has("--fr-asymptotic")) spec.fr_asymptotic = f.fr_asymptotic;
        if (has("--out")) spec.out = f.out;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        return run(spec, os);
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const method_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace twosample
