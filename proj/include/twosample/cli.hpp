#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace twosample {

// Fully resolved invocation; every field round-trips through the key=value
// config form emitted by serialize_spec.
struct RunSpec {
    std::string subcommand;
    std::vector<std::string> inputs;
    std::string methods;  // comma list; empty = every method applicable
    std::uint64_t B = 1000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    std::size_t grid_rows = 5, grid_cols = 5;
    std::string scheme;  // "", "es", "ep"
    std::size_t threads = 1;
    std::string format = "text";  // tsv | json | text
    std::string case_name;
    double theta = std::numeric_limits<double>::quiet_NaN();  // NaN = case default
    std::string which = "y";
    std::size_t size = 100;
    std::size_t n = 100, m = 100;
    std::size_t nsim = 200;
    std::string mode = "auto";  // auto | mc | exhaustive
    bool combine = false;
    bool fr_asymptotic = false;
    std::string out;  // empty = stdout
};

// Config-file form, one key=value per line, fixed key order.
std::string serialize_spec(const RunSpec& spec);

// Applies a single config entry; unknown keys and bad values raise input
// errors.
void apply_config_value(RunSpec& spec, const std::string& key, const std::string& value);

// Executes a resolved spec, writing the artifact to os (or spec.out when set).
// Returns the process exit status: 0 ok, 3 when any requested method failed.
int run(const RunSpec& spec, std::ostream& os);

// Full front end: argv -> RunSpec (config file first, flags win) -> run.
// Returns 0 ok, 2 on input/usage errors, 3 on method errors.
int run_cli(int argc, const char* const* argv, std::ostream& os, std::ostream& err);

}  // namespace twosample
