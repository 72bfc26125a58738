#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twosample {

// Bad user input: files, dimensions, parameter ranges. CLI exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A method cannot run on otherwise valid data. CLI exit code 3.
struct method_error : std::runtime_error {
    explicit method_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Row-major matrix of observations: n rows, d columns.
struct Sample {
    std::vector<double> data;
    std::size_t n = 0;
    std::size_t d = 0;

    double at(std::size_t i, std::size_t j) const { return data[i * d + j]; }
    double& at(std::size_t i, std::size_t j) { return data[i * d + j]; }
    const double* row(std::size_t i) const { return data.data() + i * d; }
    void validate() const;
};

// Combined two-sample data with origin labels. labels[i] != 0 means point i
// came from the first sample.
struct PooledSample {
    std::vector<double> data;
    std::vector<std::uint8_t> labels;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t d = 0;

    std::size_t size() const { return n + m; }
    double at(std::size_t i, std::size_t j) const { return data[i * d + j]; }
    const double* row(std::size_t i) const { return data.data() + i * d; }
};

// Dense symmetric pairwise Euclidean distances, zero diagonal.
struct DistanceMatrix {
    std::vector<double> values;
    std::size_t n = 0;

    double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

enum class Method { KS, K, CvM, AD, NN1, NN5, NN0, AZ, BF, BG, FR, ES, EP };

enum class PValueMethod { permutation, asymptotic };

enum class Tail { upper, lower };

struct TestResult {
    Method method;
    double statistic = 0.0;
    double p_value = 1.0;
    PValueMethod p_method = PValueMethod::permutation;
};

const std::string& method_name(Method m);
Method parse_method(const std::string& name);
std::vector<Method> parse_method_list(const std::string& csv);
Tail method_tail(Method m);
bool method_uses_permutation(Method m);

PooledSample pool(const Sample& x, const Sample& y);
Sample unpool(const PooledSample& p, bool first);

DistanceMatrix distance_matrix(const PooledSample& p);

// Number of distance matrices built since the last reset; lets callers assert
// the matrix is constructed once per dataset.
std::uint64_t distance_matrix_builds();
void reset_distance_matrix_builds();

}  // namespace twosample
