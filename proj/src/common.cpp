#include "twosample/common.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace twosample {

namespace {

std::atomic<std::uint64_t> g_distance_builds{0};

const std::map<std::string, Method>& method_table() {
    static const std::map<std::string, Method> table = {
        {"KS", Method::KS},   {"K", Method::K},     {"CvM", Method::CvM},
        {"AD", Method::AD},   {"NN1", Method::NN1}, {"NN5", Method::NN5},
        {"NN0", Method::NN0}, {"AZ", Method::AZ},   {"BF", Method::BF},
        {"BG", Method::BG},   {"FR", Method::FR},   {"ES", Method::ES},
        {"EP", Method::EP},
    };
    return table;
}

}  // namespace

void Sample::validate() const {
    if (d < 1) throw input_error("sample dimension must be at least 1");
    if (n < 1) throw input_error("sample must contain at least one observation");
    if (data.size() != n * d) throw input_error("sample storage size mismatch");
    for (double v : data)
        if (!std::isfinite(v)) throw input_error("sample contains a non-finite coordinate");
}

const std::string& method_name(Method m) {
    static const std::string names[] = {"KS", "K",  "CvM", "AD", "NN1", "NN5", "NN0",
                                        "AZ", "BF", "BG",  "FR", "ES",  "EP"};
    return names[static_cast<int>(m)];
}

Method parse_method(const std::string& name) {
    std::string key = name;
    // accept any capitalization of the published column names
    for (const auto& [k, v] : method_table()) {
        std::string a = k, b = key;
        std::transform(a.begin(), a.end(), a.begin(), ::tolower);
        std::transform(b.begin(), b.end(), b.begin(), ::tolower);
        if (a == b) return v;
    }
    throw input_error("unknown method: " + name);
}

std::vector<Method> parse_method_list(const std::string& csv) {
    std::vector<Method> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            Method m = parse_method(cur);
            if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
            cur.clear();
        }
    };
    for (char c : csv) {
        if (c == ',' || c == ' ')
            flush();
        else
            cur.push_back(c);
    }
    flush();
    if (out.empty()) throw input_error("empty method list");
    return out;
}

Tail method_tail(Method m) { return m == Method::FR ? Tail::lower : Tail::upper; }

bool method_uses_permutation(Method m) {
    switch (m) {
        case Method::NN0:
        case Method::ES:
        case Method::EP: return false;
        default: return true;
    }
}

PooledSample pool(const Sample& x, const Sample& y) {
    x.validate();
    y.validate();
    if (x.d != y.d) throw input_error("samples have different dimensions");
    PooledSample p;
    p.n = x.n;
    p.m = y.n;
    p.d = x.d;
    p.data.reserve((x.n + y.n) * x.d);
    p.data.insert(p.data.end(), x.data.begin(), x.data.end());
    p.data.insert(p.data.end(), y.data.begin(), y.data.end());
    p.labels.assign(x.n + y.n, 0);
    std::fill(p.labels.begin(), p.labels.begin() + x.n, std::uint8_t{1});
    return p;
}

Sample unpool(const PooledSample& p, bool first) {
    Sample s;
    s.d = p.d;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if ((p.labels[i] != 0) == first) {
            s.data.insert(s.data.end(), p.row(i), p.row(i) + p.d);
            ++s.n;
        }
    }
    return s;
}

DistanceMatrix distance_matrix(const PooledSample& p) {
    const std::size_t N = p.size();
    DistanceMatrix dm;
    dm.n = N;
    dm.values.assign(N * N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        const double* a = p.row(i);
        for (std::size_t j = i + 1; j < N; ++j) {
            const double* b = p.row(j);
            double s = 0.0;
            for (std::size_t k = 0; k < p.d; ++k) {
                double diff = a[k] - b[k];
                s += diff * diff;
            }
            double dist = std::sqrt(s);
            dm.values[i * N + j] = dist;
            dm.values[j * N + i] = dist;
        }
    }
    g_distance_builds.fetch_add(1, std::memory_order_relaxed);
    return dm;
}

std::uint64_t distance_matrix_builds() { return g_distance_builds.load(std::memory_order_relaxed); }

void reset_distance_matrix_builds() { g_distance_builds.store(0, std::memory_order_relaxed); }

}  // namespace twosample
