#include "twosample/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <system_error>

namespace twosample {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

bool try_parse_double(const std::string& field, double& out) {
    std::string t = trim(field);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

bool try_parse_u64(const std::string& field, std::uint64_t& out) {
    std::string t = trim(field);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

[[noreturn]] void fail_at(const std::string& path, std::size_t line_no, const std::string& msg) {
    throw input_error(path + ":" + std::to_string(line_no) + ": " + msg);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return in;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Sample read_csv_sample(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    Sample s;
    std::string line;
    std::size_t line_no = 0;
    bool saw_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split(line, ',');
        std::vector<double> row(fields.size());
        bool all_numeric = true;
        for (std::size_t j = 0; j < fields.size(); ++j)
            all_numeric = all_numeric && try_parse_double(fields[j], row[j]);
        if (!all_numeric) {
            if (!saw_data) continue;  // header line
            fail_at(path, line_no, "non-numeric field");
        }
        if (saw_data && row.size() != s.d)
            fail_at(path, line_no, "expected " + std::to_string(s.d) + " columns, found " +
                                       std::to_string(row.size()));
        if (!saw_data) {
            s.d = row.size();
            saw_data = true;
        }
        s.data.insert(s.data.end(), row.begin(), row.end());
        ++s.n;
    }
    if (!saw_data) throw input_error(path + ": no numeric rows");
    for (double v : s.data)
        if (!std::isfinite(v)) throw input_error(path + ": non-finite value");
    return s;
}

void write_csv_sample(std::ostream& os, const Sample& s) {
    for (std::size_t j = 0; j < s.d; ++j) os << (j ? "," : "") << "c" << (j + 1);
    os << "\n";
    for (std::size_t i = 0; i < s.n; ++i) {
        for (std::size_t j = 0; j < s.d; ++j) {
            if (j) os << ",";
            os << format_double(s.at(i, j));
        }
        os << "\n";
    }
}

GridData read_grid_csv(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    struct Entry {
        std::uint64_t row, col, cx, cy;
    };
    std::vector<Entry> entries;
    std::string line;
    std::size_t line_no = 0;
    bool saw_data = false;
    std::uint64_t max_row = 0, max_col = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split(line, ',');
        if (fields.size() != 4)
            fail_at(path, line_no, "expected 4 columns (row_index, col_index, count_x, count_y)");
        Entry e{};
        bool ok = try_parse_u64(fields[0], e.row) && try_parse_u64(fields[1], e.col) &&
                  try_parse_u64(fields[2], e.cx) && try_parse_u64(fields[3], e.cy);
        if (!ok) {
            if (!saw_data) continue;  // header line
            fail_at(path, line_no, "fields must be nonnegative integers");
        }
        saw_data = true;
        max_row = std::max(max_row, e.row);
        max_col = std::max(max_col, e.col);
        entries.push_back(e);
    }
    if (!saw_data) throw input_error(path + ": no count rows");
    GridData g;
    g.rows = static_cast<std::size_t>(max_row) + 1;
    g.cols = static_cast<std::size_t>(max_col) + 1;
    g.counts_x.assign(g.rows * g.cols, 0);
    g.counts_y.assign(g.rows * g.cols, 0);
    std::vector<std::uint8_t> seen(g.rows * g.cols, 0);
    for (const Entry& e : entries) {
        std::size_t c = g.cell(static_cast<std::size_t>(e.row), static_cast<std::size_t>(e.col));
        if (seen[c])
            throw input_error(path + ": duplicate cell (" + std::to_string(e.row) + ", " +
                              std::to_string(e.col) + ")");
        seen[c] = 1;
        g.counts_x[c] = static_cast<std::uint32_t>(e.cx);
        g.counts_y[c] = static_cast<std::uint32_t>(e.cy);
    }
    for (std::size_t i = 0; i <= g.rows; ++i) g.edges_row.push_back(static_cast<double>(i));
    for (std::size_t j = 0; j <= g.cols; ++j) g.edges_col.push_back(static_cast<double>(j));
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < g.cols; ++j) {
            g.centers.push_back(static_cast<double>(i) + 0.5);
            g.centers.push_back(static_cast<double>(j) + 0.5);
        }
    return g;
}

PowerTable read_power_table(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    PowerTable t;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split(line, '\t');
        if (!saw_header) {
            if (fields.size() < 2) fail_at(path, line_no, "header needs at least one method");
            for (std::size_t j = 1; j < fields.size(); ++j) {
                std::string name = trim(fields[j]);
                if (name.empty()) fail_at(path, line_no, "blank method name");
                t.methods.push_back(name);
            }
            saw_header = true;
            continue;
        }
        std::string name = trim(fields[0]);
        if (name.empty()) fail_at(path, line_no, "blank case name");
        t.cases.push_back(name);
        for (std::size_t j = 0; j < t.methods.size(); ++j) {
            if (j + 1 >= fields.size() || trim(fields[j + 1]).empty()) {
                t.values.push_back(kNaN);  // short or blank cell: undefined
                continue;
            }
            double v;
            if (!try_parse_double(fields[j + 1], v))
                fail_at(path, line_no, "bad numeric cell '" + fields[j + 1] + "'");
            t.values.push_back(v);
        }
        if (fields.size() > t.methods.size() + 1)
            fail_at(path, line_no, "more cells than header columns");
    }
    if (!saw_header) throw input_error(path + ": missing header");
    if (t.cases.empty()) throw input_error(path + ": no data rows");
    return t;
}

void write_power_table(std::ostream& os, const PowerTable& t) {
    os << "case";
    for (const std::string& m : t.methods) os << "\t" << m;
    os << "\n";
    for (std::size_t i = 0; i < t.cases.size(); ++i) {
        os << t.cases[i];
        for (std::size_t j = 0; j < t.methods.size(); ++j) {
            os << "\t";
            if (t.defined(i, j)) os << format_double(t.value(i, j));
        }
        os << "\n";
    }
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) fail_at(path, line_no, "expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) fail_at(path, line_no, "blank key");
        out.emplace_back(key, value);
    }
    return out;
}

}  // namespace twosample
