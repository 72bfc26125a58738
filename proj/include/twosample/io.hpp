#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "twosample/binned.hpp"
#include "twosample/common.hpp"
#include "twosample/power.hpp"

namespace twosample {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

// Numeric CSV, one observation per row, one coordinate per column; a first
// line whose fields are not all numeric is treated as a header.
Sample read_csv_sample(const std::string& path);
void write_csv_sample(std::ostream& os, const Sample& s);

// Sparse grid counts: columns row_index, col_index, count_x, count_y; absent
// cells are zero. Cell centers sit at (row + 0.5, col + 0.5).
GridData read_grid_csv(const std::string& path);

// Case-by-method table, tab separated, first column the case name. Blank or
// missing trailing cells become undefined entries.
PowerTable read_power_table(const std::string& path);
void write_power_table(std::ostream& os, const PowerTable& t);

// Flat key=value lines; '#' starts a comment; blank lines ignored.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path);

}  // namespace twosample
