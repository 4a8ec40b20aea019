#pragma once

#include <string>
#include <vector>

#include "aimreg/numerics/ode.hpp"
#include "aimreg/numerics/types.hpp"

namespace aimreg::cli {

using numerics::Vec;

/// Writes t plus the named channels, one row per retained step, every value
/// at 17 significant digits so doubles round-trip exactly.
void write_trajectory_csv(const std::string& path,
                          const std::vector<std::string>& names,
                          const numerics::Trajectory& traj, int stride = 1);

/// Generic rectangular CSV writer for summary tables.
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& names,
                     const std::vector<Vec>& rows);

struct CsvData {
  std::vector<std::string> names;  // header, including the leading "t"
  std::vector<Vec> rows;           // full rows, t included
};

[[nodiscard]] CsvData read_csv(const std::string& path);

/// One double at full round-trip precision.
[[nodiscard]] std::string format_full(double x);

}  // namespace aimreg::cli
