#include "aimreg/cli/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aimreg::cli {

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_rows(std::ofstream& out, const std::vector<std::string>& names,
                const std::vector<Vec>& rows, const std::string& path) {
  for (std::size_t i = 0; i < names.size(); ++i)
    out << (i ? "," : "") << names[i];
  out << "\n";
  for (const auto& row : rows) {
    if (static_cast<std::size_t>(row.size()) != names.size())
      throw std::invalid_argument("csv: row width does not match header");
    for (Eigen::Index j = 0; j < row.size(); ++j)
      out << (j ? "," : "") << format_full(row(j));
    out << "\n";
  }
  if (!out) throw std::runtime_error("csv: write failed for '" + path + "'");
}

}  // namespace

void write_trajectory_csv(const std::string& path,
                          const std::vector<std::string>& names,
                          const numerics::Trajectory& traj, int stride) {
  if (stride < 1) throw std::invalid_argument("csv: stride must be >= 1");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot open '" + path + "'");

  out << "t";
  for (const auto& n : names) out << "," << n;
  out << "\n";
  for (std::size_t i = 0; i < traj.size();
       i += static_cast<std::size_t>(stride)) {
    const Vec& x = traj.state(i);
    if (static_cast<std::size_t>(x.size()) != names.size())
      throw std::invalid_argument("csv: state width does not match names");
    out << format_full(traj.time(i));
    for (Eigen::Index j = 0; j < x.size(); ++j)
      out << "," << format_full(x(j));
    out << "\n";
  }
  // the final step always lands in the file, whatever the stride
  if (traj.size() > 0 && (traj.size() - 1) % static_cast<std::size_t>(stride)) {
    const std::size_t i = traj.size() - 1;
    const Vec& x = traj.state(i);
    out << format_full(traj.time(i));
    for (Eigen::Index j = 0; j < x.size(); ++j)
      out << "," << format_full(x(j));
    out << "\n";
  }
  if (!out) throw std::runtime_error("csv: write failed for '" + path + "'");
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& names,
                     const std::vector<Vec>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot open '" + path + "'");
  write_rows(out, names, rows, path);
}

CsvData read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");

  CsvData data;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty file");
  {
    std::istringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) data.names.push_back(cell);
  }
  if (data.names.empty()) throw std::runtime_error("csv: empty header");

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Vec row(static_cast<Eigen::Index>(data.names.size()));
    const char* p = line.c_str();
    for (std::size_t j = 0; j < data.names.size(); ++j) {
      char* end = nullptr;
      row(static_cast<Eigen::Index>(j)) = std::strtod(p, &end);
      if (end == p)
        throw std::runtime_error("csv: malformed number in '" + path + "'");
      p = end;
      if (j + 1 < data.names.size()) {
        if (*p != ',')
          throw std::runtime_error("csv: missing separator in '" + path + "'");
        ++p;
      }
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace aimreg::cli
