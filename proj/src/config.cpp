#include "aimreg/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "aimreg/regulator/gains.hpp"

namespace aimreg::cli {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string all = "configuration invalid:";
  for (const auto& s : issues) all += "\n  - " + s;
  return all;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.z0 = Vec(2);
  cfg.z0 << 0.5, 0.3;
  cfg.w0 = Vec(2);
  cfg.w0 << 1.0, 0.0;
  cfg.z_box_lo = Vec::Constant(2, -3.0);
  cfg.z_box_hi = Vec::Constant(2, 3.0);
  return cfg;
}

namespace {

/// Collects parse errors while assigning typed values out of the key=value
/// stream; validation runs after the whole file is consumed.
class Reader {
 public:
  explicit Reader(ExperimentConfig& cfg) : cfg_(cfg) {}

  std::vector<std::string> issues;
  std::set<std::string> seen;

  void assign(const std::string& section, const std::string& key,
              const std::string& value, int line) {
    const std::string path = section + "." + key;
    seen.insert(path);
    if (path == "system.omega") return num(value, line, cfg_.omega);
    if (path == "system.sigma") return num(value, line, cfg_.sigma);
    if (path == "system.mu") return num(value, line, cfg_.mu);
    if (path == "system.sat_level") return num(value, line, cfg_.sat_level);
    if (path == "initial.z") return vec(value, line, cfg_.z0);
    if (path == "initial.w") return vec(value, line, cfg_.w0);
    if (path == "initial.e") return num(value, line, cfg_.e0);
    if (path == "initial.theta_hat") return vec(value, line, cfg_.theta_hat0);
    if (path == "initial.xi") return vec(value, line, cfg_.xi0);
    if (path == "initial.X") {
      Vec flat;
      vec(value, line, flat);
      flat_X_ = flat;
      return;
    }
    if (path == "initial.start_on_attractor")
      return boolean(value, line, cfg_.start_on_attractor);
    if (path == "initial.z_box_lo") return vec(value, line, cfg_.z_box_lo);
    if (path == "initial.z_box_hi") return vec(value, line, cfg_.z_box_hi);
    if (path == "initial.e_max") return num(value, line, cfg_.e_max);
    if (path == "gains.roots") return list(value, line, cfg_.roots);
    if (path == "gains.lambda") return num(value, line, cfg_.lambda);
    if (path == "gains.k") return num(value, line, cfg_.k);
    if (path == "gains.ell") return num(value, line, cfg_.ell);
    if (path == "integrator.h") return num(value, line, cfg_.h);
    if (path == "integrator.horizon") return num(value, line, cfg_.horizon);
    if (path == "metrics.settle_eps") return num(value, line, cfg_.settle_eps);
    if (path == "metrics.window_fraction")
      return num(value, line, cfg_.window_fraction);
    if (path == "metrics.bound_factor")
      return num(value, line, cfg_.bound_factor);
    if (path == "metrics.extras") return boolean(value, line, cfg_.extras);
    if (path == "sweep.lambda_grid") return list(value, line, cfg_.lambda_grid);
    if (path == "sweep.k_grid") return list(value, line, cfg_.k_grid);
    if (path == "sweep.corners") return boolean(value, line, cfg_.sweep_corners);
    if (path == "coupling.rho") return num(value, line, cfg_.coupling_rho);
    if (path == "coupling.w") return num(value, line, cfg_.coupling_w);
    if (path == "output.dir") {
      cfg_.out_dir = value;
      return;
    }
    if (path == "output.stride") {
      double v = 0;
      num(value, line, v);
      cfg_.stride = static_cast<int>(v);
      if (v != cfg_.stride)
        issues.push_back("line " + std::to_string(line) +
                         ": output.stride must be an integer");
      return;
    }
    issues.push_back("line " + std::to_string(line) + ": unknown key '" +
                     path + "'");
  }

  void finish() {
    if (flat_X_.size() > 0) {
      // row-major (d-1) x q for the worked example
      if (flat_X_.size() != 15) {
        issues.push_back("initial.X needs 15 values (3x5, row-major), got " +
                         std::to_string(flat_X_.size()));
      } else {
        cfg_.X0 = Mat(3, 5);
        for (Eigen::Index i = 0; i < 3; ++i)
          for (Eigen::Index j = 0; j < 5; ++j) cfg_.X0(i, j) = flat_X_(5 * i + j);
      }
    }
  }

 private:
  void num(const std::string& v, int line, double& out) {
    std::istringstream ss(v);
    double x = 0;
    if (!(ss >> x) || !(ss >> std::ws).eof() || !std::isfinite(x)) {
      issues.push_back("line " + std::to_string(line) +
                       ": expected one finite number, got '" + v + "'");
      return;
    }
    out = x;
  }
  void list(const std::string& v, int line, std::vector<double>& out) {
    std::istringstream ss(v);
    std::vector<double> xs;
    double x = 0;
    while (ss >> x) {
      if (!std::isfinite(x)) {
        issues.push_back("line " + std::to_string(line) +
                         ": non-finite number in list");
        return;
      }
      xs.push_back(x);
    }
    if (!(ss >> std::ws).eof() || xs.empty()) {
      issues.push_back("line " + std::to_string(line) +
                       ": expected space-separated numbers, got '" + v + "'");
      return;
    }
    out = xs;
  }
  void vec(const std::string& v, int line, Vec& out) {
    std::vector<double> xs;
    list(v, line, xs);
    if (xs.empty()) return;
    out = Vec(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
      out(static_cast<Eigen::Index>(i)) = xs[i];
  }
  void boolean(const std::string& v, int line, bool& out) {
    if (v == "true" || v == "1") {
      out = true;
    } else if (v == "false" || v == "0") {
      out = false;
    } else {
      issues.push_back("line " + std::to_string(line) +
                       ": expected true/false, got '" + v + "'");
    }
  }

  ExperimentConfig& cfg_;
  Vec flat_X_;
};

void validate_into(const ExperimentConfig& cfg,
                   const std::set<std::string>& seen,
                   std::vector<std::string>& issues) {
  auto bad = [&issues](const std::string& msg) { issues.push_back(msg); };

  if (!(cfg.omega > 0)) bad("system.omega must be positive");
  if (cfg.mu == 0.0 || !std::isfinite(cfg.mu)) bad("system.mu must be nonzero");
  if (!std::isfinite(cfg.sigma)) bad("system.sigma must be finite");
  if (cfg.sat_level < 0) bad("system.sat_level must be >= 0 (0 = auto)");

  if (cfg.z0.size() != 2) bad("initial.z needs 2 components");
  if (cfg.w0.size() != 2) bad("initial.w needs 2 components");
  if (cfg.z_box_lo.size() != 2 || cfg.z_box_hi.size() != 2) {
    bad("initial.z_box_lo/z_box_hi need 2 components");
  } else if (cfg.z0.size() == 2) {
    for (int i = 0; i < 2; ++i) {
      if (!(cfg.z_box_lo(i) <= cfg.z_box_hi(i)))
        bad("initial.z_box is empty in component " + std::to_string(i + 1));
      if (cfg.z0(i) < cfg.z_box_lo(i) || cfg.z0(i) > cfg.z_box_hi(i))
        bad("initial.z outside the configured z box");
    }
  }
  if (!(cfg.e_max > 0)) bad("initial.e_max must be positive");
  if (std::abs(cfg.e0) > cfg.e_max)
    bad("initial.e exceeds the configured bound e_max");
  if (cfg.theta_hat0.size() != 0 && cfg.theta_hat0.size() != 5)
    bad("initial.theta_hat needs 5 components");
  if (cfg.xi0.size() != 0 && cfg.xi0.size() != 4)
    bad("initial.xi needs 4 components");
  if (cfg.start_on_attractor) {
    for (const char* key : {"initial.theta_hat", "initial.xi", "initial.X"}) {
      if (seen.count(key))
        bad(std::string(key) +
            " conflicts with start_on_attractor (seeds are derived)");
    }
    if (seen.count("initial.e") && cfg.e0 != 0.0)
      bad("initial.e must be 0 with start_on_attractor");
  }

  if (!cfg.roots.empty()) {
    if (cfg.roots.size() != 3) {
      bad("gains.roots needs 3 values");
    } else {
      try {
        static_cast<void>(regulator::poly_to_b(cfg.roots));
      } catch (const std::exception& ex) {
        bad(std::string("gains.roots invalid: ") + ex.what());
      }
    }
  }
  if (!(cfg.lambda > 0)) bad("gains.lambda must be positive");
  if (cfg.k < 0) bad("gains.k must be >= 0");
  if (cfg.ell < 0) bad("gains.ell must be >= 0 (0 = auto)");

  if (!(cfg.h > 0)) bad("integrator.h must be positive");
  if (!(cfg.horizon >= 10 * cfg.h))
    bad("integrator.horizon must cover at least 10 steps");

  if (!(cfg.settle_eps > 0)) bad("metrics.settle_eps must be positive");
  if (!(cfg.window_fraction > 0 && cfg.window_fraction < 1))
    bad("metrics.window_fraction must lie in (0, 1)");
  if (!(cfg.bound_factor >= 1)) bad("metrics.bound_factor must be >= 1");

  for (double l : cfg.lambda_grid)
    if (!(l > 0)) bad("sweep.lambda_grid entries must be positive");
  for (double kk : cfg.k_grid)
    if (kk < 0) bad("sweep.k_grid entries must be >= 0");

  if (!std::isfinite(cfg.coupling_rho) || !std::isfinite(cfg.coupling_w))
    bad("coupling magnitudes must be finite");
  if (cfg.out_dir.empty()) bad("output.dir must be nonempty");
  if (cfg.stride < 1) bad("output.stride must be >= 1");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg = default_config();
  Reader reader(cfg);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        reader.issues.push_back("line " + std::to_string(lineno) +
                                ": malformed section header '" + line + "'");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      reader.issues.push_back("line " + std::to_string(lineno) +
                              ": expected key = value, got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      reader.issues.push_back("line " + std::to_string(lineno) +
                              ": key '" + key + "' outside any [section]");
      continue;
    }
    if (key.empty() || value.empty()) {
      reader.issues.push_back("line " + std::to_string(lineno) +
                              ": empty key or value");
      continue;
    }
    reader.assign(section, key, value, lineno);
  }
  reader.finish();
  validate_into(cfg, reader.seen, reader.issues);
  if (!reader.issues.empty()) throw ConfigError(std::move(reader.issues));
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  return parse_config(in);
}

void validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> issues;
  validate_into(cfg, {}, issues);
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

}  // namespace aimreg::cli
