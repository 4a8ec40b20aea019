#include "aimreg/analysis/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "aimreg/analysis/lyapunov_series.hpp"
#include "aimreg/analysis/transforms.hpp"
#include "aimreg/regulator/dead_zone.hpp"

namespace aimreg::analysis {

RegulationMetrics regulation_metrics(const std::vector<double>& t,
                                     const std::vector<double>& e, double eps,
                                     double window_fraction) {
  if (t.size() != e.size() || t.empty()) {
    throw std::invalid_argument("regulation_metrics: mismatched/empty series");
  }
  RegulationMetrics m;
  m.eps = eps;
  m.window_fraction = window_fraction;

  const double t_end = t.back();
  const double window_from = t_end - window_fraction * (t_end - t.front());
  m.sup_e_tail = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= window_from) m.sup_e_tail = std::max(m.sup_e_tail, std::abs(e[i]));
  }

  // earliest time from which |e| never leaves the eps tube again
  m.settled = false;
  m.settling_time = t_end;
  for (std::size_t i = t.size(); i-- > 0;) {
    if (std::abs(e[i]) > eps) break;
    m.settling_time = t[i];
    m.settled = true;
  }
  return m;
}

EnvelopeFit fit_exponential_envelope(const std::vector<double>& t,
                                     const std::vector<double>& v,
                                     double floor) {
  if (t.size() != v.size() || t.size() < 2) {
    throw std::invalid_argument("fit_exponential_envelope: need >= 2 samples");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(v[i] > floor)) continue;
    const double y = std::log(v[i]);
    sx += t[i];
    sy += y;
    sxx += t[i] * t[i];
    sxy += t[i] * y;
    ++count;
  }
  if (count < 2) {
    throw std::invalid_argument(
        "fit_exponential_envelope: fewer than 2 samples above the floor");
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) {
    throw std::invalid_argument("fit_exponential_envelope: degenerate times");
  }
  const double slope = (count * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / count;
  return {std::exp(intercept), -slope};
}

bool DiagnosticsReport::bounded(double factor) const {
  for (const auto& g : bounds) {
    if (g.run_max > factor * std::max(g.early_max, 1e-12)) return false;
  }
  return true;
}

std::vector<std::pair<std::string, std::string>> DiagnosticsReport::to_kv()
    const {
  auto fmt = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("sup_e_tail", fmt(regulation.sup_e_tail));
  kv.emplace_back("settling_time", fmt(regulation.settling_time));
  kv.emplace_back("settled", regulation.settled ? "true" : "false");
  for (const auto& g : bounds) {
    kv.emplace_back("early_max_" + g.name, fmt(g.early_max));
    kv.emplace_back("run_max_" + g.name, fmt(g.run_max));
  }
  kv.emplace_back("v_first", fmt(v_first));
  kv.emplace_back("v_final", fmt(v_final));
  kv.emplace_back("v_violations_post", std::to_string(v_violations_post));
  kv.emplace_back("dead_zone_sign_violations",
                  std::to_string(dead_zone_sign_violations));
  kv.emplace_back("theta_tilde_initial", fmt(theta_tilde_initial));
  kv.emplace_back("theta_tilde_final", fmt(theta_tilde_final));
  kv.emplace_back("pe_min_eig", fmt(pe_min_eig));
  kv.emplace_back("immersion_samples", std::to_string(immersion.count));
  kv.emplace_back("immersion_max_r_dyn", fmt(immersion.max_r_dyn));
  kv.emplace_back("immersion_max_r_out", fmt(immersion.max_r_out));
  return kv;
}

DiagnosticsReport diagnose_run(const ClosedLoop& loop,
                               const numerics::Trajectory& traj, const Mat& P,
                               double settle_eps, double window_fraction,
                               double early_fraction, double post_fraction,
                               double v_step_tol) {
  if (traj.empty()) throw std::invalid_argument("diagnose_run: empty trajectory");
  const auto& dims = loop.plant.dims;

  DiagnosticsReport rep;
  const double t0 = traj.time(0);
  const double t_end = traj.time(traj.size() - 1);
  const double early_until = t0 + early_fraction * (t_end - t0);
  const double post_from = t_end - post_fraction * (t_end - t0);

  std::vector<double> ts, es, V;
  ts.reserve(traj.size());
  es.reserve(traj.size());
  V.reserve(traj.size());

  struct Group {
    std::string name;
    double early = 0.0;
    double run = 0.0;
  };
  std::vector<Group> groups = {{"w", 0, 0},  {"z", 0, 0},         {"e", 0, 0},
                               {"xi", 0, 0}, {"theta_hat", 0, 0}, {"X", 0, 0}};

  int post_violations = 0;
  double v_prev = 0.0;
  bool have_prev = false;

  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.time(i);
    const auto s = regulator::unpack_state(traj.state(i), dims);
    ts.push_back(t);
    es.push_back(s.e);

    const double norms[] = {s.w.norm(),      s.z.norm(),
                            std::abs(s.e),   s.reg.xi.norm(),
                            s.reg.theta_hat.norm(), s.reg.X.norm()};
    for (std::size_t g = 0; g < groups.size(); ++g) {
      groups[g].run = std::max(groups[g].run, norms[g]);
      if (t <= early_until) groups[g].early = std::max(groups[g].early, norms[g]);
    }

    const EtaTheta et = to_eta_theta(s.reg, s.rho, loop.im);
    const Vec tau = loop.im.tau(s.rho, s.w, s.z);
    const double v =
        lyapunov_value(to_chi_zeta(et, tau, loop.gains.b), P);
    V.push_back(v);
    if (have_prev && t >= post_from && v - v_prev > v_step_tol) ++post_violations;
    v_prev = v;
    have_prev = true;

    if (et.theta_tilde.dot(regulator::dzv(s.reg.theta_hat, loop.gains.ell)) <
        0.0) {
      ++rep.dead_zone_sign_violations;
    }

    if (i == 0) rep.theta_tilde_initial = et.theta_tilde.norm();
    if (i + 1 == traj.size()) rep.theta_tilde_final = et.theta_tilde.norm();
  }

  rep.regulation = regulation_metrics(ts, es, settle_eps, window_fraction);
  for (const auto& g : groups) rep.bounds.push_back({g.name, g.early, g.run});
  rep.v_first = V.front();
  rep.v_final = V.back();
  rep.v_violations_post = post_violations;
  return rep;
}

}  // namespace aimreg::analysis
