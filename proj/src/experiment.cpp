#include "aimreg/cli/experiment.hpp"

#include <filesystem>
#include <fstream>

#include "aimreg/analysis/immersion_check.hpp"
#include "aimreg/analysis/omega_limit.hpp"
#include "aimreg/analysis/pe.hpp"
#include "aimreg/analysis/sigma_map.hpp"
#include "aimreg/cli/csv.hpp"
#include "aimreg/model/vdp_harmonic.hpp"
#include "aimreg/numerics/lyapunov.hpp"
#include "aimreg/regulator/closed_loop.hpp"

namespace aimreg::cli {

namespace {

namespace fs = std::filesystem;
using model::ExampleSystem;
using regulator::ClosedLoop;
using regulator::ClosedLoopState;

struct Prepared {
  ClosedLoop loop;
  ClosedLoopState init;
  ExperimentConfig resolved;
};

Prepared prepare(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ExperimentConfig res = cfg;

  ExampleSystem sys = model::make_vdp_harmonic(
      cfg.omega, cfg.sigma, cfg.mu,
      cfg.sat_level > 0 ? std::optional<double>(cfg.sat_level) : std::nullopt);
  res.sat_level = sys.im.sat_level;

  if (cfg.coupling_rho != 0.0) {
    const double c = cfg.coupling_rho;
    const int p = sys.plant.dims.p;
    sys.plant.s_rho = [c, p](const Vec&, const Vec&, const Vec&, double) {
      return Vec::Constant(p, c);
    };
  }
  if (cfg.coupling_w != 0.0) {
    const double c = cfg.coupling_w;
    const int s = sys.plant.dims.s;
    sys.plant.s_w = [c, s](const Vec&, const Vec&, const Vec&, double) {
      return Vec::Constant(s, c);
    };
  }

  if (res.roots.empty()) res.roots = regulator::default_roots(sys.plant.dims.d);
  if (res.ell <= 0)
    res.ell = regulator::default_ell(sys.im, model::vdp_default_box());
  const auto gains = regulator::make_gains(sys.plant.dims.d, res.roots,
                                           res.lambda, res.k, res.ell);

  ClosedLoopState init;
  init.rho = sys.rho0;
  init.w = cfg.w0;
  init.z = cfg.z0;
  init.e = cfg.e0;
  init.reg = regulator::RegulatorState::zero(sys.plant.dims);
  if (cfg.xi0.size() > 0) init.reg.xi = cfg.xi0;
  if (cfg.theta_hat0.size() > 0) init.reg.theta_hat = cfg.theta_hat0;
  if (cfg.X0.size() > 0) init.reg.X = cfg.X0;

  if (cfg.start_on_attractor) {
    // one long pre-roll: (w, z) forgets the transient, the filter state
    // contracts onto its steady graph over the trailing stretch
    const auto roll =
        analysis::sigma_rollout(sys.plant, sys.rho0, gains.F, gains.G, sys.im,
                                cfg.w0, cfg.z0, 230.0, 1e-3);
    const std::size_t last = roll.traj.size() - 1;
    init.w = roll.w_at(last);
    init.z = roll.z_at(last);
    init.reg.X = roll.X_at(last);
    init.reg.xi = sys.im.tau(sys.rho0, init.w, init.z);
    init.reg.theta_hat = sys.im.theta(sys.rho0);
    init.e = 0.0;
  }

  return Prepared{ClosedLoop{sys.plant, sys.im, gains}, init, res};
}

void emit_plot_script(const std::string& path, const model::SystemDims& dims) {
  std::ofstream out(path);
  const int e_col = 1 + dims.p + dims.s + dims.n + 1;
  const int th_first = e_col + dims.d + 1;
  out << "# gnuplot script for the run in this directory; never run by the\n"
         "# harness itself:  gnuplot -p plot.gp\n"
         "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set xlabel 't [s]'\n"
         "set ylabel 'tracking error'\n"
         "plot 'trajectory.csv' using 1:"
      << e_col << " with lines\n"
      << "pause -1 'error channel; <return> for the parameter estimates'\n"
      << "set ylabel 'parameter estimates'\n"
      << "plot for [c=" << th_first << ":" << th_first + dims.q - 1
      << "] 'trajectory.csv' using 1:c with lines\n"
      << "pause -1\n";
}

}  // namespace

std::vector<std::string> run_summary_columns() {
  return {"lambda",           "k",
          "omega",            "sigma",
          "mu",               "exit_code",
          "settled",          "settling_time",
          "sup_e_tail",       "theta_tilde_final",
          "max_state_norm",   "v_violations"};
}

Vec run_summary_row(double lambda, double k, const Vec& rho,
                    const RunSummary& s) {
  Vec row(12);
  row << lambda, k, rho(0), rho(1), rho(2), s.exit_code, s.settled ? 1.0 : 0.0,
      s.settling_time, s.sup_e_tail, s.theta_tilde_final, s.max_state_norm,
      s.v_violations;
  return row;
}

RunArtifacts run_experiment(const ExperimentConfig& cfg) {
  Prepared prep = prepare(cfg);
  const auto& dims = prep.loop.plant.dims;

  RunArtifacts art;
  art.resolved = prep.resolved;

  numerics::Trajectory traj;
  try {
    traj = numerics::simulate(regulator::closed_loop_field(prep.loop),
                              regulator::pack_state(prep.init), 0.0,
                              cfg.horizon, cfg.h);
  } catch (const numerics::SimulationError& err) {
    art.integration_failed = true;
    art.failure_reason = err.what();
    traj = err.partial();
  }

  const Mat P = numerics::solve_lyapunov(prep.loop.gains.F);
  if (traj.size() >= 2) {
    art.report = analysis::diagnose_run(prep.loop, traj, P, cfg.settle_eps,
                                        cfg.window_fraction);
  }

  if (cfg.extras && !art.integration_failed) {
    try {
      const auto roll = analysis::sigma_rollout(
          prep.loop.plant, prep.init.rho, prep.loop.gains.F, prep.loop.gains.G,
          prep.loop.im, cfg.w0, cfg.z0, 100.0, 1e-3);
      const auto gamma =
          analysis::regressor_series(roll, prep.init.rho, prep.loop.im, 50.0);
      art.report.pe_min_eig = analysis::pe_check(gamma, 1e-3);

      Vec seed(dims.s + dims.n);
      seed << cfg.w0, cfg.z0;
      const auto samples = analysis::sample_omega_limit(
          prep.loop.plant, prep.init.rho, {seed}, 200.0, 10.0, 1e-3, 1e6, 20);
      art.report.immersion = analysis::immersion_sweep(
          samples, prep.init.rho, prep.loop.im, prep.loop.plant);
    } catch (const std::exception& ex) {
      art.failure_reason = std::string("extras skipped: ") + ex.what();
    }
  }

  double max_norm = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    max_norm = std::max(max_norm, traj.state(i).lpNorm<Eigen::Infinity>());

  art.summary.settled = art.report.regulation.settled;
  art.summary.settling_time = art.report.regulation.settling_time;
  art.summary.sup_e_tail = art.report.regulation.sup_e_tail;
  art.summary.theta_tilde_initial = art.report.theta_tilde_initial;
  art.summary.theta_tilde_final = art.report.theta_tilde_final;
  art.summary.max_state_norm = max_norm;
  art.summary.pe_min_eig = art.report.pe_min_eig;
  art.summary.v_violations = art.report.v_violations_post;

  const bool regulated = art.report.regulation.settled &&
                         art.report.regulation.sup_e_tail <= cfg.settle_eps;
  const bool bounded = art.report.bounded(cfg.bound_factor);
  art.exit_code = art.integration_failed ? 2 : (regulated && bounded ? 0 : 1);
  art.summary.exit_code = art.exit_code;

  fs::create_directories(cfg.out_dir);
  art.trajectory_path = (fs::path(cfg.out_dir) / "trajectory.csv").string();
  art.summary_path = (fs::path(cfg.out_dir) / "summary.txt").string();
  art.plot_path = (fs::path(cfg.out_dir) / "plot.gp").string();

  write_trajectory_csv(art.trajectory_path,
                       regulator::channel_names(dims), traj, cfg.stride);
  emit_plot_script(art.plot_path, dims);

  std::ofstream out(art.summary_path);
  auto line = [&out](const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  line("exit_code", std::to_string(art.exit_code));
  line("integration_failed", art.integration_failed ? "true" : "false");
  if (!art.failure_reason.empty()) line("note", art.failure_reason);
  line("omega", format_full(cfg.omega));
  line("sigma", format_full(cfg.sigma));
  line("mu", format_full(cfg.mu));
  line("lambda", format_full(cfg.lambda));
  line("k", format_full(cfg.k));
  line("ell", format_full(prep.resolved.ell));
  line("sat_level", format_full(prep.resolved.sat_level));
  line("h", format_full(cfg.h));
  line("horizon", format_full(cfg.horizon));
  line("coupling_rho", format_full(cfg.coupling_rho));
  line("coupling_w", format_full(cfg.coupling_w));
  line("max_state_norm", format_full(max_norm));
  for (const auto& [key, value] : art.report.to_kv()) line(key, value);
  if (!out) throw std::runtime_error("cannot write '" + art.summary_path + "'");

  return art;
}

}  // namespace aimreg::cli
