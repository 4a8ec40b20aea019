#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "aimreg/numerics/derivatives.hpp"
#include "aimreg/numerics/lyapunov.hpp"
#include "aimreg/numerics/ode.hpp"
#include "aimreg/numerics/quadrature.hpp"

using namespace aimreg::numerics;

namespace {

Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// w1' = w2, w2' = -omega^2 w1
Field harmonic(double omega) {
  return [omega](double, const Vec& x) { return vec2(x(1), -omega * omega * x(0)); };
}

}  // namespace

TEST_CASE("rk4_step: exponential decay step matches e^{-h}") {
  Field decay = [](double, const Vec& x) { return Vec(-x); };
  const Vec out = rk4_step(decay, vec1(1.0), 0.0, 0.01);
  CHECK(std::abs(out(0) - std::exp(-0.01)) <= 1e-10);
}

TEST_CASE("rk4_step: harmonic oscillator returns after one period") {
  const double omega = 2.0;
  const double period = 2.0 * M_PI / omega;
  Vec x = vec2(1.0, 0.0);
  const auto traj = simulate(harmonic(omega), x, 0.0, period, 1e-3);
  const Vec back = traj.states().back();
  CHECK(std::abs(back(0) - 1.0) <= 1e-6);
  CHECK(std::abs(back(1) - 0.0) <= 1e-6);
}

TEST_CASE("rk4_step: observed convergence order is four") {
  Field decay = [](double, const Vec& x) { return Vec(-x); };
  auto run = [&](double h) {
    const auto traj = simulate(decay, vec1(1.0), 0.0, 1.0, h);
    return std::abs(traj.states().back()(0) - std::exp(-1.0));
  };
  const double ratio = run(0.1) / run(0.05);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("rk4_step: rejects bad step sizes and non-finite data") {
  Field decay = [](double, const Vec& x) { return Vec(-x); };
  CHECK_THROWS_AS(rk4_step(decay, vec1(1.0), 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rk4_step(decay, vec1(1.0), 0.0, -0.1), std::invalid_argument);

  CHECK_THROWS_AS(rk4_step(decay, vec1(std::nan("")), 0.0, 0.1), IntegrationError);

  Field bad = [](double, const Vec& x) { return Vec(x * std::nan("")); };
  try {
    rk4_step(bad, vec1(1.0), 3.25, 0.1);
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& err) {
    CHECK(err.t() == doctest::Approx(3.25));
    CHECK(std::string(err.what()).find("3.25") != std::string::npos);
  }
}

TEST_CASE("simulate: harmonic invariant drift stays below 1e-6 over 100 s") {
  const double omega = 2.0;
  const auto traj = simulate(harmonic(omega), vec2(1.0, 0.0), 0.0, 100.0, 1e-3);
  const double inv0 = omega * omega * 1.0;
  double worst = 0.0;
  for (const auto& x : traj.states()) {
    const double inv = omega * omega * x(0) * x(0) + x(1) * x(1);
    worst = std::max(worst, std::abs(inv - inv0) / inv0);
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("simulate: final partial step lands exactly on t1") {
  Field decay = [](double, const Vec& x) { return Vec(-x); };
  const auto traj = simulate(decay, vec1(1.0), 0.0, 0.25, 0.1);
  REQUIRE(traj.size() == 4);
  CHECK(traj.time(1) == doctest::Approx(0.1));
  CHECK(traj.time(2) == doctest::Approx(0.2));
  CHECK(traj.time(3) == 0.25);
  // shortened step keeps the solution close at coarse h (error ~ h^5 per step)
  CHECK(std::abs(traj.states().back()(0) - std::exp(-0.25)) <= 1e-6);
}

TEST_CASE("simulate: exact multiple of h does not add a spurious sample") {
  Field decay = [](double, const Vec& x) { return Vec(-x); };
  const auto traj = simulate(decay, vec1(1.0), 0.0, 1.0, 0.1);
  CHECK(traj.size() == 11);
  CHECK(traj.times().back() == 1.0);
}

TEST_CASE("simulate: observer records channels aligned with times") {
  Field decay = [](double, const Vec& x) { return Vec(-x); };
  const auto traj = simulate(decay, vec1(2.0), 0.0, 0.5, 0.1,
                             [](double t, const Vec& x, Trajectory& out) {
                               out.set_channel("doubled", 2.0 * x(0));
                               out.set_channel("time_copy", t);
                             });
  traj.check_aligned();
  REQUIRE(traj.channel("doubled").size() == traj.size());
  CHECK(traj.channel("doubled").front() == 4.0);
  CHECK(traj.channel("time_copy").back() == 0.5);
}

TEST_CASE("simulate: failure carries the partial trajectory") {
  Field explode = [](double t, const Vec& x) {
    if (t > 0.5) return Vec(x * std::nan(""));
    return Vec(-x);
  };
  try {
    simulate(explode, vec1(1.0), 0.0, 1.0, 0.1);
    FAIL("expected SimulationError");
  } catch (const SimulationError& err) {
    CHECK(err.partial().size() >= 5);
    CHECK(err.partial().times().back() <= 0.6 + 1e-12);
    CHECK(err.t() >= 0.5);
  }
}

TEST_CASE("Trajectory: enforces strictly increasing times and alignment") {
  Trajectory traj;
  traj.append(0.0, vec1(1.0));
  CHECK_THROWS_AS(traj.append(0.0, vec1(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(traj.append(-1.0, vec1(1.0)), std::invalid_argument);
  traj.set_channel("c", 1.0);
  CHECK_THROWS_AS(traj.set_channel("c", 2.0), std::logic_error);
  traj.append(1.0, vec1(0.5));
  CHECK_THROWS_AS(traj.check_aligned(), std::logic_error);
  traj.set_channel("c", 2.0);
  traj.check_aligned();
  CHECK_THROWS_AS(traj.append(2.0, vec2(0.0, 0.0)), std::invalid_argument);
}

TEST_CASE("directional_derivative: exact for linear maps") {
  Mat A(2, 2);
  A << 1.0, 2.0, -3.0, 0.5;
  VecMap lin = [&A](const Vec& x) { return Vec(A * x); };
  const Vec x = vec2(0.3, -0.7);
  const Vec dir = vec2(1.0, 2.0);
  const Vec dd = directional_derivative(lin, x, dir);
  CHECK((dd - A * dir).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("directional_derivative: quadratic scalar map") {
  VecMap sq = [](const Vec& x) { return Vec(x.array().square().matrix()); };
  const Vec dd = directional_derivative(sq, vec1(1.0), vec1(1.0));
  CHECK(std::abs(dd(0) - 2.0) <= 1e-9);
}

TEST_CASE("directional_derivative: cubic map matches analytic derivative") {
  VecMap cube = [](const Vec& x) { return Vec(x.array().cube().matrix()); };
  const Vec x = vec2(1.5, -0.5);
  const Vec dir = vec2(2.0, 1.0);
  const Vec dd = directional_derivative(cube, x, dir);
  // d/dh (x+h d)^3 at h=0 is 3 x^2 d, componentwise
  CHECK(std::abs(dd(0) - 3.0 * 1.5 * 1.5 * 2.0) <= 1e-5);
  CHECK(std::abs(dd(1) - 3.0 * 0.25 * 1.0) <= 1e-5);
}

TEST_CASE("directional_derivative: input validation") {
  VecMap id = [](const Vec& x) { return x; };
  CHECK_THROWS_AS(directional_derivative(id, vec1(1.0), vec2(1.0, 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(directional_derivative(id, vec1(1.0), vec1(1.0), 0.0),
                  std::invalid_argument);
}

TEST_CASE("integrate_adaptive: polynomial and trigonometric integrands") {
  const double cubic = integrate_adaptive(
      [](double t) { return t * t; }, 0.0, 1.0);
  CHECK(std::abs(cubic - 1.0 / 3.0) <= 1e-12);

  const double sine = integrate_adaptive(
      [](double t) { return std::sin(t); }, 0.0, M_PI);
  CHECK(std::abs(sine - 2.0) <= 1e-9);

  auto vecint = integrate_adaptive(
      [](double t) {
        Vec v(2);
        v << 1.0, 2.0 * t;
        return v;
      },
      0.0, 3.0);
  CHECK(std::abs(vecint(0) - 3.0) <= 1e-12);
  CHECK(std::abs(vecint(1) - 9.0) <= 1e-12);

  // orientation flip
  CHECK(integrate_adaptive([](double t) { return t; }, 1.0, 0.0) ==
        doctest::Approx(-0.5));
}

TEST_CASE("solve_lyapunov: one-dimensional closed form") {
  Mat F(1, 1);
  F << -3.0;
  const Mat P = solve_lyapunov(F);
  CHECK(P(0, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("solve_lyapunov: F = -I gives P = I/2") {
  const Mat P = solve_lyapunov(-Mat::Identity(2, 2));
  CHECK((P - 0.5 * Mat::Identity(2, 2)).norm() <= 1e-14);
}

TEST_CASE("solve_lyapunov: random Hurwitz property check") {
  std::mt19937_64 rng(20240817u);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> dims(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = dims(rng);
    Mat M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = coef(rng);
    const double shift = Eigen::EigenSolver<Mat>(M).eigenvalues().real().maxCoeff();
    const Mat F = M - (shift + 0.5) * Mat::Identity(n, n);

    const Mat P = solve_lyapunov(F);
    CHECK((P * F + F.transpose() * P + Mat::Identity(n, n)).norm() <= 1e-10);
    CHECK((P - P.transpose()).norm() <= 1e-12);
    CHECK(Eigen::SelfAdjointEigenSolver<Mat>(P).eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("solve_lyapunov: rejects non-Hurwitz and non-square input") {
  Mat F(1, 1);
  F << 0.25;
  try {
    solve_lyapunov(F);
    FAIL("expected domain_error");
  } catch (const std::domain_error& err) {
    CHECK(std::string(err.what()).find("0.25") != std::string::npos);
  }
  CHECK_THROWS_AS(solve_lyapunov(Mat::Zero(2, 3)), std::invalid_argument);
  // marginally stable (pure imaginary pair) must also be rejected
  Mat J(2, 2);
  J << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(solve_lyapunov(J), std::domain_error);
}
