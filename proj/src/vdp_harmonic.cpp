#include "aimreg/model/vdp_harmonic.hpp"

#include <cmath>
#include <stdexcept>

#include "aimreg/numerics/ode.hpp"

namespace aimreg::model {

namespace {

using numerics::Field;
using numerics::simulate;

double calibrate_sat_level(double omega, double sigma, double mu) {
  // zero dynamics on (w1, w2, z1, z2) at the nominal parameters
  Field zd = [=](double, const Vec& x) {
    Vec dx(4);
    dx(0) = x(1);
    dx(1) = -omega * omega * x(0);
    dx(2) = x(3);
    dx(3) = -sigma * x(2) - (x(2) * x(2) - 1.0) * x(3) - x(0);
    return dx;
  };
  Vec x0(4);
  x0 << 1.0, 0.0, 0.5, 0.0;

  const double t_transient = 200.0;
  const double t_end = 300.0;
  double peak = 0.0;
  simulate(zd, x0, 0.0, t_end, 1e-3,
           [&](double t, const Vec& x, numerics::Trajectory&) {
             if (t >= t_transient) peak = std::max(peak, std::abs(mu * x(2)));
           });
  if (!(peak > 0.0)) {
    throw std::runtime_error("make_vdp_harmonic: clamp calibration found no output swing");
  }
  return 2.5 * peak;  // 2 x peak plus 25% margin
}

}  // namespace

ParamBox vdp_default_box() {
  Vec lo(3), hi(3);
  lo << 0.5, 0.2, 0.5;
  hi << 3.0, 2.0, 2.0;
  return ParamBox(lo, hi);
}

ExampleSystem make_vdp_harmonic(double omega, double sigma, double mu,
                                std::optional<double> sat_level) {
  if (!std::isfinite(omega) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw std::invalid_argument("make_vdp_harmonic: parameters must be finite");
  }
  if (mu == 0.0) {
    throw std::domain_error("make_vdp_harmonic: mu must be nonzero");
  }

  const SystemDims dims{/*n=*/2, /*p=*/3, /*s=*/2, /*d=*/4, /*q=*/5};

  PlantModel plant;
  plant.dims = dims;
  plant.box = vdp_default_box();
  plant.f0 = [](const Vec& rho, const Vec& w, const Vec& z) {
    Vec dz(2);
    dz(0) = z(1);
    dz(1) = -rho(1) * z(0) - (z(0) * z(0) - 1.0) * z(1) - w(0);
    return dz;
  };
  plant.f1 = [](const Vec&, const Vec&, const Vec&, double) {
    Vec g(2);
    g << 0.0, 1.0;
    return g;
  };
  plant.qfun = [](const Vec& rho, const Vec&, const Vec& z, double) {
    return -rho(2) * z(0);
  };
  plant.s = [](const Vec& rho, const Vec& w) {
    Vec dw(2);
    dw(0) = w(1);
    dw(1) = -rho(0) * rho(0) * w(0);
    return dw;
  };
  plant.validate();

  ImmersionData im;
  im.dims = dims;
  im.sat_level = sat_level ? *sat_level : calibrate_sat_level(omega, sigma, mu);
  im.sat_blend = std::max(1.0, 0.25 * im.sat_level);
  im.phi = [](double y) {
    Vec v = Vec::Zero(4);
    v(0) = y;
    return v;
  };
  im.omega = [](double y) {
    const double y3 = y * y * y;
    Mat m = Mat::Zero(4, 5);
    m(0, 0) = -y3;
    m(1, 1) = -y;
    m(2, 2) = -y3;
    m(2, 3) = y;
    m(3, 4) = -y;
    return m;
  };
  im.theta = [](const Vec& rho) {
    const double om2 = rho(0) * rho(0);
    const double sg = rho(1);
    const double mu2 = rho(2) * rho(2);
    Vec th(5);
    th << 1.0 / (3.0 * mu2), sg + om2, om2 / (3.0 * mu2), om2, sg * om2;
    return th;
  };
  im.tau = [](const Vec& rho, const Vec& w, const Vec& z) {
    const double om2 = rho(0) * rho(0);
    const double m = rho(2);
    // integral of (x^2/mu^2 - 1) from 0 to mu z1, in closed form
    const double hump = m * (z(0) * z(0) * z(0) / 3.0 - z(0));
    Vec t(4);
    t(0) = m * z(0);
    t(1) = m * z(1) + hump;
    t(2) = om2 * m * z(0) - m * w(0);
    t(3) = om2 * t(1) - m * w(1);
    return t;
  };
  im.c = [](const Vec& rho, const Vec&, const Vec& z) { return rho(2) * z(0); };
  im.validate();

  ExampleSystem out;
  out.plant = std::move(plant);
  out.im = std::move(im);
  out.rho0 = Vec(3);
  out.rho0 << omega, sigma, mu;
  return out;
}

}  // namespace aimreg::model
