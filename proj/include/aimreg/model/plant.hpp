#pragma once

#include <functional>

#include "aimreg/model/dims.hpp"
#include "aimreg/model/param_box.hpp"
#include "aimreg/numerics/types.hpp"

namespace aimreg::model {

using numerics::Vec;

/// Plant in regulated-error normal form with exosystem:
///   rho' = s_rho(rho, w, z, e) e            (zero when s_rho is unset)
///   w'   = s(rho, w) + s_w(rho, w, z, e) e  (s_w likewise optional)
///   z'   = f0(rho, w, z) + f1(rho, w, z, e) e
///   e'   = qfun(rho, w, z, e) + u
/// The steady-state input that keeps e identically zero on the exosystem
/// attractor is c = -qfun(rho, w, z, 0); c lives with the immersion data.
struct PlantModel {
  SystemDims dims;
  ParamBox box;

  std::function<Vec(const Vec& rho, const Vec& w, const Vec& z)> f0;
  std::function<Vec(const Vec& rho, const Vec& w, const Vec& z, double e)> f1;
  std::function<double(const Vec& rho, const Vec& w, const Vec& z, double e)> qfun;
  std::function<Vec(const Vec& rho, const Vec& w)> s;

  /// Optional error-feedback couplings of the generalized exosystem; a
  /// default-constructed (empty) function means identically zero.
  std::function<Vec(const Vec& rho, const Vec& w, const Vec& z, double e)> s_rho;
  std::function<Vec(const Vec& rho, const Vec& w, const Vec& z, double e)> s_w;

  [[nodiscard]] Vec s_rho_at(const Vec& rho, const Vec& w, const Vec& z,
                             double e) const {
    return s_rho ? s_rho(rho, w, z, e) : Vec::Zero(dims.p);
  }
  [[nodiscard]] Vec s_w_at(const Vec& rho, const Vec& w, const Vec& z,
                           double e) const {
    return s_w ? s_w(rho, w, z, e) : Vec::Zero(dims.s);
  }

  void validate() const {
    dims.validate();
    if (box.dim() != dims.p) {
      throw std::invalid_argument("PlantModel: box dimension != dims.p");
    }
    if (!f0 || !f1 || !qfun || !s) {
      throw std::invalid_argument("PlantModel: f0, f1, qfun, s must all be set");
    }
  }
};

}  // namespace aimreg::model
