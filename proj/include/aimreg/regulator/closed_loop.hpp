#pragma once

#include <string>
#include <vector>

#include "aimreg/model/plant.hpp"
#include "aimreg/numerics/ode.hpp"
#include "aimreg/regulator/controller.hpp"

namespace aimreg::regulator {

using model::PlantModel;

/// Plant + internal-model data + gains, coupled through u and e. Owns copies
/// of everything so concurrent simulations never share mutable state.
struct ClosedLoop {
  PlantModel plant;
  ImmersionData im;
  RegulatorGains gains;

  [[nodiscard]] const SystemDims& dims() const { return plant.dims; }
};

/// One point of the coupled state.
struct ClosedLoopState {
  Vec rho;  // p
  Vec w;    // s
  Vec z;    // n
  double e = 0.0;
  RegulatorState reg;

  void validate(const SystemDims& dims) const;
};

/// Flat-vector layout: [rho | w | z | e | xi | theta_hat | X row-major].
[[nodiscard]] int state_dim(const SystemDims& dims);
[[nodiscard]] Vec pack_state(const ClosedLoopState& s);
[[nodiscard]] ClosedLoopState unpack_state(const Vec& x, const SystemDims& dims);

/// Column names matching pack_state's layout, for CSV headers.
[[nodiscard]] std::vector<std::string> channel_names(const SystemDims& dims);

/// Derivative field of the coupled system, suitable for the fixed-step
/// integrator. The optional mutation is forwarded to the regulator.
[[nodiscard]] numerics::Field closed_loop_field(
    const ClosedLoop& loop, HMutation mutation = HMutation::none);

}  // namespace aimreg::regulator
