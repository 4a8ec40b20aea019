#pragma once

#include <optional>

#include "aimreg/model/immersion.hpp"
#include "aimreg/model/plant.hpp"

namespace aimreg::model {

/// Built-in benchmark: a Van der Pol type oscillator in the zero dynamics
/// driven by a harmonic disturbance, with uncertain rho = (omega, sigma, mu):
///   w1' = w2,  w2' = -omega^2 w1
///   z1' = z2,  z2' = -sigma z1 - (z1^2 - 1) z2 - w1 + e
///   e'  = -mu z1 + u
/// Steady-state input c = mu z1. The internal model is the exact
/// output-injection immersion of c along the zero dynamics, with d = 4 and
/// q = 5 adapted parameters
///   theta = (1/(3 mu^2), sigma + omega^2, omega^2/(3 mu^2), omega^2,
///            sigma omega^2).
struct ExampleSystem {
  PlantModel plant;
  ImmersionData im;
  Vec rho0;
};

/// Default admissible box: omega in [0.5, 3], sigma in [0.2, 2], mu in [0.5, 2].
[[nodiscard]] ParamBox vdp_default_box();

/// Builds the benchmark at nominal parameters (omega, sigma, mu). mu must be
/// nonzero. When sat_level is not given, the clamp level is calibrated as
/// 2 x the largest |c| seen on a sampled zero-dynamics attractor (unit
/// exosystem amplitude) plus a 25% margin.
[[nodiscard]] ExampleSystem make_vdp_harmonic(
    double omega, double sigma, double mu,
    std::optional<double> sat_level = std::nullopt);

}  // namespace aimreg::model
