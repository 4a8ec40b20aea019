#pragma once

#include <stdexcept>
#include <string>

namespace aimreg::model {

/// Dimensions of one regulation problem instance.
///   n: plant zero-dynamics state, p: uncertain parameter vector,
///   s: exosystem state, d: internal-model order, q: adapted parameters.
struct SystemDims {
  int n = 0;
  int p = 0;
  int s = 0;
  int d = 0;
  int q = 0;

  void validate() const {
    auto bad = [](const char* name, int v) {
      throw std::invalid_argument(std::string("SystemDims: ") + name +
                                  " must be >= 1, got " + std::to_string(v));
    };
    if (n < 1) bad("n", n);
    if (p < 1) bad("p", p);
    if (s < 1) bad("s", s);
    if (d < 1) bad("d", d);
    if (q < 1) bad("q", q);
  }
};

}  // namespace aimreg::model
