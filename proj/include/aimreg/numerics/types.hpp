#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace aimreg::numerics {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

[[nodiscard]] inline bool all_finite(const Vec& v) { return v.allFinite(); }
[[nodiscard]] inline bool all_finite(const Mat& m) { return m.allFinite(); }

inline void require_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

inline void require_finite(const Mat& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

inline void require_size(const Vec& v, Eigen::Index n, const char* what) {
  if (v.size() != n) {
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(n) + ", got " +
                                std::to_string(v.size()));
  }
}

inline void require_shape(const Mat& m, Eigen::Index rows, Eigen::Index cols,
                          const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw std::invalid_argument(
        std::string(what) + ": expected " + std::to_string(rows) + "x" +
        std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
        std::to_string(m.cols()));
  }
}

}  // namespace aimreg::numerics
