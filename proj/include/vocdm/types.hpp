#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace vocdm {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline bool has_nonfinite(const CMat& m) { return !m.allFinite(); }
inline bool has_nonfinite(const CVec& v) { return !v.allFinite(); }

inline std::string shape_str(const CMat& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace vocdm
