#include "sma/voigt.hpp"

namespace sma {

Mat6 unit_compliance_shape(double nu) {
  Mat6 c = Mat6::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c(i, j) = (i == j) ? 1.0 : -nu;
    c(i + 3, i + 3) = 2.0 * (1.0 + nu);
  }
  return c;
}

Mat6 compliance_matrix(double S, double nu) {
  if (S <= 0.0) throw std::invalid_argument("compliance_matrix: S must be positive");
  if (nu <= -1.0 || nu >= 0.5) throw std::invalid_argument("compliance_matrix: nu out of range");
  return S * unit_compliance_shape(nu);
}

Mat6 invert6(const Mat6& a) {
  Eigen::FullPivLU<Mat6> lu(a);
  if (!lu.isInvertible()) throw SingularMatrixError("invert6: matrix is numerically singular");
  return lu.inverse();
}

}  // namespace sma
