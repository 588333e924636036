#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace lincat {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical thresholds: `eq` for equality of matrices, `integer` for
/// rounding multiplicities.
struct Tolerance {
  double eq = 1e-8;
  double integer = 1e-6;
};

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Modified Gram-Schmidt on the columns of `m` (twice, for stability),
/// dropping columns whose residual norm is below `drop`.
inline Matrix orthonormal_columns(const Matrix& m, double drop = 1e-9) {
  std::vector<Vector> basis;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Vector v = m.col(c);
    const double scale = std::max(1.0, v.norm());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    const double n = v.norm();
    if (n > drop * scale) basis.push_back(v / n);
  }
  Matrix out(m.rows(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = basis[i];
  return out;
}

/// Ratio of extreme singular values; infinity for a singular or empty-rank map.
inline double condition_number(const Matrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double lo = s(s.size() - 1);
  return lo > 0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

/// Identity of size n, or the empty matrix when n is zero.
inline Matrix identity(std::size_t n) {
  return Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

}  // namespace lincat
