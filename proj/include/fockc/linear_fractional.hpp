#pragma once

#include <cstddef>

#include "fockc/common.hpp"

namespace fockc {

// Free linear-fractional map
//
//   phi(X) = (d + sum_i c_i X_i)^{-1} (b + [X_1, ..., X_n] A)
//
// with A an n x n matrix, b a row vector, c a column vector and d a scalar.
// The map is encoded projectively by the (n+1) x (n+1) matrix
//
//   M = [ A  c ]
//       [ b  d ]
//
// acting on the homogeneous row [X, 1]. Compositions of such maps are again
// linear-fractional, with phi o chi encoded by M_chi * M_phi. Automorphisms of
// the ball (and the classical one-variable Moebius maps) are of this form.
struct LinearFractional {
  CMatrix a;
  Eigen::RowVectorXcd b;
  CVector c;
  Complex d{1.0, 0.0};

  std::size_t n() const { return static_cast<std::size_t>(a.rows()); }

  CMatrix homogeneous() const;
  static LinearFractional from_homogeneous(const CMatrix& m);

  // Scalar evaluation at a point of C^n (row convention).
  Point operator()(const Point& z) const;

  // Throws PreconditionError unless |d| > ||c||, which keeps the
  // denominator invertible on the closed unit ball.
  void validate() const;
};

// (this o inner)
LinearFractional compose(const LinearFractional& outer, const LinearFractional& inner);

}  // namespace fockc
