#pragma once

// Evaluation of a symbol at points of C^n, in double or quad precision.
// Symbols carrying a linear-fractional closed form are evaluated from it;
// others from their stored coefficients.

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "fockc/series.hpp"

namespace fockc {

using Quad = boost::multiprecision::cpp_bin_float_quad;
using QComplex = boost::multiprecision::cpp_complex_quad;
using QPoint = std::vector<QComplex>;
using QMatrix = std::vector<std::vector<QComplex>>;

QComplex to_quad(Complex z);
Complex to_double(const QComplex& z);
QPoint to_quad(const Point& p);
Point to_double(const QPoint& p);
Quad squared_norm(const QPoint& p);

QMatrix to_quad(const CMatrix& m);
QMatrix multiply(const QMatrix& a, const QMatrix& b);

class ScalarMap {
 public:
  explicit ScalarMap(const SymbolTuple& phi);

  std::size_t n() const noexcept { return n_; }
  bool has_closed_form() const noexcept { return closed_.has_value(); }
  const std::optional<LinearFractional>& closed_form() const noexcept { return closed_; }

  Point operator()(const Point& z) const;
  QPoint operator()(const QPoint& z) const;

  // The k-th iterate applied to z, by repeated squaring of the projective
  // matrix when a closed form exists and by plain iteration otherwise.
  QPoint iterate(const QPoint& z, unsigned long long k) const;

 private:
  std::size_t n_;
  std::optional<LinearFractional> closed_;
  std::optional<SymbolTuple> series_;
  QMatrix homogeneous_;
};

// Applies the projective matrix m (row convention) to z.
QPoint apply_homogeneous(const QMatrix& m, const QPoint& z);

}  // namespace fockc
