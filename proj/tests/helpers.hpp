#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "fockc/series.hpp"

namespace fockc::testing {

// Word from 1-based letters, as written g_1 g_2 ...
inline Word w(std::initializer_list<int> one_based) {
  std::vector<Letter> l;
  for (int i : one_based) l.push_back(static_cast<Letter>(i - 1));
  return Word(std::move(l));
}

inline NcSeries series(std::size_t n, std::size_t degree, std::vector<std::pair<Word, Complex>> terms) {
  return NcSeries::from_terms(n, degree, terms);
}

inline Point point(std::initializer_list<Complex> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex z : v) p[i++] = z;
  return p;
}

inline CMatrix matrix2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// (1/2 X1, 1/3 X2 + 1/5 X1 X1)
inline SymbolTuple triangular_example(std::size_t degree) {
  return SymbolTuple({series(2, degree, {{w({1}), 0.5}}),
                      series(2, degree, {{w({2}), 1.0 / 3.0}, {w({1, 1}), 0.2}})});
}

inline SymbolTuple half_scaling(std::size_t degree) {
  return SymbolTuple::linear(matrix2(0.5, 0, 0, 0.5), degree);
}

// n = 1 map z -> (a z + b)/(c z + d), written in row convention.
inline SymbolTuple lft1(Complex a, Complex b, Complex c, Complex d, std::size_t degree) {
  LinearFractional f;
  f.a = CMatrix::Constant(1, 1, a);
  f.b = Eigen::RowVectorXcd::Constant(1, b);
  f.c = CVector::Constant(1, c);
  f.d = d;
  return SymbolTuple::from_linear_fractional(f, degree);
}

}  // namespace fockc::testing
