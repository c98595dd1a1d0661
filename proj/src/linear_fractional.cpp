#include "fockc/linear_fractional.hpp"

#include "fockc/series.hpp"

namespace fockc {

CMatrix LinearFractional::homogeneous() const {
  const auto k = static_cast<Eigen::Index>(n());
  CMatrix m(k + 1, k + 1);
  m.topLeftCorner(k, k) = a;
  m.topRightCorner(k, 1) = c;
  m.bottomLeftCorner(1, k) = b;
  m(k, k) = d;
  return m;
}

LinearFractional LinearFractional::from_homogeneous(const CMatrix& m) {
  const Eigen::Index k = m.rows() - 1;
  LinearFractional f;
  f.a = m.topLeftCorner(k, k);
  f.c = m.topRightCorner(k, 1);
  f.b = m.bottomLeftCorner(1, k);
  f.d = m(k, k);
  // Normalize so that d = 1 when possible; the map is projective.
  if (std::abs(f.d) > 0.0) {
    const Complex s = 1.0 / f.d;
    f.a *= s;
    f.b *= s;
    f.c *= s;
    f.d = 1.0;
  }
  return f;
}

Point LinearFractional::operator()(const Point& z) const {
  const Complex den = d + (c.transpose() * z)(0, 0);
  return (b.transpose() + a.transpose() * z) / den;
}

void LinearFractional::validate() const {
  if (a.rows() != a.cols() || b.size() != a.rows() || c.size() != a.rows()) {
    throw PreconditionError("linear-fractional map has inconsistent block sizes");
  }
  if (!(std::abs(d) > c.norm())) {
    throw PreconditionError("linear-fractional denominator vanishes on the closed ball");
  }
}

LinearFractional compose(const LinearFractional& outer, const LinearFractional& inner) {
  return LinearFractional::from_homogeneous(inner.homogeneous() * outer.homogeneous());
}

SymbolTuple SymbolTuple::from_linear_fractional(const LinearFractional& lft, std::size_t degree) {
  lft.validate();
  const std::size_t n = lft.n();
  NcSeries den = NcSeries::constant(n, degree, lft.d);
  for (std::size_t i = 0; i < n; ++i) {
    den += NcSeries::variable(n, degree, static_cast<Letter>(i), lft.c[static_cast<Eigen::Index>(i)]);
  }
  NcSeries inv = inverse(den);
  const bool poly = lft.c.isZero(0.0);
  std::vector<NcSeries> comps;
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    NcSeries num = NcSeries::constant(n, degree, lft.b[jj]);
    for (std::size_t i = 0; i < n; ++i) {
      num += NcSeries::variable(n, degree, static_cast<Letter>(i), lft.a(static_cast<Eigen::Index>(i), jj));
    }
    NcSeries comp = cauchy_product(inv, num);
    comp.set_exact(true);
    comp.set_polynomial(poly && degree >= 1);
    comps.push_back(std::move(comp));
  }
  return SymbolTuple(std::move(comps), lft);
}

}  // namespace fockc
