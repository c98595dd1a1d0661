#include "fockc/scalar_map.hpp"

namespace fockc {

QComplex to_quad(Complex z) { return QComplex(z.real(), z.imag()); }

Complex to_double(const QComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

QPoint to_quad(const Point& p) {
  QPoint q;
  q.reserve(static_cast<std::size_t>(p.size()));
  for (Eigen::Index i = 0; i < p.size(); ++i) q.push_back(to_quad(p[i]));
  return q;
}

Point to_double(const QPoint& p) {
  Point out(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<Eigen::Index>(i)] = to_double(p[i]);
  return out;
}

Quad squared_norm(const QPoint& p) {
  Quad s = 0;
  for (const auto& z : p) s += z.real() * z.real() + z.imag() * z.imag();
  return s;
}

QMatrix to_quad(const CMatrix& m) {
  QMatrix q(static_cast<std::size_t>(m.rows()), std::vector<QComplex>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) q[i][j] = to_quad(m(i, j));
  }
  return q;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  const std::size_t r = a.size(), k = b.size(), c = b.front().size();
  QMatrix out(r, std::vector<QComplex>(c, QComplex(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

QPoint apply_homogeneous(const QMatrix& m, const QPoint& z) {
  const std::size_t n = z.size();
  QPoint row(n + 1, QComplex(0));
  for (std::size_t j = 0; j <= n; ++j) {
    QComplex s = m[n][j];
    for (std::size_t i = 0; i < n; ++i) s += z[i] * m[i][j];
    row[j] = s;
  }
  QPoint out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = row[j] / row[n];
  return out;
}

ScalarMap::ScalarMap(const SymbolTuple& phi) : n_(phi.n()), closed_(phi.closed_form()) {
  if (closed_) {
    homogeneous_ = to_quad(closed_->homogeneous());
  } else {
    series_ = phi;
  }
}

Point ScalarMap::operator()(const Point& z) const {
  if (closed_) return (*closed_)(z);
  return series_->eval_scalar(z);
}

QPoint ScalarMap::operator()(const QPoint& z) const {
  if (closed_) return apply_homogeneous(homogeneous_, z);
  // Horner-free evaluation through prefix monomials, one series at a time.
  QPoint out(n_, QComplex(0));
  for (std::size_t c = 0; c < n_; ++c) {
    const NcSeries& f = (*series_)[c];
    const auto& e = f.enumeration();
    const WordIndex top = f.is_zero() ? 1 : f.terms().back().index + 1;
    std::vector<QComplex> mono(top);
    mono[0] = QComplex(1);
    for (WordIndex i = 1; i < top; ++i) {
      const std::size_t len = e.length_of(i);
      const WordIndex code = i - e.offset(len);
      const WordIndex parent = e.offset(len - 1) + code / n_;
      mono[i] = mono[parent] * z[code % n_];
    }
    QComplex s(0);
    for (const Term& t : f.terms()) s += to_quad(t.coeff) * mono[t.index];
    out[c] = s;
  }
  return out;
}

QPoint ScalarMap::iterate(const QPoint& z, unsigned long long k) const {
  if (!closed_) {
    QPoint w = z;
    for (unsigned long long i = 0; i < k; ++i) w = (*this)(w);
    return w;
  }
  // phi^[k] is encoded by M^k.
  QMatrix result;
  QMatrix base = homogeneous_;
  auto normalize = [](QMatrix& m) {
    Quad big = 0;
    for (auto& row : m) {
      for (auto& v : row) big = std::max(big, Quad(abs(v)));
    }
    if (big > 0) {
      for (auto& row : m) {
        for (auto& v : row) v /= big;
      }
    }
  };
  while (k > 0) {
    if (k & 1ULL) {
      result = result.empty() ? base : multiply(result, base);
      normalize(result);
    }
    k >>= 1;
    if (k > 0) {
      base = multiply(base, base);
      normalize(base);
    }
  }
  if (result.empty()) return z;
  return apply_homogeneous(result, z);
}

}  // namespace fockc
