#include "fockc/fock.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace fockc {

FockVector::FockVector(std::size_t n, std::size_t degree)
    : n_(n),
      degree_(degree),
      enum_(enumeration_for(n, degree)),
      coeffs_(CVector::Zero(static_cast<Eigen::Index>(enum_->total_dim()))) {}

FockVector::FockVector(std::size_t n, std::size_t degree, CVector coeffs)
    : n_(n), degree_(degree), enum_(enumeration_for(n, degree)), coeffs_(std::move(coeffs)) {
  if (static_cast<WordIndex>(coeffs_.size()) != enum_->total_dim()) {
    throw PreconditionError("Fock vector has the wrong dimension");
  }
}

FockVector FockVector::vacuum(std::size_t n, std::size_t degree) {
  FockVector v(n, degree);
  v.coeffs_[0] = 1.0;
  return v;
}

FockVector FockVector::basis(std::size_t n, std::size_t degree, const Word& w) {
  FockVector v(n, degree);
  v.coeffs_[static_cast<Eigen::Index>(v.enum_->index(w))] = 1.0;
  return v;
}

FockVector FockVector::from_series(const NcSeries& f) { return FockVector(f.n(), f.degree(), f.to_dense()); }

Complex FockVector::coefficient(const Word& w) const {
  if (w.length() > degree_) return {};
  return coeffs_[static_cast<Eigen::Index>(enum_->index(w))];
}

NcSeries FockVector::to_series() const {
  NcSeries s = NcSeries::from_dense(n_, degree_, coeffs_);
  s.set_polynomial(true);
  return s;
}

FockVector& FockVector::operator+=(const FockVector& o) {
  if (o.n_ != n_ || o.degree_ != degree_) throw PreconditionError("mismatched Fock vectors");
  coeffs_ += o.coeffs_;
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  if (o.n_ != n_ || o.degree_ != degree_) throw PreconditionError("mismatched Fock vectors");
  coeffs_ -= o.coeffs_;
  return *this;
}

FockVector& FockVector::operator*=(Complex s) {
  coeffs_ *= s;
  return *this;
}

Complex inner_product(const FockVector& u, const FockVector& v) {
  if (u.n() != v.n()) throw PreconditionError("mismatched alphabet sizes");
  const Eigen::Index m = std::min(u.coeffs().size(), v.coeffs().size());
  // Eigen's dot conjugates its first argument.
  return v.coeffs().head(m).dot(u.coeffs().head(m));
}

KernelVector kernel_vector(const Point& mu, std::size_t degree) {
  const double r2 = mu.squaredNorm();
  if (!(r2 < 1.0)) throw PreconditionError("kernel vector needs |mu| < 1");
  const std::size_t n = static_cast<std::size_t>(mu.size());
  FockVector v(n, degree);
  const auto& e = v.enumeration();
  CVector& c = v.coeffs();
  c[0] = 1.0;
  // The child w g_i of the word at `parent` sits at n * code(w) + i in the next length.
  std::vector<Complex> bar(n);
  for (std::size_t i = 0; i < n; ++i) bar[i] = std::conj(mu[static_cast<Eigen::Index>(i)]);
  for (std::size_t len = 1; len <= degree; ++len) {
    const Complex* parent = c.data() + e.offset(len - 1);
    Complex* child = c.data() + e.offset(len);
    const WordIndex count = e.count_of_length(len - 1);
    for (WordIndex p = 0; p < count; ++p) {
      const double pr = parent[p].real(), pi = parent[p].imag();
      for (std::size_t i = 0; i < n; ++i) {
        child[p * n + i] = Complex(pr * bar[i].real() - pi * bar[i].imag(), pr * bar[i].imag() + pi * bar[i].real());
      }
    }
  }
  const double tail = std::pow(r2, static_cast<double>(degree + 1)) / (1.0 - r2);
  return {std::move(v), tail};
}

FockVector tail_projection(const FockVector& v, std::size_t k) {
  if (k > v.degree() + 1) throw PreconditionError("projection cutoff beyond degree + 1");
  FockVector out = v;
  const auto head = static_cast<Eigen::Index>(v.enumeration().offset(k));
  out.coeffs().head(head).setZero();
  return out;
}

std::vector<TruncatedShift> shift_matrices(std::size_t n, std::size_t degree, ShiftSide side) {
  if (degree < 1) throw PreconditionError("shift matrices need degree >= 1");
  const auto& e = *enumeration_for(n, degree);
  const auto dim = static_cast<std::int64_t>(e.total_dim());
  std::vector<TruncatedShift> out;
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<Eigen::Triplet<Complex, std::int64_t>> trips;
    const WordIndex gi = 1 + g;
    for (WordIndex w = 0; w < e.offset(degree); ++w) {
      const std::size_t len = e.length_of(w);
      const WordIndex row = side == ShiftSide::left ? e.concat_index(gi, 1, w, len) : e.concat_index(w, len, gi, 1);
      trips.emplace_back(static_cast<std::int64_t>(row), static_cast<std::int64_t>(w), Complex{1.0, 0.0});
    }
    SparseCMatrix m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    out.push_back({side, g, std::move(m)});
  }
  return out;
}

std::string dump_dense(const TruncatedShift& s) {
  const CMatrix d(s.matrix);
  std::ostringstream os;
  os << d.rows() << ' ' << d.cols() << '\n' << std::setprecision(17);
  for (Eigen::Index j = 0; j < d.cols(); ++j) {
    for (Eigen::Index i = 0; i < d.rows(); ++i) os << d(i, j).real() << ' ' << d(i, j).imag() << '\n';
  }
  return os.str();
}

}  // namespace fockc
