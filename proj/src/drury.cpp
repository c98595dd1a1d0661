#include "fockc/drury.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "le_write.hpp"

namespace fockc {

namespace {

// Class id (position in enumerate_multidegrees) for every word index.
std::vector<std::size_t> class_ids(std::size_t n, std::size_t degree, const std::vector<Multidegree>& basis) {
  std::map<Multidegree, std::size_t> pos;
  for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = i;
  const auto& e = *enumeration_for(n, degree);
  std::vector<std::size_t> ids(e.total_dim());
  std::vector<Multidegree> md(e.total_dim());
  md[0] = Multidegree(n, 0);
  ids[0] = pos.at(md[0]);
  for (WordIndex i = 1; i < e.total_dim(); ++i) {
    const std::size_t len = e.length_of(i);
    const WordIndex code = i - e.offset(len);
    md[i] = md[e.offset(len - 1) + code / n];
    ++md[i][code % n];
    ids[i] = pos.at(md[i]);
  }
  return ids;
}

}  // namespace

unsigned total_degree(const Multidegree& k) {
  unsigned s = 0;
  for (unsigned v : k) s += v;
  return s;
}

Multidegree multidegree_of(const Word& w, std::size_t n) {
  Multidegree k(n, 0);
  for (Letter l : w.letters()) {
    if (l >= n) throw PreconditionError("letter outside the alphabet");
    ++k[l];
  }
  return k;
}

std::vector<Multidegree> enumerate_multidegrees(std::size_t n, std::size_t degree) {
  if (n == 0) throw PreconditionError("alphabet size must be at least 1");
  std::vector<Multidegree> out;
  for (unsigned total = 0; total <= degree; ++total) {
    std::vector<Multidegree> level;
    Multidegree k(n, 0);
    // Compositions of `total` into n parts.
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
      if (i + 1 == n) {
        k[i] = left;
        level.push_back(k);
        return;
      }
      for (unsigned v = 0; v <= left; ++v) {
        k[i] = v;
        self(self, i + 1, left - v);
      }
    };
    rec(rec, 0, total);
    std::sort(level.begin(), level.end(), [](const Multidegree& a, const Multidegree& b) {
      return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::uint64_t gamma_count(const Multidegree& k) {
  if (total_degree(k) > 20) throw PreconditionError("multidegree total above 20 overflows the count");
  std::uint64_t result = 1;
  unsigned seen = 0;
  for (unsigned v : k) {
    // result *= binom(seen + v, v), exact at every step.
    for (unsigned j = 1; j <= v; ++j) {
      result = result * (seen + j) / j;
    }
    seen += v;
  }
  return result;
}

FockVector sym_basis_vector(const Multidegree& k, std::size_t degree) {
  const std::size_t n = k.size();
  if (total_degree(k) > degree) throw PreconditionError("multidegree exceeds the degree");
  FockVector v(n, degree);
  const auto& e = v.enumeration();
  const double g = static_cast<double>(gamma_count(k));
  const std::size_t len = total_degree(k);
  for (WordIndex i = e.offset(len); i < e.offset(len + 1); ++i) {
    if (multidegree_of(e.word(i), n) == k) v.coeffs()[static_cast<Eigen::Index>(i)] = 1.0 / g;
  }
  return v;
}

FockVector symmetrize(const FockVector& v) {
  const auto basis = enumerate_multidegrees(v.n(), v.degree());
  const auto ids = class_ids(v.n(), v.degree(), basis);
  std::vector<Complex> sums(basis.size(), Complex{});
  std::vector<double> counts(basis.size(), 0.0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    sums[ids[i]] += v.coeffs()[static_cast<Eigen::Index>(i)];
    counts[ids[i]] += 1.0;
  }
  FockVector out(v.n(), v.degree());
  for (std::size_t i = 0; i < ids.size(); ++i) out.coeffs()[static_cast<Eigen::Index>(i)] = sums[ids[i]] / counts[ids[i]];
  return out;
}

namespace {

// Columns are the orthonormal vectors u_k.
SparseCMatrix sym_frame(std::size_t n, std::size_t degree, const std::vector<Multidegree>& basis) {
  const auto ids = class_ids(n, degree, basis);
  std::vector<Eigen::Triplet<Complex, std::int64_t>> trips;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double g = static_cast<double>(gamma_count(basis[ids[i]]));
    trips.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(ids[i]), Complex(1.0 / std::sqrt(g)));
  }
  SparseCMatrix q(static_cast<std::int64_t>(ids.size()), static_cast<std::int64_t>(basis.size()));
  q.setFromTriplets(trips.begin(), trips.end());
  return q;
}

}  // namespace

SymOpMatrix compress_composition(const SymbolTuple& psi, std::size_t degree, const BuildOptions& opts) {
  SymOpMatrix out;
  out.n = psi.n();
  out.degree = degree;
  out.basis = enumerate_multidegrees(psi.n(), degree);
  const CompOpMatrix full = build_matrix(psi, degree, opts);
  const SparseCMatrix q = sym_frame(psi.n(), degree, out.basis);
  const CMatrix image = CMatrix(full.matrix * q);  // C u_k
  out.matrix = CMatrix(q.adjoint()) * image;
  const CMatrix outside = image - q * out.matrix;
  for (Eigen::Index k = 0; k < outside.cols(); ++k) out.invariance_defect = std::max(out.invariance_defect, outside.col(k).norm());
  return out;
}

CVector sym_coordinates(const FockVector& f, const std::vector<Multidegree>& basis) {
  const SparseCMatrix q = sym_frame(f.n(), f.degree(), basis);
  return q.adjoint() * f.coeffs();
}

FockVector from_sym_coordinates(const CVector& c, const std::vector<Multidegree>& basis, std::size_t n,
                                std::size_t degree) {
  const SparseCMatrix q = sym_frame(n, degree, basis);
  return FockVector(n, degree, q * c);
}

double functional_identity_defect(const SymbolTuple& psi, const NcSeries& f, const std::vector<Point>& samples,
                                  std::size_t degree) {
  if (f.n() != psi.n()) throw PreconditionError("alphabet mismatch");
  if (f.max_degree() > degree || !f.polynomial()) throw PreconditionError("f must be a polynomial of degree <= D");
  const FockVector fv = FockVector::from_series(f.truncated(degree));
  if ((fv - symmetrize(fv)).norm() > 1e-12) throw PreconditionError("f is not symmetric");
  const SymOpMatrix s = compress_composition(psi, degree);
  const FockVector image = from_sym_coordinates(s.matrix * sym_coordinates(fv, s.basis), s.basis, psi.n(), degree);
  double worst = 0.0;
  for (const Point& lambda : samples) {
    const Complex lhs = inner_product(image, kernel_vector(lambda, degree).vector);
    const Complex rhs = eval_scalar(f, psi.eval_scalar(lambda));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

void write_sym_matrix_dump(std::ostream& os, const SymOpMatrix& m) {
  os.write("SYMFMAT1", 8);
  detail::put_u32(os, static_cast<std::uint32_t>(m.n));
  detail::put_u32(os, static_cast<std::uint32_t>(m.degree));
  detail::put_u32(os, static_cast<std::uint32_t>(m.basis.size()));
  for (const auto& k : m.basis) {
    for (unsigned v : k) detail::put_u32(os, v);
  }
  for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.matrix.cols(); ++j) {
      detail::put_f64(os, m.matrix(i, j).real());
      detail::put_f64(os, m.matrix(i, j).imag());
    }
  }
}

}  // namespace fockc
