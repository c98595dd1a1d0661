#include "fockc/compop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "fockc/parallel.hpp"
#include "le_write.hpp"

namespace fockc {

namespace {

// Largest shift degree whose basis stays within max_dim.
std::size_t shift_degree_within(std::size_t n, std::size_t degree, std::size_t max_dim) {
  std::size_t d = 1;
  while (d < degree && graded_dimension(n, d + 1) <= max_dim) ++d;
  return d;
}

bool is_linear_symbol(const SymbolTuple& phi) {
  if (!phi.constant().isZero(0.0)) return false;
  for (const auto& c : phi.components()) {
    if (!c.polynomial() || c.max_degree() > 1) return false;
  }
  return true;
}

std::vector<unsigned> first_primes(std::size_t count) {
  std::vector<unsigned> out;
  for (unsigned p = 2; out.size() < count; ++p) {
    bool prime = true;
    for (unsigned q : out) {
      if (q * q > p) break;
      if (p % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(p);
  }
  return out;
}

double radical_inverse(std::size_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

double norm_ratio(const SymbolTuple& phi, const Point& z) {
  const Point w = phi.closed_form() ? (*phi.closed_form())(z) : phi.eval_scalar(z);
  const double den = 1.0 - w.squaredNorm();
  if (!(den > 0.0)) return 0.0;
  return std::sqrt((1.0 - z.squaredNorm()) / den);
}

}  // namespace

CompOpMatrix build_matrix(const SymbolTuple& phi, std::size_t degree, const BuildOptions& opts) {
  const std::size_t n = phi.n();
  if (!(phi.constant().norm() < 1.0)) throw PreconditionError("|phi(0)| must be < 1");
  if (degree > phi.degree()) throw PreconditionError("matrix degree exceeds the symbol degree");
  if (!opts.skip_self_map_check && degree >= 1) {
    const std::size_t sd = shift_degree_within(n, degree, opts.self_map_check_dim);
    const double row = row_norm_at_shifts(phi.truncated(sd), 1.0 - 1e-9, sd);
    if (row > 1.0 + 1e-9) {
      throw PreconditionError("symbol fails the self-map plausibility check (row norm " + std::to_string(row) + ")");
    }
  }
  const auto& e = *enumeration_for(n, degree);
  const WordIndex dim = e.total_dim();

  std::vector<NcSeries> comps;
  for (const auto& c : phi.components()) comps.push_back(c.truncated(degree));

  std::vector<NcSeries> cols;
  cols.reserve(dim);
  cols.push_back(NcSeries::constant(n, degree, 1.0));
  for (std::size_t k = 1; k <= degree; ++k) {
    const WordIndex lo = e.offset(k);
    const WordIndex hi = e.offset(k + 1);
    cols.resize(hi, NcSeries(n, degree));
    parallel_for(lo, hi, [&](std::size_t w) {
      const WordIndex code = w - lo;
      const WordIndex parent = e.offset(k - 1) + code / n;
      cols[w] = cauchy_product(cols[parent], comps[code % n]);
    });
  }

  std::vector<Eigen::Triplet<Complex, std::int64_t>> trips;
  for (WordIndex w = 0; w < dim; ++w) {
    for (const Term& t : cols[w].terms()) {
      trips.emplace_back(static_cast<std::int64_t>(t.index), static_cast<std::int64_t>(w), t.coeff);
    }
  }
  CompOpMatrix out{n, degree, SparseCMatrix(static_cast<std::int64_t>(dim), static_cast<std::int64_t>(dim)),
                   {}, false, false, phi};
  out.matrix.setFromTriplets(trips.begin(), trips.end());
  out.matrix.makeCompressed();
  for (std::size_t k = 0; k <= degree + 1; ++k) out.grading.push_back(e.offset(k));
  bool coeffs_exact = true;
  for (const auto& c : comps) coeffs_exact = coeffs_exact && c.exact() && c.tail_bound() == 0.0;
  out.entries_exact = coeffs_exact;
  out.exact = coeffs_exact && phi.constant().isZero(0.0);
  return out;
}

namespace {

// (M_f^* h)_v = sum_u conj(f_u) h_{uv}, the adjoint of left multiplication
// by f, restricted to |v| <= out_len. h is supported on lengths <= in_len.
struct AdjointTerm {
  std::size_t length;
  WordIndex code;  // index within its length
  Complex conj;
};

// out[v] = sum_t conj(f_t) h[t v] for |v| <= out_len, with h supported on
// lengths <= in_len. Writes the head of `out`.
void left_mult_adjoint(const std::vector<AdjointTerm>& terms, const CVector& h, std::size_t in_len,
                       std::size_t out_len, const GradedEnumeration& e, CVector& out) {
  const auto* in = reinterpret_cast<const double*>(h.data());
  for (std::size_t lv = 0; lv <= out_len; ++lv) {
    const WordIndex count = e.count_of_length(lv);
    auto* b = reinterpret_cast<double*>(out.data() + e.offset(lv));
    bool written = false;
    for (const AdjointTerm& t : terms) {
      if (t.length + lv > in_len) break;
      const double* x = in + 2 * (e.offset(t.length + lv) + t.code * e.power(lv));
      // Written out by parts: std::complex multiplication goes through the
      // NaN-recovering library call, which dominates this loop.
      const double cr = t.conj.real(), ci = t.conj.imag();
      if (written) {
        for (WordIndex k = 0; k < count; ++k) {
          b[2 * k] += cr * x[2 * k] - ci * x[2 * k + 1];
          b[2 * k + 1] += cr * x[2 * k + 1] + ci * x[2 * k];
        }
      } else {
        for (WordIndex k = 0; k < count; ++k) {
          b[2 * k] = cr * x[2 * k] - ci * x[2 * k + 1];
          b[2 * k + 1] = cr * x[2 * k + 1] + ci * x[2 * k];
        }
        written = true;
      }
    }
    if (!written) std::fill(b, b + 2 * count, 0.0);
  }
}

struct AdjointWalk {
  const GradedEnumeration& e;
  std::vector<std::vector<AdjointTerm>> terms;  // per component
  std::vector<std::size_t> drops;               // min degree per component
  std::vector<CVector> scratch;                 // one buffer per depth
  CVector& out;

  // <g, phi_w> = <M_{phi_w}^* g, 1> and M_{phi_{w g_i}}^* = M_{phi_i}^* M_{phi_w}^*.
  // When phi_i(0) = 0 every step shortens the support.
  void visit(const CVector& h, std::size_t support, WordIndex w, std::size_t len) {
    out[static_cast<Eigen::Index>(w)] = h[0];
    if (len == e.degree()) return;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (drops[i] > support) continue;
      const std::size_t next = support - drops[i];
      const WordIndex child = e.concat_index(w, len, 1 + i, 1);
      if (len + 1 == e.degree()) {
        // Leaf: only the constant coefficient is needed.
        Complex s{};
        for (const AdjointTerm& t : terms[i]) {
          if (t.length > support) break;
          const Complex x = h[static_cast<Eigen::Index>(e.offset(t.length) + t.code)];
          s += Complex(t.conj.real() * x.real() - t.conj.imag() * x.imag(),
                       t.conj.real() * x.imag() + t.conj.imag() * x.real());
        }
        out[static_cast<Eigen::Index>(child)] = s;
        continue;
      }
      CVector& buf = scratch[len + 1];
      const auto need = static_cast<Eigen::Index>(e.offset(next + 1));
      if (buf.size() < need) buf.resize(need);
      left_mult_adjoint(terms[i], h, support, next, e, buf);
      visit(buf, next, child, len + 1);
    }
  }
};

}  // namespace

// Linear symbols: phi_w = phi_{j1} ... phi_{jk} with phi_j = sum_i X_i M_ij, so
// <g, phi_w> on length k is conj(M) contracted with every letter slot of the
// length-k block of g. The leading slot mixes the n contiguous sub-blocks
// entry by entry, then each sub-block is handled the same way; once a block
// fits in cache the rest of its recursion stays there.
class LinearAdjoint {
 public:
  LinearAdjoint(const CMatrix& row_action, std::size_t n) : m_(row_action.conjugate()), n_(n), in_(n), pow_(1, 1) {}

  void contract(Complex* data, std::size_t depth) {
    if (depth == 0) return;
    while (pow_.size() < depth) pow_.push_back(pow_.back() * n_);
    const std::size_t sub = pow_[depth - 1];
    if (n_ == 2) {
      mix2(data, data + sub, sub);
    } else {
      mix(data, sub);
    }
    if (depth == 1) return;
    for (std::size_t j = 0; j < n_; ++j) contract(data + j * sub, depth - 1);
  }

 private:
  // Two letters, the common case: coefficients hoisted, arithmetic by parts.
  void mix2(Complex* a, Complex* b, std::size_t len) const {
    const double m00r = m_(0, 0).real(), m00i = m_(0, 0).imag(), m01r = m_(0, 1).real(), m01i = m_(0, 1).imag();
    const double m10r = m_(1, 0).real(), m10i = m_(1, 0).imag(), m11r = m_(1, 1).real(), m11i = m_(1, 1).imag();
    auto* x = reinterpret_cast<double*>(a);
    auto* y = reinterpret_cast<double*>(b);
    for (std::size_t r = 0; r < len; ++r) {
      const double ar = x[2 * r], ai = x[2 * r + 1], br = y[2 * r], bi = y[2 * r + 1];
      x[2 * r] = m00r * ar - m00i * ai + m10r * br - m10i * bi;
      x[2 * r + 1] = m00r * ai + m00i * ar + m10r * bi + m10i * br;
      y[2 * r] = m01r * ar - m01i * ai + m11r * br - m11i * bi;
      y[2 * r + 1] = m01r * ai + m01i * ar + m11r * bi + m11i * br;
    }
  }

  void mix(Complex* data, std::size_t sub) {
    for (std::size_t r = 0; r < sub; ++r) {
      for (std::size_t i = 0; i < n_; ++i) in_[i] = data[i * sub + r];
      for (std::size_t j = 0; j < n_; ++j) {
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
          const Complex c = m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          re += c.real() * in_[i].real() - c.imag() * in_[i].imag();
          im += c.real() * in_[i].imag() + c.imag() * in_[i].real();
        }
        data[j * sub + r] = Complex(re, im);
      }
    }
  }

  CMatrix m_;
  std::size_t n_;
  std::vector<Complex> in_;
  std::vector<std::size_t> pow_;  // n^d
};

void adjoint_linear(const CMatrix& row_action, const CVector& g, const GradedEnumeration& e, CVector& out) {
  out = g.head(static_cast<Eigen::Index>(e.total_dim()));
  LinearAdjoint la(row_action, e.n());
  for (std::size_t k = 1; k <= e.degree(); ++k) la.contract(out.data() + e.offset(k), k);
}

FockVector adjoint_apply(const SymbolTuple& phi, const FockVector& g) {
  if (phi.n() != g.n()) throw PreconditionError("symbol and vector alphabets differ");
  if (!(phi.constant().norm() < 1.0)) throw PreconditionError("|phi(0)| must be < 1");
  const std::size_t degree = std::min(g.degree(), phi.degree());
  const std::size_t n = phi.n();
  const auto& e = *enumeration_for(n, degree);
  const CVector gv = g.coeffs().head(static_cast<Eigen::Index>(e.total_dim()));
  FockVector out(n, degree);
  if (is_linear_symbol(phi)) {
    adjoint_linear(phi.row_action_matrix(), gv, e, out.coeffs());
    return out;
  }
  AdjointWalk walk{e, {}, {}, {}, out.coeffs()};
  for (const auto& c : phi.components()) {
    const NcSeries f = c.truncated(degree);
    std::vector<AdjointTerm> ts;
    for (const Term& t : f.terms()) ts.push_back({t.length, t.index - e.offset(t.length), std::conj(t.coeff)});
    walk.terms.push_back(std::move(ts));
    walk.drops.push_back(f.is_zero() ? degree + 1 : f.min_degree());
  }
  walk.scratch.resize(degree + 1);
  walk.visit(gv, degree, 0, 0);
  return out;
}

double largest_singular_value(const SparseCMatrix& m, std::size_t dense_limit) {
  if (m.cols() == 0 || m.rows() == 0) return 0.0;
  if (static_cast<std::size_t>(m.cols()) <= dense_limit) {
    const CMatrix d(m);
    Eigen::BDCSVD<CMatrix> svd(d);
    return svd.singularValues()(0);
  }
  CVector v(m.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(1.0 + 1e-3 * static_cast<double>(i % 7), 0.0);
  v.normalize();
  double prev = 0.0;
  for (int it = 0; it < 10000; ++it) {
    CVector w = m.adjoint() * (m * v);
    const double val = w.norm();
    if (val == 0.0) return 0.0;
    v = w / val;
    if (std::abs(val - prev) <= 1e-10 * val) return std::sqrt(val);
    prev = val;
  }
  return std::sqrt(prev);
}

std::pair<double, Point> sampled_norm_lower_bound(const SymbolTuple& phi, std::size_t samples, double max_radius) {
  const std::size_t n = phi.n();
  const auto primes = first_primes(2 * n + 1);
  Point best = Point::Zero(static_cast<Eigen::Index>(n));
  double best_val = norm_ratio(phi, best);
  for (std::size_t s = 1; s <= samples; ++s) {
    Point z(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      z[static_cast<Eigen::Index>(i)] = Complex(2.0 * radical_inverse(s, primes[2 * i]) - 1.0,
                                                2.0 * radical_inverse(s, primes[2 * i + 1]) - 1.0);
    }
    const double zn = z.norm();
    if (zn == 0.0) continue;
    const double r = max_radius * std::pow(radical_inverse(s, primes[2 * n]), 1.0 / static_cast<double>(2 * n));
    z *= r / zn;
    const double v = norm_ratio(phi, z);
    if (v > best_val) {
      best_val = v;
      best = z;
    }
  }
  // Radial refinement along the best direction.
  if (best.norm() > 0.0) {
    const Point dir = best / best.norm();
    for (int i = 0; i <= 400; ++i) {
      const Point z = dir * (max_radius * i / 400.0);
      const double v = norm_ratio(phi, z);
      if (v > best_val) {
        best_val = v;
        best = z;
      }
    }
  }
  return {best_val, best};
}

NormReport operator_norm_estimate(const CompOpMatrix& m, const NormOptions& opts) {
  NormReport r;
  r.estimate = largest_singular_value(m.matrix, opts.dense_limit);
  std::tie(r.lower_bound, r.lower_bound_point) = sampled_norm_lower_bound(m.symbol, opts.samples, opts.max_radius);
  const double rho = m.symbol.constant().norm();
  r.upper_bound = std::sqrt((1.0 + rho) / (1.0 - rho));
  r.sandwich_ok = r.estimate <= r.upper_bound + 1e-9;
  r.estimate_is_lower_bound = rho != 0.0;
  r.samples = opts.samples;
  return r;
}

std::vector<double> essential_norm_proxy(const CompOpMatrix& m, const std::vector<std::size_t>& ks,
                                         std::size_t dense_limit) {
  std::vector<double> out;
  for (std::size_t k : ks) {
    if (k > m.degree) {
      out.push_back(0.0);
      continue;
    }
    const auto first = static_cast<std::int64_t>(m.grading[k]);
    const SparseCMatrix block = m.matrix.rightCols(m.matrix.cols() - first);
    out.push_back(largest_singular_value(block, dense_limit));
  }
  return out;
}

namespace {

void hs_visit(const NcSeries& phi_w, std::size_t len, std::size_t degree, const std::vector<NcSeries>& comps,
              std::vector<double>& levels) {
  const double nrm = phi_w.l2_norm();
  levels[len] += nrm * nrm;
  if (len == degree) return;
  for (const auto& c : comps) hs_visit(cauchy_product(phi_w, c), len + 1, degree, comps, levels);
}

}  // namespace

HilbertSchmidtReport hilbert_schmidt_sum(const SymbolTuple& phi, std::size_t degree) {
  if (degree > phi.degree()) throw PreconditionError("degree exceeds the symbol degree");
  if (!(phi.constant().norm() < 1.0)) throw PreconditionError("|phi(0)| must be < 1");
  HilbertSchmidtReport r;
  r.level_sums.assign(degree + 1, 0.0);
  if (is_linear_symbol(phi)) {
    // Products of linear forms are tensor products, so norms multiply.
    const double frob2 = phi.linear_matrix().squaredNorm();
    double p = 1.0;
    for (std::size_t k = 0; k <= degree; ++k) {
      r.level_sums[k] = p;
      p *= frob2;
    }
  } else {
    if (graded_dimension(phi.n(), degree) > (WordIndex{1} << 22)) {
      throw PreconditionError("too many words to enumerate for a nonlinear symbol");
    }
    std::vector<NcSeries> comps;
    for (const auto& c : phi.components()) comps.push_back(c.truncated(degree));
    hs_visit(NcSeries::constant(phi.n(), degree, 1.0), 0, degree, comps, r.level_sums);
  }
  for (double v : r.level_sums) r.sum += v;
  if (degree >= 2) {
    const double a = r.level_sums[degree - 1];
    const double b = r.level_sums[degree];
    r.hilbert_schmidt = b < 1.0 - 1e-12 && (a == 0.0 || b / a < 1.0 - 1e-12);
  }
  return r;
}

TraceClassReport trace_class_sums(const SymbolTuple& phi, std::size_t degree) {
  if (degree > phi.degree()) throw PreconditionError("degree exceeds the symbol degree");
  TraceClassReport r;
  const std::size_t n = phi.n();
  const std::size_t sd = shift_degree_within(n, phi.degree(), 256);
  for (const auto& c : phi.components()) {
    const CMatrix f = eval_at_shifts(c.truncated(sd), 1.0 - 1e-9, sd);
    Eigen::BDCSVD<CMatrix> svd(f);
    r.sup_norm_sum += svd.singularValues()(0);
  }
  double p = 1.0;
  for (std::size_t k = 0; k <= degree; ++k) {
    r.bound_sum += p;
    p *= r.sup_norm_sum;
  }
  if (is_linear_symbol(phi)) {
    double row_sum = 0.0;
    for (Eigen::Index i = 0; i < phi.linear_matrix().rows(); ++i) row_sum += phi.linear_matrix().row(i).norm();
    double q = 1.0;
    for (std::size_t k = 0; k <= degree; ++k) {
      r.column_norm_sum += q;
      q *= row_sum;
    }
  } else {
    const CompOpMatrix m = build_matrix(phi, degree, {true, 0});
    for (Eigen::Index j = 0; j < m.matrix.cols(); ++j) r.column_norm_sum += m.matrix.col(j).norm();
  }
  return r;
}

NormalityReport normality_check(const SymbolTuple& phi, std::size_t cross_check_degree) {
  NormalityReport r;
  r.constant_zero = phi.constant().isZero(0.0);
  r.linear_only = true;
  for (const auto& c : phi.components()) {
    for (const Term& t : c.terms()) {
      if (t.length > 1) r.linear_only = false;
    }
    if (!c.polynomial()) r.linear_only = false;
  }
  const CMatrix a = phi.row_action_matrix();
  r.commutator_defect = (a.adjoint() * a - a * a.adjoint()).norm();
  Eigen::JacobiSVD<CMatrix> svd(a);
  r.max_singular = svd.singularValues()(0);
  r.cross_check_degree = std::min(cross_check_degree, phi.degree());
  if (phi.constant().norm() < 1.0) {
    const CMatrix m = build_matrix(phi, r.cross_check_degree, {true, 0}).dense();
    const CMatrix c = m * m.adjoint() - m.adjoint() * m;
    Eigen::JacobiSVD<CMatrix> csvd(c);
    r.matrix_defect = csvd.singularValues()(0);
  } else {
    r.matrix_defect = std::numeric_limits<double>::infinity();
  }
  r.normal = r.constant_zero && r.linear_only && r.commutator_defect <= 1e-10 && r.max_singular <= 1.0 + 1e-12 &&
             r.matrix_defect <= 1e-8;
  return r;
}

void write_matrix_dump(std::ostream& os, const CMatrix& m, const char magic[8], std::uint32_t n,
                       std::uint32_t degree) {
  os.write(magic, 8);
  detail::put_u32(os, n);
  detail::put_u32(os, degree);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      detail::put_f64(os, m(i, j).real());
      detail::put_f64(os, m(i, j).imag());
    }
  }
}

void write_matrix_dump(std::ostream& os, const CompOpMatrix& m) {
  write_matrix_dump(os, m.dense(), "FOCKMAT1", static_cast<std::uint32_t>(m.n), static_cast<std::uint32_t>(m.degree));
}

}  // namespace fockc
