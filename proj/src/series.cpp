#include "fockc/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <unordered_map>

namespace fockc {

std::shared_ptr<const GradedEnumeration> enumeration_for(std::size_t n, std::size_t degree) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const GradedEnumeration>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{n, degree}];
  if (!slot) slot = std::make_shared<const GradedEnumeration>(n, degree);
  return slot;
}

namespace {

// Dense scatter buffer with a touched list, reused per thread.
class Accumulator {
 public:
  void reset(std::size_t dim) {
    if (values_.size() < dim) {
      values_.assign(dim, Complex{});
      seen_.assign(dim, 0);
    }
    touched_.clear();
  }
  void add(WordIndex i, Complex v) {
    if (!seen_[i]) {
      seen_[i] = 1;
      touched_.push_back(i);
    }
    values_[i] += v;
  }
  // Collects nonzero entries in index order and clears the buffer.
  std::vector<Term> drain(const GradedEnumeration& e) {
    std::sort(touched_.begin(), touched_.end());
    std::vector<Term> out;
    out.reserve(touched_.size());
    for (WordIndex i : touched_) {
      if (values_[i] != Complex{}) {
        out.push_back({i, static_cast<std::uint32_t>(e.length_of(i)), values_[i]});
      }
      values_[i] = Complex{};
      seen_[i] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<Complex> values_;
  std::vector<unsigned char> seen_;
  std::vector<WordIndex> touched_;
};

constexpr WordIndex kDenseLimit = WordIndex{1} << 22;

class HashAccumulator {
 public:
  void add(WordIndex i, Complex v) { values_[i] += v; }
  std::vector<Term> drain(const GradedEnumeration& e) {
    std::vector<Term> out;
    out.reserve(values_.size());
    for (auto& [i, v] : values_) {
      if (v != Complex{}) out.push_back({i, static_cast<std::uint32_t>(e.length_of(i)), v});
    }
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    values_.clear();
    return out;
  }

 private:
  std::unordered_map<WordIndex, Complex> values_;
};

template <class Acc>
void product_into(Acc& acc, const NcSeries& f, const NcSeries& g, const GradedEnumeration& e,
                  std::size_t degree) {
  for (const Term& tf : f.terms()) {
    if (tf.length > degree) break;
    const std::size_t room = degree - tf.length;
    for (const Term& tg : g.terms()) {
      if (tg.length > room) break;
      acc.add(e.concat_index(tf.index, tf.length, tg.index, tg.length), tf.coeff * tg.coeff);
    }
  }
}

}  // namespace

NcSeries::NcSeries(std::size_t n, std::size_t degree)
    : n_(n), degree_(degree), enum_(enumeration_for(n, degree)) {}

NcSeries NcSeries::from_sorted_terms(std::size_t n, std::size_t degree, std::vector<Term> terms) {
  NcSeries s(n, degree);
  s.terms_ = std::move(terms);
  return s;
}

NcSeries NcSeries::constant(std::size_t n, std::size_t degree, Complex c) {
  NcSeries s(n, degree);
  if (c != Complex{}) s.terms_.push_back({0, 0, c});
  return s;
}

NcSeries NcSeries::variable(std::size_t n, std::size_t degree, Letter i, Complex c) {
  if (i >= n) throw PreconditionError("variable index outside the alphabet");
  NcSeries s(n, degree);
  if (degree >= 1 && c != Complex{}) s.terms_.push_back({1 + WordIndex{i}, 1, c});
  if (degree == 0 && c != Complex{}) s.polynomial_ = false;
  return s;
}

NcSeries NcSeries::from_terms(std::size_t n, std::size_t degree,
                              const std::vector<std::pair<Word, Complex>>& terms) {
  NcSeries s(n, degree);
  std::map<WordIndex, Complex> acc;
  for (const auto& [w, c] : terms) {
    if (w.length() > degree) throw PreconditionError("term longer than the series degree");
    for (Letter l : w.letters()) {
      if (l >= n) throw PreconditionError("letter outside the alphabet");
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw PreconditionError("non-finite coefficient");
    }
    acc[s.enum_->index(w)] += c;
  }
  for (auto& [i, c] : acc) {
    if (c != Complex{}) s.terms_.push_back({i, static_cast<std::uint32_t>(s.enum_->length_of(i)), c});
  }
  return s;
}

NcSeries NcSeries::from_dense(std::size_t n, std::size_t degree, const CVector& coeffs) {
  NcSeries s(n, degree);
  if (static_cast<WordIndex>(coeffs.size()) != s.enum_->total_dim()) {
    throw PreconditionError("dense coefficient vector has the wrong dimension");
  }
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != Complex{}) {
      s.terms_.push_back({static_cast<WordIndex>(i),
                          static_cast<std::uint32_t>(s.enum_->length_of(static_cast<WordIndex>(i))),
                          coeffs[i]});
    }
  }
  return s;
}

Complex NcSeries::coefficient_at(WordIndex i) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                             [](const Term& t, WordIndex v) { return t.index < v; });
  return (it != terms_.end() && it->index == i) ? it->coeff : Complex{};
}

Complex NcSeries::coefficient(const Word& w) const {
  if (w.length() > degree_) return {};
  return coefficient_at(enum_->index(w));
}

std::size_t NcSeries::min_degree() const { return terms_.empty() ? 0 : terms_.front().length; }
std::size_t NcSeries::max_degree() const { return terms_.empty() ? 0 : terms_.back().length; }

double NcSeries::l1_norm() const {
  double s = 0;
  for (const Term& t : terms_) s += std::abs(t.coeff);
  return s;
}

double NcSeries::l2_norm() const {
  double s = 0;
  for (const Term& t : terms_) s += std::norm(t.coeff);
  return std::sqrt(s);
}

NcSeries NcSeries::truncated(std::size_t degree) const {
  NcSeries s(n_, degree);
  s.exact_ = exact_;
  s.polynomial_ = polynomial_;
  s.tail_bound_ = tail_bound_;
  for (const Term& t : terms_) {
    if (t.length <= degree) {
      s.terms_.push_back(t);
    } else {
      s.polynomial_ = false;
    }
  }
  if (degree > degree_) {
    // Coefficients between the old and new degree are unknown unless the
    // series is a polynomial.
    s.exact_ = exact_ && polynomial_;
  }
  return s;
}

CVector NcSeries::to_dense() const {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(enum_->total_dim()));
  for (const Term& t : terms_) v[static_cast<Eigen::Index>(t.index)] = t.coeff;
  return v;
}

NcSeries& NcSeries::operator+=(const NcSeries& other) {
  if (other.n_ != n_) throw PreconditionError("mismatched alphabet sizes");
  const std::size_t d = std::min(degree_, other.degree_);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  auto push = [&](const Term& t) {
    if (t.length <= d && t.coeff != Complex{}) out.push_back(t);
  };
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->index < b->index)) {
      push(*a++);
    } else if (a == terms_.end() || b->index < a->index) {
      push(*b++);
    } else {
      push({a->index, a->length, a->coeff + b->coeff});
      ++a;
      ++b;
    }
  }
  const bool poly = polynomial_ && other.polynomial_ && max_degree() <= d && other.max_degree() <= d;
  exact_ = exact_ && other.exact_;
  polynomial_ = poly;
  tail_bound_ += other.tail_bound_;
  degree_ = d;
  enum_ = enumeration_for(n_, d);
  terms_ = std::move(out);
  return *this;
}

NcSeries& NcSeries::operator-=(const NcSeries& other) {
  NcSeries neg = other;
  neg *= -1.0;
  return *this += neg;
}

NcSeries& NcSeries::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= s;
  tail_bound_ *= std::abs(s);
  return *this;
}

NcSeries cauchy_product(const NcSeries& f, const NcSeries& g) {
  if (f.n() != g.n()) throw PreconditionError("mismatched alphabet sizes");
  const std::size_t d = std::min(f.degree(), g.degree());
  const auto& e = *enumeration_for(f.n(), d);
  std::vector<Term> terms;
  if (e.total_dim() <= kDenseLimit) {
    thread_local Accumulator acc;
    acc.reset(e.total_dim());
    product_into(acc, f, g, e, d);
    terms = acc.drain(e);
  } else {
    HashAccumulator acc;
    product_into(acc, f, g, e, d);
    terms = acc.drain(e);
  }
  NcSeries out = NcSeries::from_sorted_terms(f.n(), d, std::move(terms));
  out.set_exact(f.exact() && g.exact());
  out.set_polynomial(f.polynomial() && g.polynomial() && f.max_degree() + g.max_degree() <= d);
  // |coefficient error| of a product of perturbed series, first order.
  out.set_tail_bound(f.tail_bound() * g.l1_norm() + g.tail_bound() * f.l1_norm());
  return out;
}

NcSeries inverse(const NcSeries& f) {
  const Complex f0 = f.constant_term();
  if (f0 == Complex{}) throw PreconditionError("inverse requires a nonzero constant term");
  const std::size_t d = f.degree();
  const auto& e = f.enumeration();
  if (e.total_dim() > kDenseLimit) throw PreconditionError("series too large for inversion");
  std::vector<Complex> u(e.total_dim(), Complex{});
  u[0] = 1.0 / f0;
  for (std::size_t len = 1; len <= d; ++len) {
    for (const Term& tf : f.terms()) {
      if (tf.length == 0) continue;
      if (tf.length > len) break;
      const std::size_t ylen = len - tf.length;
      const WordIndex begin = e.offset(ylen);
      const WordIndex end = e.offset(ylen + 1);
      for (WordIndex y = begin; y < end; ++y) {
        if (u[y] == Complex{}) continue;
        u[e.concat_index(tf.index, tf.length, y, ylen)] -= tf.coeff * u[y];
      }
    }
    for (WordIndex w = e.offset(len); w < e.offset(len + 1); ++w) u[w] /= f0;
  }
  CVector dense = Eigen::Map<CVector>(u.data(), static_cast<Eigen::Index>(u.size()));
  NcSeries out = NcSeries::from_dense(f.n(), d, dense);
  out.set_exact(f.exact());
  out.set_polynomial(false);
  return out;
}

Complex eval_scalar(const NcSeries& f, const Point& lambda) {
  if (static_cast<std::size_t>(lambda.size()) != f.n()) throw PreconditionError("point dimension mismatch");
  const auto& e = f.enumeration();
  // Monomials lambda_w for words in the index range actually used, built by
  // prefix recursion: lambda_{w g_i} = lambda_w lambda_i.
  const WordIndex top = f.is_zero() ? 1 : f.terms().back().index + 1;
  if (top <= kDenseLimit) {
    std::vector<Complex> mono(top);
    mono[0] = 1.0;
    const std::size_t n = f.n();
    for (WordIndex i = 1; i < top; ++i) {
      const std::size_t len = e.length_of(i);
      const WordIndex code = i - e.offset(len);
      const WordIndex parent = e.offset(len - 1) + code / n;
      mono[i] = mono[parent] * lambda[static_cast<Eigen::Index>(code % n)];
    }
    Complex s{};
    for (const Term& t : f.terms()) s += t.coeff * mono[t.index];
    return s;
  }
  Complex s{};
  for (const Term& t : f.terms()) {
    Complex m = 1.0;
    for (Letter l : e.word(t.index).letters()) m *= lambda[l];
    s += t.coeff * m;
  }
  return s;
}

SymbolTuple::SymbolTuple(std::vector<NcSeries> components, std::optional<LinearFractional> closed_form)
    : components_(std::move(components)), closed_form_(std::move(closed_form)) {
  if (components_.empty()) throw PreconditionError("a symbol needs at least one component");
  const std::size_t n = components_.size();
  const std::size_t d = components_.front().degree();
  for (const auto& c : components_) {
    if (c.n() != n) throw PreconditionError("symbol components must share the alphabet size n");
    if (c.degree() != d) throw PreconditionError("symbol components must share the degree");
  }
  if (closed_form_ && closed_form_->n() != n) throw PreconditionError("closed form has the wrong size");
  constant_ = Point::Zero(static_cast<Eigen::Index>(n));
  linear_ = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    constant_[static_cast<Eigen::Index>(i)] = components_[i].constant_term();
    for (std::size_t j = 0; j < n && d >= 1; ++j) {
      linear_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          components_[i].coefficient_at(1 + j);
    }
  }
}

SymbolTuple SymbolTuple::identity(std::size_t n, std::size_t degree) {
  return linear(CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)), degree);
}

SymbolTuple SymbolTuple::linear(const CMatrix& row_action, std::size_t degree) {
  if (row_action.rows() != row_action.cols()) throw PreconditionError("linear symbol needs a square matrix");
  const std::size_t n = static_cast<std::size_t>(row_action.rows());
  std::vector<NcSeries> comps;
  for (std::size_t j = 0; j < n; ++j) {
    NcSeries s(n, degree);
    for (std::size_t i = 0; i < n; ++i) {
      s += NcSeries::variable(n, degree, static_cast<Letter>(i),
                              row_action(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
    comps.push_back(std::move(s));
  }
  LinearFractional lft;
  lft.a = row_action;
  lft.b = Eigen::RowVectorXcd::Zero(static_cast<Eigen::Index>(n));
  lft.c = CVector::Zero(static_cast<Eigen::Index>(n));
  lft.d = 1.0;
  return SymbolTuple(std::move(comps), lft);
}

bool SymbolTuple::exact() const {
  return std::all_of(components_.begin(), components_.end(), [](const NcSeries& s) { return s.exact(); });
}

bool SymbolTuple::polynomial() const {
  return std::all_of(components_.begin(), components_.end(), [](const NcSeries& s) { return s.polynomial(); });
}

double SymbolTuple::tail_bound() const {
  double t = 0;
  for (const auto& s : components_) t = std::max(t, s.tail_bound());
  return t;
}

std::size_t SymbolTuple::max_degree() const {
  std::size_t d = 0;
  for (const auto& s : components_) d = std::max(d, s.max_degree());
  return d;
}

Point SymbolTuple::eval_scalar(const Point& lambda) const {
  Point out(static_cast<Eigen::Index>(n()));
  for (std::size_t i = 0; i < n(); ++i) out[static_cast<Eigen::Index>(i)] = fockc::eval_scalar(components_[i], lambda);
  return out;
}

SymbolTuple SymbolTuple::truncated(std::size_t degree) const {
  std::vector<NcSeries> comps;
  for (const auto& s : components_) comps.push_back(s.truncated(degree));
  return SymbolTuple(std::move(comps), closed_form_);
}

std::size_t default_outer_cap(const SymbolTuple& phi, std::size_t result_degree) {
  return phi.constant().isZero(0.0) ? result_degree : 4 * result_degree;
}

namespace {

struct TrieNode {
  Complex coeff{};
  std::vector<int> child;
};

NcSeries horner(const std::vector<TrieNode>& trie, int node, std::size_t n,
                std::size_t degree, const std::vector<NcSeries>& comps) {
  NcSeries acc = NcSeries::constant(n, degree, trie[static_cast<std::size_t>(node)].coeff);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = trie[static_cast<std::size_t>(node)].child[i];
    if (c < 0) continue;
    acc += cauchy_product(comps[i], horner(trie, c, n, degree, comps));
  }
  return acc;
}

}  // namespace

NcSeries compose(const NcSeries& f, const SymbolTuple& phi, const ComposeOptions& opts) {
  const std::size_t n = f.n();
  if (phi.n() != n) throw PreconditionError("symbol and series alphabets differ");
  const std::size_t degree = opts.result_degree.value_or(std::min(f.degree(), phi.degree()));
  if (degree > phi.degree()) throw PreconditionError("result degree exceeds the symbol degree");
  const std::size_t cap = opts.outer_cap.value_or(default_outer_cap(phi, degree));
  if (cap == 0 && f.max_degree() > 0) {
    throw PreconditionError("outer_cap = 0 with a nonconstant outer series is degenerate");
  }

  std::vector<NcSeries> comps;
  comps.reserve(n);
  for (const auto& c : phi.components()) comps.push_back(c.truncated(degree));

  // Prefix trie of the outer words kept by the cap.
  std::vector<TrieNode> trie(1);
  trie[0].child.assign(n, -1);
  bool dropped = false;
  const auto& e = f.enumeration();
  for (const Term& t : f.terms()) {
    if (t.length > cap) {
      dropped = true;
      continue;
    }
    int node = 0;
    for (Letter l : e.word(t.index).letters()) {
      int next = trie[static_cast<std::size_t>(node)].child[l];
      if (next < 0) {
        next = static_cast<int>(trie.size());
        trie.push_back(TrieNode{{}, std::vector<int>(n, -1)});
        trie[static_cast<std::size_t>(node)].child[l] = next;
      }
      node = next;
    }
    trie[static_cast<std::size_t>(node)].coeff += t.coeff;
  }

  NcSeries out = horner(trie, 0, n, degree, comps);

  const double rho = phi.constant().norm();
  const bool graded = rho == 0.0;
  bool exact = f.exact() && phi.exact();
  double tail = 0.0;
  if (graded) {
    // Outer terms longer than the result degree cannot reach it.
    if (cap < degree && dropped) exact = false;
    if (f.degree() < degree && !f.polynomial()) exact = false;
  } else {
    if (dropped || !f.polynomial()) {
      exact = false;
      tail = std::pow(rho, static_cast<double>(cap)) * f.l2_norm();
    }
  }
  out.set_exact(exact && f.tail_bound() == 0.0);
  out.set_polynomial(false);
  out.set_tail_bound(tail + f.tail_bound() + out.tail_bound());
  return out;
}

CMatrix eval_at_shifts(const NcSeries& f, double r, std::size_t shift_degree) {
  const auto& e = *enumeration_for(f.n(), shift_degree);
  const auto dim = static_cast<Eigen::Index>(e.total_dim());
  CMatrix m = CMatrix::Zero(dim, dim);
  for (WordIndex b = 0; b < e.total_dim(); ++b) {
    const std::size_t lb = e.length_of(b);
    for (const Term& t : f.terms()) {
      if (t.length + lb > shift_degree) break;
      const WordIndex row = e.concat_index(t.index, t.length, b, lb);
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(b)) +=
          t.coeff * std::pow(r, static_cast<double>(t.length));
    }
  }
  return m;
}

double row_norm_at_shifts(const SymbolTuple& phi, double r, std::size_t shift_degree) {
  const auto dim = static_cast<Eigen::Index>(enumeration_for(phi.n(), shift_degree)->total_dim());
  CMatrix gram = CMatrix::Zero(dim, dim);
  for (const auto& c : phi.components()) {
    CMatrix f = eval_at_shifts(c, r, shift_degree);
    gram.noalias() += f * f.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace fockc
