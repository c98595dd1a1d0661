#pragma once

// Degree-truncated noncommutative power series sum_w a_w X_w and n-tuples of
// them (symbols).
//
// Storage is sparse: terms sorted by graded word index. Indices do not depend
// on the truncation degree (index(w) = offset(|w|) + code(w) only involves n
// and |w|), so series of different degrees over the same alphabet share one
// index space.
//
// Two flags describe truncation semantics:
//   exact       every stored coefficient (degree <= D) is the true one
//   polynomial  no nonzero term of the represented object lies above D
// A user-supplied polynomial is both; the degree-D section of an infinite
// series is exact but not polynomial; a composition whose outer sum was cut
// is neither, and carries a tail bound.

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fockc/common.hpp"
#include "fockc/linear_fractional.hpp"
#include "fockc/words.hpp"

namespace fockc {

// Shared read-only enumeration tables, cached per (n, degree).
std::shared_ptr<const GradedEnumeration> enumeration_for(std::size_t n, std::size_t degree);

struct Term {
  WordIndex index;
  std::uint32_t length;
  Complex coeff;
};

class NcSeries {
 public:
  NcSeries(std::size_t n, std::size_t degree);

  static NcSeries constant(std::size_t n, std::size_t degree, Complex c);
  // c * X_i, with i 0-based.
  static NcSeries variable(std::size_t n, std::size_t degree, Letter i, Complex c = 1.0);
  // Accumulates repeated words. Rejects words longer than degree or with
  // letters outside the alphabet.
  static NcSeries from_terms(std::size_t n, std::size_t degree,
                             const std::vector<std::pair<Word, Complex>>& terms);
  // Dense coefficient vector indexed by graded word index.
  static NcSeries from_dense(std::size_t n, std::size_t degree, const CVector& coeffs);

  std::size_t n() const noexcept { return n_; }
  std::size_t degree() const noexcept { return degree_; }
  const GradedEnumeration& enumeration() const { return *enum_; }

  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Complex coefficient(const Word& w) const;
  Complex coefficient_at(WordIndex i) const;
  Complex constant_term() const { return coefficient_at(0); }

  // Lowest / highest length carrying a stored term; 0 for the zero series.
  std::size_t min_degree() const;
  std::size_t max_degree() const;

  double l1_norm() const;
  // The Fock (H^2) norm of the stored coefficients.
  double l2_norm() const;

  bool exact() const noexcept { return exact_; }
  bool polynomial() const noexcept { return polynomial_; }
  double tail_bound() const noexcept { return tail_bound_; }
  void set_exact(bool e) { exact_ = e; }
  void set_polynomial(bool p) { polynomial_ = p; }
  void set_tail_bound(double t) { tail_bound_ = t; }

  NcSeries truncated(std::size_t degree) const;
  CVector to_dense() const;

  NcSeries& operator+=(const NcSeries& other);
  NcSeries& operator-=(const NcSeries& other);
  NcSeries& operator*=(Complex s);
  friend NcSeries operator+(NcSeries a, const NcSeries& b) { return a += b; }
  friend NcSeries operator-(NcSeries a, const NcSeries& b) { return a -= b; }
  friend NcSeries operator*(NcSeries a, Complex s) { return a *= s; }
  friend NcSeries operator*(Complex s, NcSeries a) { return a *= s; }

  // Sorted, zero-free term list; used by the arithmetic kernels.
  static NcSeries from_sorted_terms(std::size_t n, std::size_t degree, std::vector<Term> terms);

 private:
  std::size_t n_;
  std::size_t degree_;
  std::shared_ptr<const GradedEnumeration> enum_;
  std::vector<Term> terms_;
  bool exact_ = true;
  bool polynomial_ = true;
  double tail_bound_ = 0.0;
};

// Coefficient of w in f*g is sum over splittings w = uv of f(u) g(v). The
// result degree is min(deg f, deg g).
NcSeries cauchy_product(const NcSeries& f, const NcSeries& g);

// Multiplicative inverse in the truncated algebra; requires a nonzero
// constant term. Exact degree by degree (no Neumann cut-off).
NcSeries inverse(const NcSeries& f);

// f(lambda) = sum_w a_w lambda_w.
Complex eval_scalar(const NcSeries& f, const Point& lambda);

class SymbolTuple {
 public:
  explicit SymbolTuple(std::vector<NcSeries> components,
                       std::optional<LinearFractional> closed_form = std::nullopt);

  static SymbolTuple identity(std::size_t n, std::size_t degree);
  // phi(X) = [X_1, ..., X_n] * row_action, i.e. phi_j = sum_i X_i row_action(i, j).
  static SymbolTuple linear(const CMatrix& row_action, std::size_t degree);
  static SymbolTuple from_linear_fractional(const LinearFractional& lft, std::size_t degree);

  std::size_t n() const noexcept { return components_.size(); }
  std::size_t degree() const noexcept { return components_.front().degree(); }
  const std::vector<NcSeries>& components() const noexcept { return components_; }
  const NcSeries& operator[](std::size_t i) const { return components_[i]; }

  // phi(0).
  const Point& constant() const noexcept { return constant_; }
  // Entry (i, j) is the coefficient of X_j in phi_i, i.e. <phi_i, e_j>.
  const CMatrix& linear_matrix() const noexcept { return linear_; }
  // The matrix M with phi_lin(X) = [X] M; the transpose of linear_matrix().
  CMatrix row_action_matrix() const { return linear_.transpose(); }

  const std::optional<LinearFractional>& closed_form() const noexcept { return closed_form_; }

  bool exact() const;
  bool polynomial() const;
  double tail_bound() const;
  // Largest degree carrying a stored term over all components.
  std::size_t max_degree() const;

  Point eval_scalar(const Point& lambda) const;
  SymbolTuple truncated(std::size_t degree) const;

 private:
  std::vector<NcSeries> components_;
  Point constant_;
  CMatrix linear_;
  std::optional<LinearFractional> closed_form_;
};

struct ComposeOptions {
  // Longest outer word substituted. Default: the result degree when
  // phi(0) = 0 (exact by grading), 4x the result degree otherwise.
  std::optional<std::size_t> outer_cap;
  // Truncation degree of the result; default min(deg f, deg phi).
  std::optional<std::size_t> result_degree;
};

std::size_t default_outer_cap(const SymbolTuple& phi, std::size_t result_degree);

// sum_{|w| <= outer_cap} a_w phi_w, truncated. The outer sum is evaluated by
// a Horner scheme over the prefix trie of f's stored words, one Cauchy
// product per trie node.
NcSeries compose(const NcSeries& f, const SymbolTuple& phi, const ComposeOptions& opts = {});

// The matrix f(r S_1, ..., r S_n) on the basis of words of length <= shift_degree,
// with S_i the truncated left creation operators.
CMatrix eval_at_shifts(const NcSeries& f, double r, std::size_t shift_degree);

// Largest singular value of the row [phi_1(rS), ..., phi_n(rS)]; a lower
// estimate of the row sup-norm of phi.
double row_norm_at_shifts(const SymbolTuple& phi, double r, std::size_t shift_degree);

}  // namespace fockc
