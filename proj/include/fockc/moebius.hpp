#pragma once

// Free holomorphic automorphisms of the noncommutative unit ball: the
// involutions Phi_lambda, the unitary maps X -> [X] U, and their compositions.
//
// Row convention: a linear symbol acts as [X_1, ..., X_n] -> [X_1, ..., X_n] M.

#include <optional>
#include <string>

#include "fockc/common.hpp"
#include "fockc/linear_fractional.hpp"
#include "fockc/series.hpp"

namespace fockc {

struct MoebiusParams {
  Point lambda;
  double delta_lambda;      // (1 - |lambda|^2)^{1/2}
  CMatrix delta_lambda_star;  // (I - lambda^* lambda)^{1/2}

  // Uses the rank-one structure of lambda^* lambda; requires |lambda| < 1.
  static MoebiusParams make(const Point& lambda);
};

// Phi_lambda(X) = lambda - Delta_lambda (1 - sum conj(lambda_i) X_i)^{-1} [X] Delta_{lambda*},
// as a linear-fractional map.
LinearFractional phi_lambda_map(const Point& lambda);

// The degree-D section of Phi_lambda, expanding the inverse as the
// geometric series sum_{m < D} (sum conj(lambda_i) X_i)^m. The result
// carries phi_lambda_map as its closed form. lambda = 0 gives -X exactly.
SymbolTuple phi_lambda(const Point& lambda, std::size_t degree);

// Scalar value of the degree-D section of Phi_lambda at x; degree 0 means
// the untruncated map.
Point phi_lambda_eval(const Point& lambda, const Point& x, std::size_t degree = 0);

enum class UnitaryCheck { strict, allow_contraction };

// X -> [X] U. With allow_contraction any |U| <= 1 is accepted and a warning
// is written when U is not unitary.
SymbolTuple phi_unitary(const CMatrix& u, std::size_t degree, UnitaryCheck check = UnitaryCheck::strict,
                        std::string* warning = nullptr);

double unitarity_defect(const CMatrix& u);

struct AutomorphismSpec {
  Point lambda;
  CMatrix unitary;

  void validate() const;
  // Phi_lambda o Phi_U.
  LinearFractional map() const;
  SymbolTuple symbol(std::size_t degree) const;
};

// outer o inner, component by component. The closed form is propagated when
// both symbols carry one.
SymbolTuple compose_symbols(const SymbolTuple& outer, const SymbolTuple& inner, const ComposeOptions& opts = {});

// outer o inner where outer is the degree-outer_degree section of a
// linear-fractional map. Equal to the generic composition with the
// materialized outer section, but evaluated through the geometric structure
// of the denominator, so outer_degree may be far beyond what can be stored.
SymbolTuple compose_symbols(const LinearFractional& outer, std::size_t outer_degree, const SymbolTuple& inner,
                            const ComposeOptions& opts = {});

struct IdentityDefect {
  double scalar;  // |(1 - Phi(x)Phi(y)^*) - right-hand side|
  double matrix;  // operator norm defect of the n x n identity
};

// Defects of
//   1 - Phi(x)Phi(y)^* = D (1 - x lambda^*)^{-1} (1 - x y^*) (1 - lambda y^*)^{-1} D
//   I - Phi(x)^*Phi(y) = D_* (I - x^* lambda)^{-1} (I - x^* y) (I - lambda^* y)^{-1} D_*
// at scalar points, with Phi evaluated from its degree-series_degree section
// (0 = untruncated).
IdentityDefect moebius_identity_defect(const Point& lambda, const Point& x, const Point& y,
                                  std::size_t series_degree = 0);

}  // namespace fockc
