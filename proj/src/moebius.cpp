#include "fockc/moebius.hpp"

#include <cmath>

namespace fockc {

namespace {

void require_in_ball(const Point& p, const char* what) {
  if (!(p.squaredNorm() < 1.0)) throw PreconditionError(std::string(what) + " must lie in the open unit ball");
}

// lambda^* lambda, entry (i, j) = conj(lambda_i) lambda_j.
CMatrix outer_star(const Point& a, const Point& b) { return a.conjugate() * b.transpose(); }

}  // namespace

MoebiusParams MoebiusParams::make(const Point& lambda) {
  require_in_ball(lambda, "lambda");
  const auto n = lambda.size();
  const double r2 = lambda.squaredNorm();
  MoebiusParams p;
  p.lambda = lambda;
  p.delta_lambda = std::sqrt(1.0 - r2);
  p.delta_lambda_star = CMatrix::Identity(n, n);
  if (r2 > 0.0) p.delta_lambda_star -= ((1.0 - p.delta_lambda) / r2) * outer_star(lambda, lambda);
  return p;
}

LinearFractional phi_lambda_map(const Point& lambda) {
  const MoebiusParams p = MoebiusParams::make(lambda);
  LinearFractional f;
  f.a = -(outer_star(lambda, lambda) + p.delta_lambda * p.delta_lambda_star);
  f.b = lambda.transpose();
  f.c = -lambda.conjugate();
  f.d = 1.0;
  return f;
}

SymbolTuple phi_lambda(const Point& lambda, std::size_t degree) {
  const auto n = static_cast<std::size_t>(lambda.size());
  if (lambda.isZero(0.0)) {
    require_in_ball(lambda, "lambda");
    return SymbolTuple::linear(-CMatrix::Identity(lambda.size(), lambda.size()), degree);
  }
  const MoebiusParams p = MoebiusParams::make(lambda);

  NcSeries l(n, degree);
  for (std::size_t i = 0; i < n; ++i) {
    l += NcSeries::variable(n, degree, static_cast<Letter>(i), std::conj(lambda[static_cast<Eigen::Index>(i)]));
  }
  NcSeries neumann = NcSeries::constant(n, degree, 1.0);
  NcSeries power = neumann;
  for (std::size_t m = 1; m + 1 <= degree; ++m) {
    power = cauchy_product(power, l);
    neumann += power;
  }

  std::vector<NcSeries> comps;
  for (std::size_t j = 0; j < n; ++j) {
    NcSeries v(n, degree);
    for (std::size_t i = 0; i < n; ++i) {
      v += NcSeries::variable(n, degree, static_cast<Letter>(i),
                              p.delta_lambda_star(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
    NcSeries comp = NcSeries::constant(n, degree, lambda[static_cast<Eigen::Index>(j)]);
    comp -= p.delta_lambda * cauchy_product(neumann, v);
    comp.set_exact(true);
    comp.set_polynomial(false);
    comps.push_back(std::move(comp));
  }
  return SymbolTuple(std::move(comps), phi_lambda_map(lambda));
}

Point phi_lambda_eval(const Point& lambda, const Point& x, std::size_t degree) {
  if (degree == 0) return phi_lambda_map(lambda)(x);
  const MoebiusParams p = MoebiusParams::make(lambda);
  const Complex q = (x.transpose() * lambda.conjugate())(0, 0);
  Complex geo = 0.0;
  Complex pw = 1.0;
  for (std::size_t m = 0; m + 1 <= degree; ++m) {
    geo += pw;
    pw *= q;
  }
  const Point xd = p.delta_lambda_star.transpose() * x;
  return lambda - p.delta_lambda * geo * xd;
}

double unitarity_defect(const CMatrix& u) {
  const CMatrix id = CMatrix::Identity(u.cols(), u.cols());
  Eigen::JacobiSVD<CMatrix> svd(u.adjoint() * u - id);
  return svd.singularValues()(0);
}

SymbolTuple phi_unitary(const CMatrix& u, std::size_t degree, UnitaryCheck check, std::string* warning) {
  if (u.rows() != u.cols()) throw PreconditionError("unitary map needs a square matrix");
  const double defect = unitarity_defect(u);
  if (defect > 1e-12) {
    if (check == UnitaryCheck::strict) {
      throw PreconditionError("matrix is not unitary (|U*U - I| = " + std::to_string(defect) + ")");
    }
    Eigen::JacobiSVD<CMatrix> svd(u);
    if (svd.singularValues()(0) > 1.0 + 1e-12) throw PreconditionError("matrix is not a contraction");
    if (warning) *warning = "matrix is a contraction but not unitary";
  }
  return SymbolTuple::linear(u, degree);
}

void AutomorphismSpec::validate() const {
  require_in_ball(lambda, "lambda");
  if (unitary.rows() != lambda.size() || unitary.cols() != lambda.size()) {
    throw PreconditionError("automorphism parameters have inconsistent sizes");
  }
  if (unitarity_defect(unitary) > 1e-12) throw PreconditionError("automorphism matrix is not unitary");
}

LinearFractional AutomorphismSpec::map() const {
  validate();
  LinearFractional u;
  u.a = unitary;
  u.b = Eigen::RowVectorXcd::Zero(unitary.rows());
  u.c = CVector::Zero(unitary.rows());
  u.d = 1.0;
  if (lambda.isZero(0.0)) return u;
  return compose(phi_lambda_map(lambda), u);
}

SymbolTuple AutomorphismSpec::symbol(std::size_t degree) const {
  if (lambda.isZero(0.0)) return phi_unitary(unitary, degree);
  return SymbolTuple::from_linear_fractional(map(), degree);
}

SymbolTuple compose_symbols(const SymbolTuple& outer, const SymbolTuple& inner, const ComposeOptions& opts) {
  if (outer.n() != inner.n()) throw PreconditionError("symbols have different alphabet sizes");
  std::vector<NcSeries> comps;
  comps.reserve(outer.n());
  for (const auto& c : outer.components()) comps.push_back(compose(c, inner, opts));
  std::optional<LinearFractional> closed;
  if (outer.closed_form() && inner.closed_form()) closed = compose(*outer.closed_form(), *inner.closed_form());
  return SymbolTuple(std::move(comps), closed);
}

SymbolTuple compose_symbols(const LinearFractional& outer, std::size_t outer_degree, const SymbolTuple& inner,
                            const ComposeOptions& opts) {
  outer.validate();
  const std::size_t n = inner.n();
  if (outer.n() != n) throw PreconditionError("symbols have different alphabet sizes");
  const std::size_t degree = opts.result_degree.value_or(inner.degree());
  if (degree > inner.degree()) throw PreconditionError("result degree exceeds the inner symbol degree");
  const std::size_t cap = opts.outer_cap.value_or(default_outer_cap(inner, degree));
  // Outer words of length l come from the m = l term of the geometric series
  // with the constant numerator b, and from m = l - 1 with [X] A.
  const std::size_t longest = std::min(cap, outer_degree);

  std::vector<NcSeries> phi;
  for (const auto& c : inner.components()) phi.push_back(c.truncated(degree));
  NcSeries step(n, degree);  // -(sum phi_i c_i) / d
  for (std::size_t i = 0; i < n; ++i) step += phi[i] * (-outer.c[static_cast<Eigen::Index>(i)] / outer.d);

  NcSeries power = NcSeries::constant(n, degree, 1.0);
  NcSeries below = NcSeries::constant(n, degree, 0.0);  // sum_{m < longest} step^m
  for (std::size_t m = 0; m < longest; ++m) {
    below += power;
    power = cauchy_product(power, step);
  }
  NcSeries upto = below + power;  // sum_{m <= longest} step^m

  const double rho = inner.constant().norm();
  bool exact = inner.exact();
  double tail = 0.0;
  if (rho == 0.0) {
    if (longest < degree) exact = false;
  } else {
    exact = false;
    const double scale = (outer.b.norm() + outer.a.norm()) / (std::abs(outer.d) - outer.c.norm());
    tail = std::pow(rho, static_cast<double>(longest)) * scale;
  }

  std::vector<NcSeries> comps;
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    NcSeries y(n, degree);
    for (std::size_t i = 0; i < n; ++i) y += phi[i] * outer.a(static_cast<Eigen::Index>(i), jj);
    NcSeries comp = upto * (outer.b[jj] / outer.d);
    if (longest >= 1) comp += cauchy_product(below, y) * (1.0 / outer.d);
    comp.set_exact(exact);
    comp.set_polynomial(false);
    comp.set_tail_bound(tail + inner.tail_bound());
    comps.push_back(std::move(comp));
  }
  std::optional<LinearFractional> closed;
  if (inner.closed_form()) closed = compose(outer, *inner.closed_form());
  return SymbolTuple(std::move(comps), closed);
}

IdentityDefect moebius_identity_defect(const Point& lambda, const Point& x, const Point& y, std::size_t series_degree) {
  const MoebiusParams p = MoebiusParams::make(lambda);
  require_in_ball(x, "x");
  require_in_ball(y, "y");
  const Point fx = phi_lambda_eval(lambda, x, series_degree);
  const Point fy = phi_lambda_eval(lambda, y, series_degree);
  auto row_dot = [](const Point& a, const Point& b) { return (a.transpose() * b.conjugate())(0, 0); };

  const Complex lhs = 1.0 - row_dot(fx, fy);
  const Complex rhs = p.delta_lambda * p.delta_lambda * (1.0 - row_dot(x, y)) /
                      ((1.0 - row_dot(x, lambda)) * (1.0 - row_dot(lambda, y)));

  const auto n = lambda.size();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix lhs_m = id - outer_star(fx, fy);
  const CMatrix rhs_m = p.delta_lambda_star * (id - outer_star(x, lambda)).inverse() * (id - outer_star(x, y)) *
                        (id - outer_star(lambda, y)).inverse() * p.delta_lambda_star;
  Eigen::JacobiSVD<CMatrix> svd(lhs_m - rhs_m);
  return {std::abs(lhs - rhs), svd.singularValues()(0)};
}

}  // namespace fockc
