#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fockc/moebius.hpp"
#include "helpers.hpp"

using namespace fockc;
using fockc::testing::matrix2;
using fockc::testing::point;
using fockc::testing::w;

namespace {

double symbol_diff(const SymbolTuple& a, const SymbolTuple& b, std::size_t degree) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.n(); ++j) {
    const CVector da = a[j].truncated(degree).to_dense(), db = b[j].truncated(degree).to_dense();
    worst = std::max(worst, (da - db).cwiseAbs().maxCoeff());
  }
  return worst;
}

// The classical ball automorphism (lambda - P z - s Q z)/(1 - <z, lambda>),
// P the projection onto lambda, Q = I - P, s = (1 - |lambda|^2)^{1/2}.
Point classical_involution(const Point& lambda, const Point& z) {
  const double r2 = lambda.squaredNorm();
  const Complex zl = lambda.dot(z);  // conj(lambda) . z = <z, lambda>
  const Point pz = r2 > 0 ? Point(lambda * (zl / r2)) : Point(Point::Zero(z.size()));
  const Point qz = z - pz;
  return (lambda - pz - std::sqrt(1.0 - r2) * qz) / (1.0 - zl);
}

Point random_point(std::mt19937_64& rng, std::size_t n, double radius) {
  std::normal_distribution<double> g;
  Point p(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = Complex(g(rng), g(rng));
  std::uniform_real_distribution<double> u(0.0, radius);
  return p * (u(rng) / p.norm());
}

}  // namespace

TEST_CASE("phi at the origin is minus the identity") {
  const SymbolTuple phi = phi_lambda(point({0.0, 0.0}), 5);
  CHECK(symbol_diff(phi, SymbolTuple::linear(-CMatrix::Identity(2, 2), 5), 5) == 0.0);
  CHECK(phi.exact());
}

TEST_CASE("one-variable coefficients follow long division of (1/2 - z)/(1 - z/2)") {
  const std::size_t D = 12;
  // Long division oracle: q_k = num_k + q_{k-1}/2.
  std::vector<double> q(D + 1), num(D + 1, 0.0);
  num[0] = 0.5;
  num[1] = -1.0;
  for (std::size_t k = 0; k <= D; ++k) q[k] = num[k] + (k > 0 ? 0.5 * q[k - 1] : 0.0);
  const SymbolTuple phi = phi_lambda(point({0.5}), D);
  for (std::size_t k = 0; k <= D; ++k) {
    CHECK(std::abs(phi[0].coefficient(Word(std::vector<Letter>(k, 0))) - q[k]) < 1e-14);
  }
  CHECK(std::abs(q[1] + 0.75) < 1e-15);
  CHECK(std::abs(q[2] + 0.375) < 1e-15);
}

TEST_CASE("phi swaps the origin and lambda") {
  const Point lambda = point({0.3, Complex(0, -0.2)});
  CHECK((phi_lambda_eval(lambda, point({0.0, 0.0})) - lambda).norm() < 1e-12);
  CHECK(phi_lambda_eval(lambda, lambda).norm() < 1e-12);
  // Truncation error of the section at lambda is about |lambda|^{2D}.
  const SymbolTuple phi = phi_lambda(lambda, 16);
  CHECK((phi.eval_scalar(point({0.0, 0.0})) - lambda).norm() < 1e-12);
  CHECK(phi.eval_scalar(lambda).norm() < 1e-12);
}

TEST_CASE("phi agrees with the classical ball automorphism") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Point lambda = random_point(rng, 3, 0.9);
    const Point z = random_point(rng, 3, 0.9);
    CHECK((phi_lambda_eval(lambda, z) - classical_involution(lambda, z)).norm() < 1e-12);
  }
}

TEST_CASE("unitary symbols") {
  CHECK(symbol_diff(phi_unitary(CMatrix::Identity(2, 2), 3), SymbolTuple::identity(2, 3), 3) == 0.0);
  const SymbolTuple swap = phi_unitary(matrix2(0, 1, 1, 0), 3);
  CHECK(swap[0].coefficient(w({2})) == Complex(1.0));
  CHECK(swap[1].coefficient(w({1})) == Complex(1.0));
  const Complex rot = std::polar(1.0, std::numbers::pi / 3);
  const SymbolTuple r = phi_unitary(matrix2(rot, 0, 0, 1), 3);
  CHECK(std::abs(r[0].coefficient(w({1})) - rot) < 1e-15);
  CHECK(r[1].coefficient(w({2})) == Complex(1.0));
  CHECK_THROWS_AS(phi_unitary(matrix2(0.5, 0, 0, 1), 3), PreconditionError);
  std::string warning;
  CHECK_NOTHROW(phi_unitary(matrix2(0.5, 0, 0, 1), 3, UnitaryCheck::allow_contraction, &warning));
  CHECK_FALSE(warning.empty());
}

TEST_CASE("unitary composed with its adjoint is the identity") {
  const Complex a = std::polar(1.0, 0.7), b = std::polar(1.0, -1.1);
  const CMatrix u = matrix2(a / std::sqrt(2.0), b / std::sqrt(2.0), -std::conj(b) / std::sqrt(2.0),
                            std::conj(a) / std::sqrt(2.0));
  REQUIRE(unitarity_defect(u) < 1e-15);
  const SymbolTuple c = compose_symbols(phi_unitary(u, 4), phi_unitary(u.adjoint(), 4));
  CHECK(symbol_diff(c, SymbolTuple::identity(2, 4), 4) < 1e-15);
}

TEST_CASE("scaling composes multiplicatively") {
  const SymbolTuple h = fockc::testing::half_scaling(3);
  const SymbolTuple c = compose_symbols(h, h);
  CHECK(symbol_diff(c, SymbolTuple::linear(matrix2(0.25, 0, 0, 0.25), 3), 3) == 0.0);
  CHECK(c.exact());
}

TEST_CASE("phi is an involution") {
  const Point lambda = point({0.3, 0.1});
  ComposeOptions opts;
  opts.outer_cap = 60;
  opts.result_degree = 3;
  const SymbolTuple c = compose_symbols(phi_lambda_map(lambda), 40, phi_lambda(lambda, 3), opts);
  CHECK(symbol_diff(c, SymbolTuple::identity(2, 3), 3) < 1e-8);
  CHECK(c.tail_bound() < 1e-8);
}

TEST_CASE("structured and generic composition agree") {
  const Point lambda = point({0.3, Complex(0.1, 0.2)});
  for (std::size_t outer_degree : {std::size_t{2}, std::size_t{5}, std::size_t{8}}) {
    ComposeOptions opts;
    opts.outer_cap = 8;
    opts.result_degree = 3;
    const SymbolTuple inner = phi_lambda(lambda, 3);
    const SymbolTuple generic = compose_symbols(phi_lambda(lambda, outer_degree), inner, opts);
    const SymbolTuple structured = compose_symbols(phi_lambda_map(lambda), outer_degree, inner, opts);
    CHECK(symbol_diff(generic, structured, 3) < 1e-13);
  }
  // Inner symbol vanishing at the origin: both routes are exact.
  const SymbolTuple inner = fockc::testing::triangular_example(4);
  const SymbolTuple g = compose_symbols(phi_lambda(lambda, 4), inner);
  const SymbolTuple s = compose_symbols(phi_lambda_map(lambda), 4, inner);
  CHECK(symbol_diff(g, s, 4) < 1e-14);
}

TEST_CASE("automorphism maps are the composition of the involution and the unitary") {
  AutomorphismSpec spec{point({0.2, Complex(0, 0.3)}), matrix2(0, 1, 1, 0)};
  spec.validate();
  const Point z = point({0.1, -0.4});
  const Point via_map = spec.map()(z);
  const Point manual = phi_lambda_eval(spec.lambda, point({z[1], z[0]}));
  CHECK((via_map - manual).norm() < 1e-14);
  AutomorphismSpec bad{point({0.8, 0.8}), CMatrix::Identity(2, 2)};
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("defects of the kernel identities") {
  const Point lambda = point({0.3, Complex(0, 0.2)});
  const Point zero = point({0.0, 0.0});
  CHECK(moebius_identity_defect(lambda, zero, zero).scalar < 1e-15);
  const IdentityDefect at_lambda = moebius_identity_defect(lambda, lambda, lambda);
  CHECK(at_lambda.scalar <= 1e-10);
  CHECK(at_lambda.matrix <= 1e-10);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const Point l = random_point(rng, 2, 0.5), x = random_point(rng, 2, 0.5), y = random_point(rng, 2, 0.5);
    const IdentityDefect d = moebius_identity_defect(l, x, y, 40);
    CHECK(d.scalar <= 1e-8);
    CHECK(d.matrix <= 1e-8);
  }
}
