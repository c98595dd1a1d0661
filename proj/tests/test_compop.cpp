#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fockc/compop.hpp"
#include "fockc/moebius.hpp"
#include "helpers.hpp"

using namespace fockc;
using fockc::testing::matrix2;
using fockc::testing::point;
using fockc::testing::series;
using fockc::testing::w;

namespace {

// Oracle for n = 1: columns are the truncated coefficient lists of the powers
// of the scalar function with coefficients c, computed by plain convolution.
CMatrix one_variable_matrix(const std::vector<Complex>& c, std::size_t D) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(D + 1), static_cast<Eigen::Index>(D + 1));
  std::vector<Complex> p(D + 1, 0.0);
  p[0] = 1.0;
  for (std::size_t k = 0; k <= D; ++k) {
    for (std::size_t i = 0; i <= D; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = p[i];
    std::vector<Complex> next(D + 1, 0.0);
    for (std::size_t i = 0; i <= D; ++i) {
      for (std::size_t j = 0; i + j <= D && j < c.size(); ++j) next[i + j] += p[i] * c[j];
    }
    p = next;
  }
  return m;
}

}  // namespace

TEST_CASE("matrices of simple symbols") {
  const CompOpMatrix id = build_matrix(SymbolTuple::identity(2, 3), 3);
  CHECK((id.dense() - CMatrix::Identity(15, 15)).norm() == 0.0);
  CHECK(id.exact);

  const CompOpMatrix half = build_matrix(fockc::testing::half_scaling(4), 4);
  const GradedEnumeration e(2, 4);
  CMatrix diag = CMatrix::Zero(31, 31);
  for (WordIndex i = 0; i < e.total_dim(); ++i) {
    diag(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = std::pow(0.5, e.length_of(i));
  }
  CHECK((half.dense() - diag).norm() < 1e-15);

  const CompOpMatrix swap = build_matrix(phi_unitary(matrix2(0, 1, 1, 0), 3), 3);
  for (const Word& u : enumerate_words(2, 3)) {
    std::vector<Letter> l;
    for (Letter x : u.letters()) l.push_back(1 - x);
    const auto col = static_cast<Eigen::Index>(e.index(u));
    const auto row = static_cast<Eigen::Index>(e.index(Word(l)));
    CHECK(swap.dense()(row, col) == Complex(1.0));
    CHECK(std::abs(swap.dense().col(col).norm() - 1.0) < 1e-15);
  }
}

TEST_CASE("one-variable matrices match power expansions") {
  const SymbolTuple phi = phi_lambda(point({0.5}), 20);
  std::vector<Complex> c;
  for (std::size_t k = 0; k <= 20; ++k) c.push_back(phi[0].coefficient(Word(std::vector<Letter>(k, 0))));
  const CompOpMatrix m = build_matrix(phi, 20);
  CHECK((m.dense() - one_variable_matrix(c, 20)).norm() < 1e-13);
  CHECK(m.entries_exact);
  CHECK_FALSE(m.exact);
}

TEST_CASE("matrix columns are products of the symbol") {
  const SymbolTuple phi = fockc::testing::triangular_example(4);
  const CompOpMatrix m = build_matrix(phi, 4);
  const GradedEnumeration e(2, 4);
  const NcSeries prod = cauchy_product(phi[1], phi[0]);  // phi_{g2 g1}
  const CVector col = m.dense().col(static_cast<Eigen::Index>(e.index(w({2, 1}))));
  CHECK((col - prod.to_dense()).norm() < 1e-15);
}

TEST_CASE("self-map checks") {
  CHECK_THROWS_AS(build_matrix(SymbolTuple::linear(matrix2(2.0, 0, 0, 1), 3), 3), PreconditionError);
  const SymbolTuple far({series(1, 2, {{w({}), 1.0}})});
  CHECK_THROWS_AS(build_matrix(far, 2), PreconditionError);
}

TEST_CASE("adjoint action") {
  const SymbolTuple half = fockc::testing::half_scaling(5);
  const FockVector one = adjoint_apply(half, FockVector::vacuum(2, 5));
  CHECK((one.coeffs() - FockVector::vacuum(2, 5).coeffs()).norm() < 1e-15);

  const SymbolTuple swap = phi_unitary(matrix2(0, 1, 1, 0), 3);
  const FockVector e2 = adjoint_apply(swap, FockVector::basis(2, 3, w({1})));
  CHECK((e2.coeffs() - FockVector::basis(2, 3, w({2})).coeffs()).norm() == 0.0);

  // Oracle: the conjugate transpose of the built matrix.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  const SymbolTuple phi = fockc::testing::triangular_example(5);
  CVector v(static_cast<Eigen::Index>(graded_dimension(2, 5)));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(g(rng), g(rng));
  const FockVector out = adjoint_apply(phi, FockVector(2, 5, v));
  const CVector oracle = build_matrix(phi, 5).dense().adjoint() * v;
  CHECK((out.coeffs() - oracle).norm() < 1e-12);
}

TEST_CASE("adjoint maps kernels to kernels") {
  const SymbolTuple phi = SymbolTuple::linear(matrix2(0.5, 0.25, Complex(0, 0.3), -0.4), 20);
  const Point mu = point({0.12, Complex(-0.05, 0.1)});
  const KernelVector z = kernel_vector(mu, 20);
  const FockVector lhs = adjoint_apply(phi, z.vector);
  const KernelVector target = kernel_vector(phi.eval_scalar(mu), 20);
  CHECK((lhs - target.vector).norm() <= 1e-9 + std::sqrt(z.tail_bound));
}

TEST_CASE("norms of symbols fixing the origin are one") {
  for (const SymbolTuple& phi : {fockc::testing::half_scaling(6), fockc::testing::triangular_example(6),
                                 phi_unitary(matrix2(0, 1, 1, 0), 6)}) {
    const NormReport r = operator_norm_estimate(build_matrix(phi, 6));
    CHECK(std::abs(r.estimate - 1.0) < 1e-9);
    CHECK(r.sandwich_ok);
    CHECK_FALSE(r.estimate_is_lower_bound);
  }
}

TEST_CASE("unitary matrices are isometric") {
  const Complex a = std::polar(1.0, 0.4);
  const CMatrix u = matrix2(a * 0.6, 0.8, -0.8 * a, 0.6);
  REQUIRE(unitarity_defect(u) < 1e-15);
  const CMatrix m = build_matrix(phi_unitary(u, 5), 5).dense();
  CHECK((m.adjoint() * m - CMatrix::Identity(m.cols(), m.cols())).norm() < 1e-12);
}

TEST_CASE("one-variable involution norms increase toward the closed form") {
  const double limit = std::sqrt(3.0);
  double prev = 0.0;
  for (std::size_t D : {5, 10, 20, 40}) {
    const CompOpMatrix m = build_matrix(phi_lambda(point({0.5}), D), D);
    const NormReport r = operator_norm_estimate(m);
    CHECK(r.estimate >= prev - 1e-12);
    CHECK(r.estimate <= limit + 1e-9);
    CHECK(std::abs(r.upper_bound - limit) < 1e-12);
    CHECK(r.estimate_is_lower_bound);
    // Oracle: dense singular values of the power-expansion matrix.
    std::vector<Complex> c;
    const SymbolTuple phi = phi_lambda(point({0.5}), D);
    for (std::size_t k = 0; k <= D; ++k) c.push_back(phi[0].coefficient(Word(std::vector<Letter>(k, 0))));
    Eigen::BDCSVD<CMatrix> svd(one_variable_matrix(c, D));
    CHECK(std::abs(svd.singularValues()(0) - r.estimate) < 1e-10);
    prev = r.estimate;
  }
}

TEST_CASE("sampled lower bound never exceeds the closed form") {
  const auto [lb, at] = sampled_norm_lower_bound(phi_lambda(point({0.5}), 10), 256, 0.95);
  CHECK(lb <= std::sqrt(3.0) + 1e-12);
  CHECK(lb > 1.5);
  CHECK(at.norm() <= 0.95 + 1e-12);
}

TEST_CASE("largest singular value by power iteration") {
  const CompOpMatrix m = build_matrix(fockc::testing::triangular_example(6), 6);
  CHECK(std::abs(largest_singular_value(m.matrix, 1) - largest_singular_value(m.matrix)) < 1e-8);
}

TEST_CASE("essential norm proxy") {
  const CompOpMatrix u = build_matrix(phi_unitary(matrix2(0, 1, 1, 0), 6), 6);
  for (double v : essential_norm_proxy(u, {0, 1, 2, 3, 4, 5, 6})) CHECK(std::abs(v - 1.0) < 1e-12);

  const CompOpMatrix h = build_matrix(fockc::testing::half_scaling(10), 10);
  std::vector<std::size_t> ks;
  for (std::size_t k = 0; k <= 10; ++k) ks.push_back(k);
  const auto proxy = essential_norm_proxy(h, ks);
  for (std::size_t k = 0; k <= 10; ++k) CHECK(proxy[k] <= std::pow(0.5, k) * 2.0 / std::sqrt(3.0) + 1e-12);
  CHECK(std::abs(proxy[0] - operator_norm_estimate(h).estimate) < 1e-12);
}

TEST_CASE("Hilbert-Schmidt sums") {
  const HilbertSchmidtReport h = hilbert_schmidt_sum(fockc::testing::half_scaling(30), 30);
  CHECK(std::abs(h.sum - 2.0) < 1e-6);
  CHECK(h.hilbert_schmidt);
  const HilbertSchmidtReport t = hilbert_schmidt_sum(SymbolTuple::linear(matrix2(0, 1.0 / 3, 1.0 / 3, 0), 30), 30);
  CHECK(std::abs(t.sum - 9.0 / 7.0) < 1e-6);
  const HilbertSchmidtReport id = hilbert_schmidt_sum(SymbolTuple::identity(2, 8), 8);
  CHECK(id.sum == doctest::Approx(static_cast<double>(graded_dimension(2, 8))));
  CHECK_FALSE(id.hilbert_schmidt);
  // A nonlinear symbol goes through word enumeration; oracle: the matrix.
  const CompOpMatrix m = build_matrix(fockc::testing::triangular_example(5), 5);
  CHECK(std::abs(hilbert_schmidt_sum(fockc::testing::triangular_example(5), 5).sum - m.dense().squaredNorm()) <
        1e-12);
}

TEST_CASE("normality") {
  CHECK(normality_check(SymbolTuple::linear(matrix2(0.5, 0, 0, 1.0 / 3), 4)).normal);
  const SymbolTuple quad({series(2, 4, {{w({2}), 1.0}}), series(2, 4, {{w({1, 1}), 0.5}})});
  CHECK_FALSE(normality_check(quad).normal);
  CHECK_FALSE(normality_check(SymbolTuple::linear(matrix2(0, 1, 0, 0), 4)).normal);
}

TEST_CASE("binary matrix dump layout") {
  const CompOpMatrix m = build_matrix(fockc::testing::half_scaling(1), 1);
  std::ostringstream os;
  write_matrix_dump(os, m);
  const std::string s = os.str();
  CHECK(s.substr(0, 8) == "FOCKMAT1");
  CHECK(s.size() == 8 + 4 + 4 + 9 * 16);
  CHECK(static_cast<unsigned char>(s[8]) == 2);
}

TEST_CASE("adjoint of linear symbols matches the matrix adjoint") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (std::size_t n : {2, 3}) {
    const auto nn = static_cast<Eigen::Index>(n);
    CMatrix a(nn, nn);
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = Complex(g(rng), g(rng));
    a /= 2.0 * a.norm();
    const std::size_t D = 4;
    const SymbolTuple phi = SymbolTuple::linear(a, D);
    CVector v(static_cast<Eigen::Index>(graded_dimension(n, D)));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(g(rng), g(rng));
    const FockVector out = adjoint_apply(phi, FockVector(n, D, v));
    const CVector oracle = build_matrix(phi, D).dense().adjoint() * v;
    CHECK((out.coeffs() - oracle).norm() < 1e-12);
  }
}
