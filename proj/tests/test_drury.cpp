#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fockc/compop.hpp"
#include "fockc/drury.hpp"
#include "fockc/moebius.hpp"
#include "helpers.hpp"

using namespace fockc;
using fockc::testing::matrix2;
using fockc::testing::series;
using fockc::testing::w;

namespace {

std::vector<Point> ball(std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, radius);
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) {
    Point p(2);
    p << Complex(g(rng), g(rng)), Complex(g(rng), g(rng));
    out.push_back(p * (u(rng) / p.norm()));
  }
  return out;
}

}  // namespace

TEST_CASE("multidegree counts") {
  CHECK(gamma_count({1, 1}) == 2);
  CHECK(gamma_count({0, 0, 0}) == 1);
  CHECK(gamma_count({2, 1}) == 3);
  CHECK(multidegree_of(w({1, 2, 1}), 2) == Multidegree{2, 1});
  const auto ks = enumerate_multidegrees(2, 2);
  const std::vector<Multidegree> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  CHECK(ks == expected);
}

TEST_CASE("symmetrization") {
  const FockVector s = symmetrize(FockVector::basis(2, 3, w({1, 2})));
  const FockVector expected = 0.5 * (FockVector::basis(2, 3, w({1, 2})) + FockVector::basis(2, 3, w({2, 1})));
  CHECK((s - expected).norm() < 1e-15);
  const FockVector wk = sym_basis_vector({2, 1}, 3);
  CHECK((symmetrize(wk) - wk).norm() < 1e-15);
  CHECK(std::abs(wk.norm() * wk.norm() - 1.0 / 3.0) < 1e-15);
  CHECK(symmetrize(FockVector::basis(2, 3, w({1, 2})) - FockVector::basis(2, 3, w({2, 1}))).norm() < 1e-15);
}

TEST_CASE("compressions of simple symbols") {
  const SymOpMatrix h = compress_composition(fockc::testing::half_scaling(3), 3);
  for (std::size_t i = 0; i < h.basis.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    CHECK(std::abs(h.matrix(ii, ii) - std::pow(0.5, total_degree(h.basis[i]))) < 1e-15);
  }
  CHECK((h.matrix - CMatrix(h.matrix.diagonal().asDiagonal())).norm() < 1e-15);

  const SymOpMatrix s = compress_composition(phi_unitary(matrix2(0, 1, 1, 0), 3), 3);
  for (std::size_t k = 0; k < s.basis.size(); ++k) {
    const Multidegree swapped{s.basis[k][1], s.basis[k][0]};
    const auto j = std::find(s.basis.begin(), s.basis.end(), swapped) - s.basis.begin();
    CHECK(std::abs(s.matrix(j, static_cast<Eigen::Index>(k)) - 1.0) < 1e-15);
  }
  CHECK(s.invariance_defect < 1e-15);
}

TEST_CASE("compression of a triangular contraction") {
  const SymbolTuple psi = SymbolTuple::linear(matrix2(0.5, 0.25, 0, 1.0 / 3), 4);
  const SymOpMatrix s = compress_composition(psi, 4);
  // Oracle: Q^* M Q with Q the orthonormal symmetric basis, from the full matrix.
  const CMatrix m = build_matrix(psi, 4).dense();
  CMatrix q(m.rows(), static_cast<Eigen::Index>(s.basis.size()));
  for (std::size_t k = 0; k < s.basis.size(); ++k) {
    q.col(static_cast<Eigen::Index>(k)) =
        std::sqrt(static_cast<double>(gamma_count(s.basis[k]))) * sym_basis_vector(s.basis[k], 4).coeffs();
  }
  CHECK((q.adjoint() * m * q - s.matrix).norm() < 1e-13);
  Eigen::BDCSVD<CMatrix> svd(s.matrix);
  CHECK(svd.singularValues()(0) <= 1.0 + 1e-10);
}

TEST_CASE("symmetric coordinates round trip") {
  const auto basis = enumerate_multidegrees(2, 3);
  CVector c(static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Complex(0.1 * static_cast<double>(i), -0.2);
  const FockVector f = from_sym_coordinates(c, basis, 2, 3);
  CHECK((sym_coordinates(f, basis) - c).norm() < 1e-14);
}

TEST_CASE("functional identity") {
  const NcSeries z1z2 = series(2, 3, {{w({1, 2}), 0.5}, {w({2, 1}), 0.5}});
  CHECK(functional_identity_defect(fockc::testing::half_scaling(3), z1z2, ball(16, 0.8, 1), 3) <= 1e-12);
  const NcSeries z1sq = series(2, 3, {{w({1, 1}), 1.0}});
  CHECK(functional_identity_defect(phi_unitary(matrix2(0, 1, 1, 0), 3), z1sq, ball(16, 0.8, 2), 3) <= 1e-12);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FockVector f(2, 3);
  for (const Multidegree& k : enumerate_multidegrees(2, 3)) f += Complex(u(rng), u(rng)) * sym_basis_vector(k, 3);
  const SymbolTuple psi = SymbolTuple::linear(matrix2(0.5, Complex(0, 0.2), -0.1, 0.4), 3);
  CHECK(functional_identity_defect(psi, f.to_series(), ball(64, 0.8, 3), 3) <= 1e-9);

  CHECK_THROWS_AS(functional_identity_defect(psi, series(2, 3, {{w({1, 2}), 1.0}}), ball(4, 0.5, 4), 3),
                  PreconditionError);
}

TEST_CASE("symmetric matrix dump layout") {
  const SymOpMatrix s = compress_composition(fockc::testing::half_scaling(1), 1);
  std::ostringstream os;
  write_sym_matrix_dump(os, s);
  const std::string d = os.str();
  CHECK(d.substr(0, 8) == "SYMFMAT1");
  CHECK(d.size() == 8 + 12 + 3 * 2 * 4 + 9 * 16);
}
