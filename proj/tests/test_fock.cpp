#include <doctest.h>

#include <cmath>

#include "fockc/fock.hpp"
#include "helpers.hpp"

using namespace fockc;
using fockc::testing::point;
using fockc::testing::series;
using fockc::testing::w;

TEST_CASE("basis vectors are orthonormal") {
  const FockVector a = FockVector::basis(2, 3, w({1, 2}));
  const FockVector b = FockVector::basis(2, 3, w({2, 1}));
  CHECK(inner_product(a, a) == Complex(1.0));
  CHECK(inner_product(a, b) == Complex(0.0));
}

TEST_CASE("kernel vectors reproduce point evaluation") {
  const Point mu = point({0.3, Complex(0, 0.4)});
  const FockVector f = FockVector::from_series(series(2, 4, {{w({1, 2}), 1.0}}));
  CHECK(std::abs(inner_product(f, kernel_vector(mu, 4).vector) - Complex(0, 0.12)) < 1e-15);

  const KernelVector z0 = kernel_vector(point({0.0, 0.0}), 5);
  CHECK(std::abs(z0.vector.norm() - 1.0) < 1e-15);
  CHECK(z0.vector.coefficient(w({})) == Complex(1.0));
}

TEST_CASE("kernel norm and certified tail") {
  // In one variable the degree-40 kernel is small; with two letters it would
  // have 2^41 entries, so there the check runs at degree 20.
  const KernelVector z = kernel_vector(point({0.5}), 40);
  CHECK(std::abs(z.vector.norm() * z.vector.norm() - 4.0 / 3.0) < 1e-10);
  // Geometric oracle for the omitted part.
  CHECK(std::abs(z.tail_bound - std::pow(0.25, 41) / 0.75) < 1e-30);
  const KernelVector z2 = kernel_vector(point({0.5, 0.0}), 20);
  CHECK(std::abs(z2.vector.norm() * z2.vector.norm() - 4.0 / 3.0) < 1e-10);
  CHECK(std::abs(z2.vector.norm() * z2.vector.norm() + z2.tail_bound - 4.0 / 3.0) < 1e-15);
  CHECK_THROWS_AS(kernel_vector(point({0.8, 0.6}), 3), PreconditionError);
}

TEST_CASE("left shift adjoints act on kernels as multiplication by the conjugate") {
  const std::size_t D = 10;
  const Point mu = point({0.3, Complex(0.1, -0.2)});
  const FockVector z = kernel_vector(mu, D).vector;
  const auto shifts = shift_matrices(2, D, ShiftSide::left);
  const GradedEnumeration e(2, D);
  for (std::size_t i = 0; i < 2; ++i) {
    const CVector lhs = shifts[i].matrix.adjoint() * z.coeffs();
    const CVector rhs = std::conj(mu[static_cast<Eigen::Index>(i)]) * z.coeffs();
    // The top length has no image under S_i, so only rows below it agree.
    const auto below = static_cast<Eigen::Index>(e.offset(D));
    CHECK((lhs.head(below) - rhs.head(below)).norm() < 1e-14);
  }
}

TEST_CASE("tail projection") {
  FockVector v = FockVector::vacuum(2, 3) + FockVector::basis(2, 3, w({1})) + FockVector::basis(2, 3, w({1, 2}));
  const FockVector p = tail_projection(v, 2);
  CHECK((p.coeffs() - FockVector::basis(2, 3, w({1, 2})).coeffs()).norm() == 0.0);
  CHECK((tail_projection(v, 0).coeffs() - v.coeffs()).norm() == 0.0);
  CHECK(tail_projection(v, 4).norm() == 0.0);
}

TEST_CASE("truncated shifts") {
  const auto s = shift_matrices(1, 2, ShiftSide::left);
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(1, 0) = 1.0;
  expected(2, 1) = 1.0;
  CHECK((CMatrix(s[0].matrix) - expected).norm() == 0.0);

  const std::size_t D = 3;
  const auto l = shift_matrices(2, D, ShiftSide::left);
  const GradedEnumeration e(2, D);
  const auto below = static_cast<Eigen::Index>(e.offset(D));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const CMatrix p = CMatrix(l[i].matrix.adjoint() * l[j].matrix).topLeftCorner(below, below);
      const CMatrix expect = i == j ? CMatrix(CMatrix::Identity(below, below)) : CMatrix(CMatrix::Zero(below, below));
      CHECK((p - expect).norm() == 0.0);
    }
  }

  const auto r = shift_matrices(2, D, ShiftSide::right);
  const FockVector x = FockVector::basis(2, D, w({1, 2}));
  const CVector rx = r[0].matrix * x.coeffs();
  CHECK((rx - FockVector::basis(2, D, w({1, 2, 1})).coeffs()).norm() == 0.0);
  const CVector lx = l[0].matrix * x.coeffs();
  CHECK((lx - FockVector::basis(2, D, w({1, 1, 2})).coeffs()).norm() == 0.0);
}

TEST_CASE("a polynomial of the shifts applied to the vacuum recovers its coefficients") {
  const NcSeries f = series(2, 3, {{w({}), 2.0}, {w({1, 2}), Complex(0, 1)}, {w({2, 2, 1}), -0.5}});
  const CVector applied = eval_at_shifts(f, 1.0, 3) * FockVector::vacuum(2, 3).coeffs();
  CHECK((applied - FockVector::from_series(f).coeffs()).norm() < 1e-15);
  CHECK((FockVector::from_series(f).to_series().to_dense() - f.to_dense()).norm() == 0.0);
}

TEST_CASE("dense dump header") {
  const auto s = shift_matrices(1, 2, ShiftSide::left);
  const std::string text = dump_dense(s[0]);
  CHECK(text.rfind("3 3\n", 0) == 0);
}
