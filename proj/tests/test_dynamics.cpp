#include <doctest.h>

#include <cmath>

#include "fockc/dynamics.hpp"
#include "helpers.hpp"

using namespace fockc;
using fockc::testing::lft1;
using fockc::testing::matrix2;
using fockc::testing::point;
using fockc::testing::series;
using fockc::testing::w;

namespace {

SymbolTuple hyperbolic(std::size_t degree = 8) { return lft1(1.0, 0.5, 0.5, 1.0, degree); }
SymbolTuple parabolic(std::size_t degree = 8) { return lft1(1.0, 1.0, -1.0, 3.0, degree); }

// (1/2 X1 + 1/4, 1/2 X2)
SymbolTuple shifted_half(std::size_t degree = 4) {
  return SymbolTuple({series(2, degree, {{w({}), 0.25}, {w({1}), 0.5}}), series(2, degree, {{w({2}), 0.5}})});
}

}  // namespace

TEST_CASE("orbit oracle for the hyperbolic map") {
  // Direct scalar iteration: 1/2, 4/5, 13/14, ...
  const SymbolTuple phi = hyperbolic();
  Point z = point({0.0});
  const double expected[] = {0.5, 0.8, 13.0 / 14.0};
  for (double e : expected) {
    z = phi.closed_form()->operator()(z);
    CHECK(std::abs(z[0] - e) < 1e-15);
  }
}

TEST_CASE("interior fixed points") {
  const FixedPointResult a = find_interior_fixed_point(shifted_half());
  REQUIRE(a.status == FixedPointResult::Status::converged);
  CHECK((a.point - point({0.5, 0.0})).norm() < 1e-12);
  CHECK(find_interior_fixed_point(parabolic()).status == FixedPointResult::Status::boundary_escape);
  CHECK(a.residual <= 1e-12);
  const FixedPointResult b = find_interior_fixed_point(fockc::testing::half_scaling(3));
  CHECK(b.point.norm() < 1e-14);
  CHECK(find_interior_fixed_point(hyperbolic()).status == FixedPointResult::Status::boundary_escape);
}

TEST_CASE("Denjoy-Wolff points") {
  for (const SymbolTuple& phi : {hyperbolic(), parabolic()}) {
    const WolffPointResult r = denjoy_wolff_point(phi);
    REQUIRE(r.conclusive);
    CHECK((r.point - point({1.0})).norm() < 1e-6);
  }
  const SymbolTuple affine({series(2, 2, {{w({}), 0.5}, {w({1}), 0.5}}), NcSeries(2, 2)});
  const WolffPointResult r = denjoy_wolff_point(affine);
  REQUIRE(r.conclusive);
  CHECK((r.point - point({1.0, 0.0})).norm() < 1e-6);
}

TEST_CASE("dilatation coefficients") {
  // Angular derivative oracle: phi'(1) = (1 - a)/(1 + a) for (z + a)/(1 + a z), and 1 for (1 + z)/(3 - z).
  const DilatationResult h = dilatation_coefficient(hyperbolic(), point({1.0}));
  REQUIRE(h.conclusive);
  CHECK(std::abs(h.alpha - 1.0 / 3.0) < 1e-3);
  const DilatationResult p = dilatation_coefficient(parabolic(), point({1.0}));
  REQUIRE(p.conclusive);
  CHECK(std::abs(p.alpha - 1.0) < 1e-3);
}

TEST_CASE("classification") {
  const ClassificationReport e = classify_symbol(fockc::testing::half_scaling(3));
  CHECK(kind_name(e.kind) == "elliptic");
  REQUIRE(e.fixed_point);
  CHECK(e.fixed_point->norm() < 1e-12);

  const ClassificationReport h = classify_symbol(hyperbolic());
  CHECK(kind_name(h.kind) == "hyperbolic");
  REQUIRE(h.alpha);
  CHECK(std::abs(*h.alpha - 1.0 / 3.0) < 1e-3);

  const ClassificationReport p = classify_symbol(parabolic());
  CHECK(kind_name(p.kind) == "parabolic");
  REQUIRE(p.alpha);
  CHECK(std::abs(*p.alpha - 1.0) < 1e-3);
}

TEST_CASE("horospherical ellipsoids are invariant") {
  for (double L : {0.5, 1.0, 2.0}) {
    const EllipsoidSpec e{point({1.0}), L};
    CHECK(ellipsoid_invariance_check(parabolic(), e).violations == 0);
    const InvarianceResult r = ellipsoid_invariance_check(hyperbolic(), e);
    CHECK(r.violations == 0);
    CHECK(r.checked == 200 * 5);
  }
  CHECK_THROWS_AS(ellipsoid_invariance_check(fockc::testing::half_scaling(3), EllipsoidSpec{point({1.0, 0.0}), 1.0}),
                  PreconditionError);
  CHECK_THROWS_AS(EllipsoidSpec({point({0.5}), 1.0}).validate(), PreconditionError);
  const EllipsoidSpec from_c = EllipsoidSpec::from_c(point({1.0}), 0.5);
  CHECK(std::abs(from_c.L - 1.0) < 1e-15);
  CHECK(from_c.margin(point({0.0})) <= 0.0);
}
