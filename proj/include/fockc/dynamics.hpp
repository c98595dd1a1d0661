#pragma once

// Dynamics of the scalar self-map z -> phi(z) of the unit ball of C^n:
// interior fixed points, the Denjoy-Wolff point, the dilatation coefficient
// at it, and invariance of the horospherical ellipsoids
//   E(L, zeta) = {z : |1 - <z, zeta>|^2 <= L (1 - |z|^2)}.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fockc/series.hpp"

namespace fockc {

// Points with norm above this are treated as having reached the boundary.
inline constexpr double kBoundaryEscape = 1.0 - 1e-9;

struct FixedPointResult {
  enum class Status { converged, boundary_escape, inconclusive };
  Status status = Status::inconclusive;
  Point point;
  double residual = 0;
  std::size_t iterations = 0;
};

// Damped Picard iteration z <- (1-t) z + t phi(z) from the origin, with a
// Newton refinement (finite-difference Jacobian) when it stalls.
FixedPointResult find_interior_fixed_point(const SymbolTuple& phi, std::size_t max_iter = 20000, double tol = 1e-12);

struct WolffPointResult {
  bool conclusive = false;
  Point point;
  double seed_spread = 0;  // largest distance between the estimates from the seeds
  std::vector<Point> seed_estimates;
  std::string diagnostics;
};

// Normalized limit of orbits from the origin and three seeded random starts.
// Closed-form symbols are iterated 2^j steps at a time in quad precision.
WolffPointResult denjoy_wolff_point(const SymbolTuple& phi, std::size_t max_iter = 10000000, double tol = 1e-6,
                                    std::uint64_t seed = 1);

struct DilatationResult {
  bool conclusive = false;
  double alpha = 0;  // extrapolated to r = 1, clamped to (0, 1]
  double min_ratio = 0;
  std::vector<double> radii;
  std::vector<double> ratios;
  std::string diagnostics;
};

// Ratios (1 - |phi(r zeta)|^2)/(1 - r^2) at the given radii, extrapolated
// linearly in 1 - r from the two finest radii.
DilatationResult dilatation_coefficient(const SymbolTuple& phi, const Point& zeta,
                                        const std::vector<double>& radii = {0.9, 0.99, 0.999, 0.9999});

struct ClassificationReport {
  enum class Kind { elliptic, parabolic, hyperbolic, inconclusive };
  Kind kind = Kind::inconclusive;
  std::optional<Point> fixed_point;
  std::optional<Point> dw_point;
  std::optional<double> alpha;
  double parabolic_threshold = 0.99;
  std::vector<double> radii;
  std::vector<double> ratios;
  std::string diagnostics;
};

std::string kind_name(ClassificationReport::Kind k);

ClassificationReport classify_symbol(const SymbolTuple& phi, double parabolic_threshold = 0.99,
                                     std::uint64_t seed = 1);

struct EllipsoidSpec {
  Point zeta;   // |zeta| = 1
  double L = 1;  // > 0

  static EllipsoidSpec from_c(const Point& zeta, double c) { return {zeta, c / (1.0 - c)}; }
  void validate() const;
  // |1 - <z, zeta>|^2 - L (1 - |z|^2); nonpositive inside.
  double margin(const Point& z) const;
};

struct InvarianceResult {
  std::size_t violations = 0;
  std::size_t checked = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
};

// Samples `samples` points of E(L, zeta) and checks that phi and its
// iterates up to `iterates` keep them inside (slack 1e-10). Refuses symbols
// with an interior fixed point.
InvarianceResult ellipsoid_invariance_check(const SymbolTuple& phi, const EllipsoidSpec& e, std::size_t samples = 200,
                                            std::size_t iterates = 5, std::uint64_t seed = 1);

}  // namespace fockc
