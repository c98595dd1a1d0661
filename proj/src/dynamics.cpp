#include "fockc/dynamics.hpp"

#include <cmath>
#include <random>

#include "fockc/scalar_map.hpp"

namespace fockc {

namespace {

Point newton_step(const ScalarMap& f, const Point& z) {
  const auto n = z.size();
  const Point fz = f(z);
  CMatrix jac(n, n);
  const double h = 1e-7;
  for (Eigen::Index j = 0; j < n; ++j) {
    Point zp = z;
    zp[j] += h;
    jac.col(j) = (f(zp) - fz) / h;
  }
  const CMatrix g = jac - CMatrix::Identity(n, n);
  return z - g.fullPivLu().solve(fz - z);
}

// Origin plus three seeded starting points in the ball of radius 1/2.
std::vector<Point> starting_points(std::size_t n, std::uint64_t seed) {
  std::vector<Point> out{Point::Zero(static_cast<Eigen::Index>(n))};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < 3; ++s) {
    Point z(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) z[static_cast<Eigen::Index>(i)] = Complex(gauss(rng), gauss(rng));
    z *= 0.5 * std::pow(unif(rng), 1.0 / static_cast<double>(2 * n)) / z.norm();
    out.push_back(z);
  }
  return out;
}

std::optional<Point> wolff_estimate(const ScalarMap& f, const Point& start, std::size_t max_iter, double tol) {
  if (f.has_closed_form()) {
    const QPoint z0 = to_quad(start);
    std::optional<Point> prev;
    for (unsigned j = 1; j <= 62; ++j) {
      const QPoint w = f.iterate(z0, 1ULL << j);
      const Quad nrm = sqrt(squared_norm(w));
      if (!(nrm > 1 - Quad(tol))) continue;
      Point dir = to_double(w) / static_cast<double>(nrm);
      if (prev && (dir - *prev).norm() < 1e-12) return dir;
      prev = dir;
    }
    return prev;
  }
  Point w = start;
  bool reached = false;
  for (std::size_t k = 0; k < max_iter; ++k) {
    w = f(w);
    if (w.norm() > 1.0 - tol) reached = true;
    if (w.norm() > kBoundaryEscape) break;
  }
  if (!reached) return std::nullopt;
  return Point(w / w.norm());
}

double ratio_at(const ScalarMap& f, const Point& z) {
  const QPoint w = f(to_quad(z));
  const Quad num = 1 - squared_norm(w);
  const Quad den = 1 - squared_norm(to_quad(z));
  return static_cast<double>(num / den);
}

void require_no_interior_fixed_point(const SymbolTuple& phi) {
  if (find_interior_fixed_point(phi).status == FixedPointResult::Status::converged) {
    throw PreconditionError("symbol has an interior fixed point");
  }
}

}  // namespace

FixedPointResult find_interior_fixed_point(const SymbolTuple& phi, std::size_t max_iter, double tol) {
  if (!(phi.constant().norm() < 1.0)) throw PreconditionError("|phi(0)| must be < 1");
  const ScalarMap f(phi);
  FixedPointResult r;
  // The residual is measured against 1 - |z|^2, so points creeping toward a
  // boundary fixed point (where |phi(z) - z| is tiny) are not accepted.
  auto accepted = [&](const Point& z, double res) { return res <= tol * (1.0 - z.squaredNorm()); };
  auto converge = [&](Point z, std::size_t iterations) {
    double res = (f(z) - z).norm();
    for (int k = 0; k < 3; ++k) {  // polish
      const Point next = newton_step(f, z);
      if (!next.allFinite()) break;
      const double next_res = (f(next) - next).norm();
      if (!(next_res < res)) break;
      z = next;
      res = next_res;
    }
    r.status = FixedPointResult::Status::converged;
    r.point = z;
    r.residual = res;
    r.iterations = iterations;
    return r;
  };
  Point z = Point::Zero(static_cast<Eigen::Index>(phi.n()));
  double t = 1.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;
  std::size_t it = 0;
  for (; it < max_iter; ++it) {
    const Point w = f(z);
    const double res = (w - z).norm();
    if (accepted(z, res)) return converge(z, it);
    if (w.norm() > kBoundaryEscape) {
      r.status = FixedPointResult::Status::boundary_escape;
      r.point = w;
      r.residual = res;
      r.iterations = it;
      return r;
    }
    if (res < 0.999 * best) {
      best = res;
      since_best = 0;
      t = std::min(1.0, t * 1.1);
    } else if (++since_best > 200) {
      break;  // stalled
    } else {
      t = std::max(1e-3, t * 0.5);
    }
    z = (1.0 - t) * z + t * w;
  }
  // Newton refinement from wherever the averaged orbit ended.
  for (int k = 0; k < 200; ++k, ++it) {
    const Point next = newton_step(f, z);
    if (!next.allFinite()) break;
    z = next;
    if (z.norm() > kBoundaryEscape) {
      r.status = FixedPointResult::Status::boundary_escape;
      r.point = z;
      r.residual = (f(z) - z).norm();
      r.iterations = it;
      return r;
    }
    if (accepted(z, (f(z) - z).norm())) return converge(z, it);
  }
  r.status = FixedPointResult::Status::inconclusive;
  r.point = z;
  r.residual = z.allFinite() ? (f(z) - z).norm() : std::numeric_limits<double>::infinity();
  r.iterations = it;
  return r;
}

WolffPointResult denjoy_wolff_point(const SymbolTuple& phi, std::size_t max_iter, double tol, std::uint64_t seed) {
  require_no_interior_fixed_point(phi);
  const ScalarMap f(phi);
  WolffPointResult r;
  for (const Point& s : starting_points(phi.n(), seed)) {
    auto est = wolff_estimate(f, s, max_iter, tol);
    if (!est) {
      r.diagnostics = "orbit did not approach the boundary within the iteration budget";
      return r;
    }
    r.seed_estimates.push_back(*est);
  }
  for (std::size_t i = 0; i < r.seed_estimates.size(); ++i) {
    for (std::size_t j = i + 1; j < r.seed_estimates.size(); ++j) {
      r.seed_spread = std::max(r.seed_spread, (r.seed_estimates[i] - r.seed_estimates[j]).norm());
    }
  }
  r.point = r.seed_estimates.front();
  r.conclusive = r.seed_spread <= 1e-6;
  if (!r.conclusive) r.diagnostics = "orbits from different seeds approach different boundary points";
  return r;
}

DilatationResult dilatation_coefficient(const SymbolTuple& phi, const Point& zeta, const std::vector<double>& radii) {
  if (radii.size() < 2) throw PreconditionError("dilatation estimate needs at least two radii");
  if (std::abs(zeta.norm() - 1.0) > 1e-9) throw PreconditionError("boundary point must have norm 1");
  require_no_interior_fixed_point(phi);
  const ScalarMap f(phi);
  DilatationResult r;
  r.radii = radii;
  r.min_ratio = std::numeric_limits<double>::infinity();
  for (double rad : radii) {
    const double q = ratio_at(f, rad * zeta);
    r.ratios.push_back(q);
    r.min_ratio = std::min(r.min_ratio, q);
  }
  const std::size_t m = radii.size();
  const double ha = 1.0 - radii[m - 2], hb = 1.0 - radii[m - 1];
  const double ra = r.ratios[m - 2], rb = r.ratios[m - 1];
  const double extrapolated = (rb * ha - ra * hb) / (ha - hb);
  if (std::abs(rb - ra) > 0.1 * std::abs(rb)) {
    r.diagnostics = "ratio changes by more than 10% between the two finest radii";
    r.alpha = rb;
    return r;
  }
  if (!(extrapolated > 0.0)) {
    r.diagnostics = "extrapolated ratio is not positive";
    r.alpha = rb;
    return r;
  }
  r.alpha = std::min(1.0, extrapolated);
  r.conclusive = true;
  return r;
}

std::string kind_name(ClassificationReport::Kind k) {
  switch (k) {
    case ClassificationReport::Kind::elliptic:
      return "elliptic";
    case ClassificationReport::Kind::parabolic:
      return "parabolic";
    case ClassificationReport::Kind::hyperbolic:
      return "hyperbolic";
    case ClassificationReport::Kind::inconclusive:
      break;
  }
  return "inconclusive";
}

ClassificationReport classify_symbol(const SymbolTuple& phi, double parabolic_threshold, std::uint64_t seed) {
  ClassificationReport r;
  r.parabolic_threshold = parabolic_threshold;
  const FixedPointResult fp = find_interior_fixed_point(phi);
  if (fp.status == FixedPointResult::Status::converged) {
    r.kind = ClassificationReport::Kind::elliptic;
    r.fixed_point = fp.point;
    r.diagnostics = "fixed point residual " + std::to_string(fp.residual);
    return r;
  }
  const WolffPointResult dw = denjoy_wolff_point(phi, 10000000, 1e-6, seed);
  if (!dw.conclusive) {
    r.diagnostics = dw.diagnostics;
    return r;
  }
  r.dw_point = dw.point;
  const DilatationResult dil = dilatation_coefficient(phi, dw.point);
  r.radii = dil.radii;
  r.ratios = dil.ratios;
  r.alpha = dil.alpha;
  if (!dil.conclusive) {
    r.diagnostics = dil.diagnostics;
    return r;
  }
  r.kind = dil.alpha >= parabolic_threshold ? ClassificationReport::Kind::parabolic
                                            : ClassificationReport::Kind::hyperbolic;
  return r;
}

void EllipsoidSpec::validate() const {
  if (std::abs(zeta.norm() - 1.0) > 1e-12) throw PreconditionError("ellipsoid boundary point must have norm 1");
  if (!(L > 0.0)) throw PreconditionError("ellipsoid parameter must be positive");
}

double EllipsoidSpec::margin(const Point& z) const {
  const Complex inner = (z.transpose() * zeta.conjugate())(0, 0);
  return std::norm(1.0 - inner) - L * (1.0 - z.squaredNorm());
}

InvarianceResult ellipsoid_invariance_check(const SymbolTuple& phi, const EllipsoidSpec& e, std::size_t samples,
                                            std::size_t iterates, std::uint64_t seed) {
  e.validate();
  if (static_cast<std::size_t>(e.zeta.size()) != phi.n()) throw PreconditionError("dimension mismatch");
  require_no_interior_fixed_point(phi);
  const ScalarMap f(phi);
  const std::size_t n = phi.n();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  InvarianceResult r;
  std::size_t accepted = 0;
  for (std::size_t attempt = 0; accepted < samples; ++attempt) {
    if (attempt > 10000000) throw PreconditionError("could not sample the ellipsoid");
    Point z(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) z[static_cast<Eigen::Index>(i)] = Complex(gauss(rng), gauss(rng));
    z *= std::pow(unif(rng), 1.0 / static_cast<double>(2 * n)) / z.norm();
    if (e.margin(z) > 0.0) continue;
    ++accepted;
    Point w = z;
    for (std::size_t k = 0; k < iterates; ++k) {
      w = f(w);
      const double m = e.margin(w);
      ++r.checked;
      r.worst_margin = std::max(r.worst_margin, m);
      if (m > 1e-10) ++r.violations;
    }
  }
  return r;
}

}  // namespace fockc
