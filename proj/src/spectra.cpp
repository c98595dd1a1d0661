#include "fockc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fockc/dynamics.hpp"

namespace fockc {

IterateSequence iterate_symbol(const SymbolTuple& phi, std::size_t k_max, const IterateOptions& opts) {
  if (!(phi.constant().norm() < 1.0)) throw PreconditionError("|phi(0)| must be < 1");
  const ScalarMap f(phi);
  IterateSequence seq{phi, {}, {}, {}, 0.0, false};
  QPoint z(phi.n(), QComplex(0));
  seq.orbit.push_back(z);
  seq.gaps.push_back(1.0);
  for (std::size_t k = 1; k <= k_max; ++k) {
    z = f(z);
    seq.orbit.push_back(z);
    const double gap = static_cast<double>(1 - sqrt(squared_norm(z)));
    seq.gaps.push_back(gap);
    if (gap < 1e-12) seq.boundary_attracted = true;
  }
  if (opts.series_degree > 0) {
    const SymbolTuple base = phi.truncated(opts.series_degree);
    seq.iterates.push_back(base);
    for (std::size_t k = 2; k <= k_max; ++k) {
      const SymbolTuple& prev = seq.iterates.back();
      if (prev.closed_form() && phi.closed_form()) {
        seq.iterates.push_back(SymbolTuple::from_linear_fractional(compose(*phi.closed_form(), *prev.closed_form()),
                                                                   opts.series_degree));
      } else {
        ComposeOptions co;
        co.outer_cap = opts.outer_cap;
        seq.iterates.push_back(compose_symbols(base, prev, co));
      }
    }
    for (std::size_t k = 1; k <= k_max; ++k) {
      const double d = (seq.iterates[k - 1].constant() - to_double(seq.orbit[k])).norm();
      seq.series_orbit_defect = std::max(seq.series_orbit_defect, d);
    }
  }
  return seq;
}

RadiusEstimate spectral_radius_estimate(const IterateSequence& seq) {
  const std::size_t k_max = seq.gaps.size() - 1;
  if (k_max < 2) throw PreconditionError("spectral radius estimate needs at least two iterates");
  RadiusEstimate r;
  for (std::size_t k = 1; k <= k_max; ++k) {
    r.root.push_back(std::pow(seq.gaps[k], -1.0 / (2.0 * static_cast<double>(k))));
  }
  for (std::size_t k = 1; k < k_max; ++k) r.ratio.push_back(std::sqrt(seq.gaps[k] / seq.gaps[k + 1]));
  r.root_tail = std::abs(r.root[r.root.size() - 1] - r.root[r.root.size() - 2]);
  r.ratio_tail = r.ratio.size() >= 2 ? std::abs(r.ratio[r.ratio.size() - 1] - r.ratio[r.ratio.size() - 2])
                                     : std::numeric_limits<double>::infinity();
  if (r.ratio_tail < 1e-4) {
    r.value = r.ratio.back();
    r.form = "ratio";
  } else {
    r.value = r.root.back();
    r.form = "root";
  }
  return r;
}

SchroederData schroeder_linear_data(const SymbolTuple& phi, const Point& xi, std::size_t degree,
                                    const SchroederOptions& opts) {
  if (!(xi.norm() < 1.0)) throw PreconditionError("fixed point must lie in the open ball");
  if (degree > phi.degree()) throw PreconditionError("degree exceeds the symbol degree");
  const ScalarMap f(phi);
  if ((f(xi) - xi).norm() > 1e-9) throw PreconditionError("supplied point is not a fixed point");
  SchroederData d{xi, SymbolTuple::identity(phi.n(), degree), {}, {}, 0.0, 0.0};
  const SymbolTuple base = phi.truncated(degree);

  if (xi.isZero(0.0)) {
    const SymbolTuple flip = phi_lambda(xi, degree);
    d.psi = compose_symbols(flip, compose_symbols(base, flip));
  } else if (phi.closed_form()) {
    const LinearFractional m = phi_lambda_map(xi);
    d.psi = SymbolTuple::from_linear_fractional(compose(m, compose(*phi.closed_form(), m)), degree);
  } else {
    const LinearFractional m = phi_lambda_map(xi);
    const double rho = xi.norm();
    const double scale = (m.b.norm() + m.a.norm()) / (std::abs(m.d) - m.c.norm());
    const auto needed = static_cast<std::size_t>(std::ceil(std::log(1e-14 / scale) / std::log(rho)));
    const std::size_t cap = opts.outer_cap.value_or(std::max(4 * degree, needed));
    ComposeOptions co;
    co.outer_cap = cap;
    const SymbolTuple mid = compose_symbols(base, phi_lambda(xi, degree), co);
    d.psi = compose_symbols(m, cap, mid, co);
  }
  d.conjugation_tail = d.psi.tail_bound();
  if (d.conjugation_tail > 1e-6) throw PreconditionError("conjugation tail bound exceeds 1e-6");
  d.psi_constant_norm = d.psi.constant().norm();
  if (d.psi_constant_norm > std::max(1e-8, 10 * d.conjugation_tail)) {
    throw PreconditionError("conjugated symbol does not fix the origin");
  }
  d.a = d.psi.linear_matrix();
  Eigen::ComplexEigenSolver<CMatrix> es(d.a);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) d.eigenvalues.push_back(es.eigenvalues()[i]);
  return d;
}

namespace {

void add_unique(std::vector<SpectrumPoint>& pts, Complex v, const std::string& prov) {
  for (const auto& p : pts) {
    if (std::abs(p.value - v) <= 1e-9) return;
  }
  pts.push_back({v, prov});
}

void products(const std::vector<Complex>& w, std::size_t start, std::size_t left, Complex acc, bool any,
              std::vector<SpectrumPoint>& pts) {
  if (any) add_unique(pts, acc, "product");
  if (left == 0) return;
  for (std::size_t i = start; i < w.size(); ++i) products(w, i, left - 1, acc * w[i], true, pts);
}

}  // namespace

std::vector<SpectrumPoint> compact_spectrum(const std::vector<Complex>& eigenvalues, std::size_t cap) {
  std::vector<SpectrumPoint> pts;
  add_unique(pts, 0.0, "product");
  add_unique(pts, 1.0, "product");
  products(eigenvalues, 0, cap, 1.0, false, pts);
  return pts;
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (const Complex& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && std::abs(x - b[j]) < best) {
        best = std::abs(x - b[j]);
        bi = j;
      }
    }
    used[bi] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

FiltrationEigenvalues filtration_eigenvalues(const CompOpMatrix& m, std::size_t m_len) {
  if (!m.exact) throw PreconditionError("filtration eigenvalues need phi(0) = 0 and exact coefficients");
  if (m_len > m.degree) throw PreconditionError("filtration level exceeds the matrix degree");
  FiltrationEigenvalues out;
  const CMatrix dense = m.dense();
  for (std::size_t k = 0; k <= m_len; ++k) {
    const auto lo = static_cast<Eigen::Index>(m.grading[k]);
    const auto len = static_cast<Eigen::Index>(m.grading[k + 1]) - lo;
    Eigen::ComplexEigenSolver<CMatrix> es(dense.block(lo, lo, len, len), false);
    for (Eigen::Index i = 0; i < len; ++i) out.matrix.push_back(es.eigenvalues()[i]);
  }
  Eigen::ComplexSchur<CMatrix> schur(m.symbol.linear_matrix());
  const CMatrix& t = schur.matrixT();
  const auto& e = *enumeration_for(m.n, m_len);
  for (WordIndex w = 0; w < e.total_dim(); ++w) {
    Complex p = 1.0;
    for (Letter l : e.word(w).letters()) p *= t(l, l);
    out.predicted.push_back(p);
  }
  out.match_defect = multiset_distance(out.matrix, out.predicted);
  return out;
}

std::uint64_t root_of_unity_order(Complex w, double tol, std::uint64_t order_cap) {
  if (std::abs(std::abs(w) - 1.0) > tol) return 0;
  const double theta = std::arg(w);
  for (std::uint64_t m = 1; m <= order_cap; ++m) {
    const Complex p = std::polar(1.0, static_cast<double>(m) * theta);
    if (std::abs(p - 1.0) <= tol) return m;
  }
  return 0;
}

AutomorphismSpectrum automorphism_spectrum(const AutomorphismSpec& spec) {
  const LinearFractional map = spec.map();
  const SymbolTuple sym = SymbolTuple::from_linear_fractional(map, 1);
  AutomorphismSpectrum out;
  const FixedPointResult fp = find_interior_fixed_point(sym);
  if (fp.status == FixedPointResult::Status::converged) {
    out.fixed_point = fp.point;
    LinearFractional psi = map;
    if (!fp.point.isZero(0.0)) {
      const LinearFractional conj = phi_lambda_map(fp.point);
      psi = compose(conj, compose(map, conj));
    }
    Eigen::ComplexEigenSolver<CMatrix> es(psi.a / psi.d);
    std::uint64_t order = 1;
    bool finite = true;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const Complex w = es.eigenvalues()[i];
      out.eigenvalues.push_back(w);
      const std::uint64_t o = root_of_unity_order(w);
      if (o == 0) {
        finite = false;
      } else {
        order = std::lcm(order, o);
      }
    }
    if (finite) {
      out.classification = "finite_subgroup";
      out.order = order;
      for (std::uint64_t j = 0; j < order && j < 10000; ++j) {
        out.points.push_back(std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(order)));
      }
    } else {
      out.classification = "unit_circle";
    }
    return out;
  }
  // No interior fixed point: radius certificate for the map and its inverse.
  const LinearFractional inv = LinearFractional::from_homogeneous(map.homogeneous().inverse());
  const SymbolTuple inv_sym = SymbolTuple::from_linear_fractional(inv, 1);
  out.radius = spectral_radius_estimate(iterate_symbol(sym, 60)).value;
  out.inverse_radius = spectral_radius_estimate(iterate_symbol(inv_sym, 60)).value;
  const bool unit = std::abs(out.radius - 1.0) <= 5e-2 && std::abs(out.inverse_radius - 1.0) <= 5e-2;
  out.classification = unit ? "contained_in_unit_circle" : "undetermined";
  return out;
}

}  // namespace fockc
