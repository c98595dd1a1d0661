#include "fockc/cli.hpp"

#include <fstream>
#include <ostream>
#include <random>

#include "fockc/compop.hpp"
#include "fockc/drury.hpp"
#include "fockc/dynamics.hpp"
#include "fockc/io.hpp"
#include "fockc/selftest.hpp"
#include "fockc/spectra.hpp"

namespace fockc {

namespace {

class Inconclusive : public Error {
 public:
  using Error::Error;
};

Json config_json(const RunConfig& c) {
  Json j{{"subcommand", c.subcommand}, {"symbol", c.symbol},   {"degree", c.degree},
         {"tol", c.tol},               {"samples", c.samples}, {"seed", c.seed}};
  if (c.outer_cap) j["outer_cap"] = *c.outer_cap;
  if (!c.mode.empty()) j["mode"] = c.mode;
  if (c.subcommand == "spectrum") j["cap"] = c.cap;
  if (c.subcommand == "radius") j["iterations"] = c.iterations;
  if (c.subcommand == "essnorm") j["ks"] = c.ks;
  if (c.subcommand == "selftest") j["cases"] = c.cases;
  return j;
}

Json points_json(const std::vector<SpectrumPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(Json{{"re", p.value.real()}, {"im", p.value.imag()}, {"provenance", p.provenance}});
  return a;
}

Json values_json(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (Complex z : v) a.push_back(complex_to_json(z));
  return a;
}

void write_dump(const std::string& path, const CompOpMatrix& m) {
  if (path.empty()) return;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  write_matrix_dump(os, m);
}

Json cmd_norm(const RunConfig& c) {
  const SymbolTuple phi = resolve_symbol(c.symbol, c.degree);
  const CompOpMatrix m = build_matrix(phi, c.degree);
  write_dump(c.dump, m);
  NormOptions opts;
  opts.samples = c.samples;
  const NormReport r = operator_norm_estimate(m, opts);
  return Json{{"estimate", r.estimate},
              {"lower_bound", r.lower_bound},
              {"lower_bound_point", point_to_json(r.lower_bound_point)},
              {"upper_bound", r.upper_bound},
              {"sandwich_ok", r.sandwich_ok},
              {"estimate_is_lower_bound", r.estimate_is_lower_bound},
              {"exact", m.exact},
              {"dim", m.dim()},
              {"tail_bound", phi.tail_bound()}};
}

Point fixed_point_or_throw(const SymbolTuple& phi) {
  const FixedPointResult fp = find_interior_fixed_point(phi);
  if (fp.status != FixedPointResult::Status::converged) throw Inconclusive("no interior fixed point found");
  return fp.point;
}

Json cmd_spectrum(const RunConfig& c) {
  const std::string mode = c.mode.empty() ? "compact" : c.mode;
  if (mode == "automorphism") {
    const AutomorphismSpectrum s = automorphism_spectrum(resolve_automorphism(c.symbol));
    Json pts = Json::array();
    for (Complex z : s.points) pts.push_back(Json{{"re", z.real()}, {"im", z.imag()}, {"provenance", "product"}});
    Json j{{"zero_included", false},
           {"one_included", true},
           {"points", pts},
           {"classification", s.classification},
           {"eigenvalues", values_json(s.eigenvalues)}};
    if (s.order) j["order"] = s.order;
    if (s.fixed_point) j["fixed_point"] = point_to_json(*s.fixed_point);
    if (!s.fixed_point) {
      j["radius"] = s.radius;
      j["inverse_radius"] = s.inverse_radius;
    }
    return j;
  }
  const SymbolTuple phi = resolve_symbol(c.symbol, c.degree);
  if (mode == "filtration") {
    const CompOpMatrix m = build_matrix(phi, c.degree);
    const FiltrationEigenvalues f = filtration_eigenvalues(m, std::min(c.cap, c.degree));
    std::vector<SpectrumPoint> pts;
    for (Complex z : f.matrix) pts.push_back({z, "matrix"});
    return Json{{"zero_included", false},
                {"one_included", true},
                {"points", points_json(pts)},
                {"classification", "products"},
                {"predicted", values_json(f.predicted)},
                {"match_defect", f.match_defect}};
  }
  if (mode == "compact" || mode == "schroeder") {
    const Point xi = fixed_point_or_throw(phi);
    SchroederOptions so;
    so.outer_cap = c.outer_cap;
    const SchroederData d = schroeder_linear_data(phi, xi, c.degree, so);
    Json j{{"fixed_point", point_to_json(xi)},
           {"linear_part", matrix_to_json(d.a)},
           {"eigenvalues", values_json(d.eigenvalues)},
           {"conjugation_tail", d.conjugation_tail}};
    if (mode == "compact") {
      j["zero_included"] = true;
      j["one_included"] = true;
      j["points"] = points_json(compact_spectrum(d, c.cap));
      j["classification"] = "products";
    }
    return j;
  }
  throw PreconditionError("unknown spectrum mode \"" + mode + "\"");
}

Json cmd_classify(const RunConfig& c) {
  const SymbolTuple phi = resolve_symbol(c.symbol, c.degree);
  const ClassificationReport r = classify_symbol(phi, 0.99, c.seed);
  Json j{{"kind", kind_name(r.kind)}};
  j["fixed_point"] = r.fixed_point ? point_to_json(*r.fixed_point) : Json(nullptr);
  j["dw_point"] = r.dw_point ? point_to_json(*r.dw_point) : Json(nullptr);
  j["alpha"] = r.alpha ? Json(*r.alpha) : Json(nullptr);
  j["diagnostics"] = Json{{"threshold", r.parabolic_threshold}, {"radii", r.radii}, {"ratios", r.ratios},
                          {"message", r.diagnostics}};
  if (r.kind == ClassificationReport::Kind::inconclusive) {
    throw Inconclusive(j.dump());
  }
  return j;
}

Json cmd_radius(const RunConfig& c) {
  const SymbolTuple phi = resolve_symbol(c.symbol, c.degree);
  IterateOptions io;
  io.series_degree = std::min<std::size_t>(c.degree, 3);
  io.outer_cap = c.outer_cap;
  const IterateSequence seq = iterate_symbol(phi, c.iterations, io);
  const RadiusEstimate r = spectral_radius_estimate(seq);
  return Json{{"value", r.value},
              {"form", r.form},
              {"root", r.root},
              {"ratio", r.ratio},
              {"root_tail", r.root_tail},
              {"ratio_tail", r.ratio_tail},
              {"boundary_attracted", seq.boundary_attracted},
              {"series_orbit_defect", seq.series_orbit_defect}};
}

Json cmd_essnorm(const RunConfig& c) {
  const SymbolTuple phi = resolve_symbol(c.symbol, c.degree);
  const CompOpMatrix m = build_matrix(phi, c.degree);
  std::vector<std::size_t> ks = c.ks;
  if (ks.empty()) {
    for (std::size_t k = 0; k <= c.degree; ++k) ks.push_back(k);
  }
  return Json{{"ks", ks}, {"proxy", essential_norm_proxy(m, ks)}, {"exact", m.exact}};
}

Json cmd_hs(const RunConfig& c) {
  const SymbolTuple phi = resolve_symbol(c.symbol, c.degree);
  const HilbertSchmidtReport h = hilbert_schmidt_sum(phi, c.degree);
  const TraceClassReport t = trace_class_sums(phi, std::min<std::size_t>(c.degree, 6));
  return Json{{"hilbert_schmidt_sum", h.sum},
              {"level_sums", h.level_sums},
              {"hilbert_schmidt", h.hilbert_schmidt},
              {"trace_class", Json{{"degree", std::min<std::size_t>(c.degree, 6)},
                                   {"column_norm_sum", t.column_norm_sum},
                                   {"bound_sum", t.bound_sum},
                                   {"sup_norm_sum", t.sup_norm_sum}}}};
}

std::vector<Point> ball_samples(std::size_t n, std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  for (std::size_t s = 0; s < count; ++s) {
    Point p(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = Complex(g(rng), g(rng));
    out.push_back(p * (radius * std::pow(u(rng), 1.0 / static_cast<double>(2 * n)) / p.norm()));
  }
  return out;
}

Json cmd_moebius(const RunConfig& c) {
  const SymbolTuple phi = resolve_symbol(c.symbol, c.degree);
  Json j{{"symbol", symbol_to_json(phi)}, {"constant", point_to_json(phi.constant())}};
  if (phi.closed_form()) j["closed_form"] = matrix_to_json(phi.closed_form()->homogeneous());
  if (is_builtin_expression(c.symbol) && c.symbol.rfind("moebius", 0) == 0) {
    const Point lambda = phi.constant();
    double worst_scalar = 0.0, worst_matrix = 0.0;
    for (const Point& x : ball_samples(phi.n(), std::min<std::size_t>(c.samples, 64), 0.5, c.seed)) {
      const Point y = ball_samples(phi.n(), 1, 0.5, c.seed + 1 + static_cast<std::uint64_t>(worst_scalar * 1e3)).front();
      const IdentityDefect d = moebius_identity_defect(lambda, x, y, c.degree);
      worst_scalar = std::max(worst_scalar, d.scalar);
      worst_matrix = std::max(worst_matrix, d.matrix);
    }
    j["identity_defect"] = Json{{"scalar", worst_scalar}, {"matrix", worst_matrix}};
  }
  return j;
}

Json cmd_drury(const RunConfig& c) {
  const SymbolTuple psi = resolve_symbol(c.symbol, c.degree);
  const SymOpMatrix s = compress_composition(psi, c.degree);
  if (!c.dump.empty()) {
    std::ofstream os(c.dump, std::ios::binary);
    if (!os) throw Error("cannot write " + c.dump);
    write_sym_matrix_dump(os, s);
  }
  Eigen::BDCSVD<CMatrix> svd(s.matrix);
  const auto [lower, at] = sampled_norm_lower_bound(psi, 512, 0.95);
  const double rho = psi.constant().norm();
  // A random symmetric polynomial of degree <= 3 for the functional identity.
  const std::size_t fd = std::min<std::size_t>(c.degree, 3);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FockVector f(psi.n(), c.degree);
  for (const Multidegree& k : enumerate_multidegrees(psi.n(), fd)) {
    const Complex coeff(u(rng), u(rng));
    f += coeff * sym_basis_vector(k, c.degree);
  }
  const double defect =
      functional_identity_defect(psi, f.to_series(), ball_samples(psi.n(), c.samples, 0.8, c.seed), c.degree);
  return Json{{"basis_size", s.basis.size()},
              {"largest_singular_value", svd.singularValues()(0)},
              {"lower_bound", lower},
              {"upper_bound", std::sqrt((1.0 + rho) / (1.0 - rho))},
              {"invariance_defect", s.invariance_defect},
              {"functional_identity_defect", defect}};
}

Json cmd_selftest(const RunConfig& c, bool& ok) {
  Json props = Json::array();
  ok = true;
  for (const PropertyResult& r : run_property_suite(c.cases, c.seed)) {
    props.push_back(Json{{"name", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"worst", r.worst},
                         {"tolerance", r.tolerance}});
    ok = ok && r.failures == 0;
  }
  return Json{{"properties", props}, {"passed", ok}};
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Json report{{"config", config_json(config)}, {"tolerances", Json{{"tol", config.tol}}}};
  int status = kExitOk;
  try {
    if (config.degree < 1 && config.subcommand != "selftest") throw PreconditionError("degree must be at least 1");
    if (!(config.tol > 0.0)) throw PreconditionError("tolerance must be positive");
    const std::string& s = config.subcommand;
    if (s == "norm") {
      report["result"] = cmd_norm(config);
    } else if (s == "spectrum") {
      report["result"] = cmd_spectrum(config);
    } else if (s == "classify") {
      report["result"] = cmd_classify(config);
    } else if (s == "radius") {
      report["result"] = cmd_radius(config);
    } else if (s == "essnorm") {
      report["result"] = cmd_essnorm(config);
    } else if (s == "hs") {
      report["result"] = cmd_hs(config);
    } else if (s == "moebius") {
      report["result"] = cmd_moebius(config);
    } else if (s == "drury") {
      report["result"] = cmd_drury(config);
    } else if (s == "selftest") {
      bool ok = true;
      report["result"] = cmd_selftest(config, ok);
      if (!ok) status = kExitSelfTestFailed;
    } else {
      throw PreconditionError("unknown subcommand \"" + s + "\"");
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const Inconclusive& e) {
    report["result"] = Json{{"kind", "inconclusive"}, {"message", e.what()}};
    status = kExitInconclusive;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitMalformed;
  }
  const std::string text = report.dump() + "\n";
  if (config.out.empty()) {
    out << text;
  } else {
    std::ofstream os(config.out);
    if (!os) {
      err << "error: cannot write " << config.out << '\n';
      return kExitPrecondition;
    }
    os << text;
  }
  return status;
}

}  // namespace fockc
