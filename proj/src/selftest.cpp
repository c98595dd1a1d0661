#include "fockc/selftest.hpp"

#include <random>

#include "fockc/compop.hpp"
#include "fockc/fock.hpp"
#include "fockc/moebius.hpp"

namespace fockc {

namespace {

constexpr std::size_t kAlphabet = 2;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::size_t degree(std::size_t max_degree) {
    return std::uniform_int_distribution<std::size_t>(1, max_degree)(rng_);
  }

  Complex coeff(double scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return scale * Complex(u(rng_), u(rng_));
  }

  // Sparse random polynomial; `from` is the lowest length allowed.
  NcSeries series(std::size_t degree, double scale, std::size_t from = 0) {
    const auto& e = *enumeration_for(kAlphabet, degree);
    std::vector<std::pair<Word, Complex>> terms;
    std::bernoulli_distribution keep(0.4);
    for (WordIndex i = e.offset(from); i < e.total_dim(); ++i) {
      if (keep(rng_)) terms.emplace_back(e.word(i), coeff(scale));
    }
    return NcSeries::from_terms(kAlphabet, degree, terms);
  }

  // Random polynomial symbol with phi(0) = 0.
  SymbolTuple symbol(std::size_t degree) {
    std::vector<NcSeries> comps;
    for (std::size_t i = 0; i < kAlphabet; ++i) comps.push_back(series(degree, 0.4, 1));
    return SymbolTuple(std::move(comps));
  }

  Point point(double radius) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point p(static_cast<Eigen::Index>(kAlphabet));
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = Complex(g(rng_), g(rng_));
    return p * (radius * u(rng_) / p.norm());
  }

  FockVector vector(std::size_t degree) {
    FockVector v(kAlphabet, degree);
    for (Eigen::Index i = 0; i < v.coeffs().size(); ++i) v.coeffs()[i] = coeff(1.0);
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

double max_diff(const NcSeries& a, const NcSeries& b) { return (a.to_dense() - b.to_dense()).cwiseAbs().maxCoeff(); }

void record(PropertyResult& r, double defect) {
  ++r.cases;
  r.worst = std::max(r.worst, defect);
  if (!(defect <= r.tolerance)) ++r.failures;
}

}  // namespace

std::vector<PropertyResult> run_property_suite(std::size_t cases, std::uint64_t seed, std::size_t max_degree,
                                               double tol) {
  Sampler s(seed);
  PropertyResult assoc{"cauchy_associativity", 0, 0, 0, tol};
  PropertyResult kernel{"reproducing_kernel", 0, 0, 0, tol};
  PropertyResult anti{"anti_homomorphism", 0, 0, 0, tol};
  PropertyResult tri{"grading_triangularity", 0, 0, 0, tol};
  PropertyResult adj{"adjoint_consistency", 0, 0, 0, tol};
  const BuildOptions unchecked{true, 0};
  for (std::size_t c = 0; c < cases; ++c) {
    {
      const std::size_t d = s.degree(max_degree);
      const NcSeries f = s.series(d, 1.0), g = s.series(d, 1.0), h = s.series(d, 1.0);
      record(assoc, max_diff(cauchy_product(cauchy_product(f, g), h), cauchy_product(f, cauchy_product(g, h))));
    }
    {
      const std::size_t d = s.degree(max_degree);
      const NcSeries f = s.series(d, 1.0);
      const Point mu = s.point(0.95);
      const Complex lhs = inner_product(FockVector::from_series(f), kernel_vector(mu, d).vector);
      record(kernel, std::abs(lhs - eval_scalar(f, mu)));
    }
    const std::size_t d = s.degree(max_degree);
    const SymbolTuple phi = s.symbol(d);
    const SymbolTuple chi = s.symbol(d);
    const CompOpMatrix mphi = build_matrix(phi, d, unchecked);
    {
      const CompOpMatrix mchi = build_matrix(chi, d, unchecked);
      const CompOpMatrix mcomp = build_matrix(compose_symbols(chi, phi), d, unchecked);
      const CMatrix diff = mcomp.dense() - mphi.dense() * mchi.dense();
      record(anti, diff.cwiseAbs().maxCoeff());
    }
    {
      double below = 0.0;
      for (int k = 0; k < mphi.matrix.outerSize(); ++k) {
        const std::size_t col_len = enumeration_for(kAlphabet, d)->length_of(static_cast<WordIndex>(k));
        for (SparseCMatrix::InnerIterator it(mphi.matrix, k); it; ++it) {
          const std::size_t row_len = enumeration_for(kAlphabet, d)->length_of(static_cast<WordIndex>(it.row()));
          if (row_len < col_len) below = std::max(below, std::abs(it.value()));
        }
      }
      record(tri, mphi.exact ? below : std::numeric_limits<double>::infinity());
    }
    {
      const FockVector f = s.vector(d), g = s.vector(d);
      const FockVector mf(kAlphabet, d, mphi.matrix * f.coeffs());
      const Complex lhs = inner_product(mf, g);
      const Complex rhs = inner_product(f, adjoint_apply(phi, g));
      record(adj, std::abs(lhs - rhs));
    }
  }
  return {assoc, kernel, anti, tri, adj};
}

}  // namespace fockc
