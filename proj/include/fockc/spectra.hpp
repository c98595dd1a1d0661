#pragma once

// Spectral data of composition operators: spectral radius from the origin
// orbit, the linear part at a fixed point, product spectra, eigenvalues of
// the grading filtration, and automorphism spectra.

#include <optional>
#include <string>
#include <vector>

#include "fockc/compop.hpp"
#include "fockc/moebius.hpp"
#include "fockc/scalar_map.hpp"

namespace fockc {

struct IterateOptions {
  // Degree of the materialized iterates; 0 keeps only the scalar orbit.
  std::size_t series_degree = 0;
  std::optional<std::size_t> outer_cap;
};

struct IterateSequence {
  SymbolTuple symbol;
  std::vector<SymbolTuple> iterates;  // phi^[1..K] when series_degree > 0
  std::vector<QPoint> orbit;          // phi^[k](0), k = 0..K, in quad precision
  std::vector<double> gaps;           // 1 - |phi^[k](0)|
  double series_orbit_defect = 0;     // max_k |phi^[k](0) from the series - orbit[k]|
  bool boundary_attracted = false;    // some gap below 1e-12
};

IterateSequence iterate_symbol(const SymbolTuple& phi, std::size_t k_max, const IterateOptions& opts = {});

struct RadiusEstimate {
  std::vector<double> root;   // (1 - |phi^[k](0)|)^{-1/2k}, k = 1..K
  std::vector<double> ratio;  // ((1 - |phi^[k](0)|)/(1 - |phi^[k+1](0)|))^{1/2}, k = 1..K-1
  double root_tail = 0;       // |root_K - root_{K-1}|
  double ratio_tail = 0;
  double value = 0;           // ratio_K when its tail is below 1e-4, root_K otherwise
  std::string form;           // "ratio" or "root"
};

RadiusEstimate spectral_radius_estimate(const IterateSequence& seq);

struct SchroederData {
  Point fixed_point;
  SymbolTuple psi;         // Phi_xi o phi o Phi_xi
  CMatrix a;               // a(i, j) = <psi_i, e_j>
  std::vector<Complex> eigenvalues;
  double conjugation_tail = 0;
  double psi_constant_norm = 0;
};

struct SchroederOptions {
  std::optional<std::size_t> outer_cap;
};

SchroederData schroeder_linear_data(const SymbolTuple& phi, const Point& xi, std::size_t degree,
                                    const SchroederOptions& opts = {});

struct SpectrumPoint {
  Complex value;
  std::string provenance;  // "product" or "matrix"
};

// {0, 1} and all products of 1..cap eigenvalues (multisets), merged within 1e-9.
std::vector<SpectrumPoint> compact_spectrum(const std::vector<Complex>& eigenvalues, std::size_t cap);
inline std::vector<SpectrumPoint> compact_spectrum(const SchroederData& d, std::size_t cap) {
  return compact_spectrum(d.eigenvalues, cap);
}

struct FiltrationEigenvalues {
  std::vector<Complex> matrix;     // eigenvalues of the lengths <= m block
  std::vector<Complex> predicted;  // 1 and d_A(w), 1 <= |w| <= m
  double match_defect = 0;         // largest distance in a nearest-neighbour matching
};

// The leading block is block lower triangular in the grading, so its
// eigenvalues are those of the diagonal blocks, computed block by block.
FiltrationEigenvalues filtration_eigenvalues(const CompOpMatrix& m, std::size_t m_len);

// Largest distance in a greedy nearest-neighbour matching of two multisets
// (infinity when the sizes differ).
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

struct AutomorphismSpectrum {
  // finite_subgroup | unit_circle | contained_in_unit_circle | undetermined
  std::string classification;
  std::optional<Point> fixed_point;
  std::vector<Complex> eigenvalues;
  std::uint64_t order = 0;  // m for the subgroup {z^m = 1}
  std::vector<Complex> points;
  double radius = 0;         // iterate estimate for C_phi (no interior fixed point)
  double inverse_radius = 0;  // same for the inverse map
};

// Root-of-unity order of w (|w^m - 1| <= tol), 0 when none up to order_cap.
std::uint64_t root_of_unity_order(Complex w, double tol = 1e-9, std::uint64_t order_cap = 10000);

AutomorphismSpectrum automorphism_spectrum(const AutomorphismSpec& spec);

}  // namespace fockc
