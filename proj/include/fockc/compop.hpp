#pragma once

// Matrices of composition operators C_phi f = f o phi on the truncated Fock
// basis, adjoint action, norm bounds and compactness diagnostics.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fockc/fock.hpp"
#include "fockc/series.hpp"

namespace fockc {

struct CompOpMatrix {
  std::size_t n = 0;
  std::size_t degree = 0;
  // Column index(w) holds the degree-D coefficients of phi_w.
  SparseCMatrix matrix;
  // offsets[k] is the first index of length k; offsets[degree + 1] = dim.
  std::vector<WordIndex> grading;
  // phi(0) = 0 and every symbol coefficient up to the degree is exact: the
  // compression is the restriction of C_phi to polynomials of degree <= D.
  bool exact = false;
  // The matrix entries are the true compression P_D C_phi P_D.
  bool entries_exact = false;
  SymbolTuple symbol;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.cols()); }
  CMatrix dense() const { return CMatrix(matrix); }
};

struct BuildOptions {
  bool skip_self_map_check = false;
  // Largest matrix dimension used by the shift-compression plausibility check.
  std::size_t self_map_check_dim = 256;
};

// Columns phi_{w g_i} = phi_w phi_i, built one length at a time from the
// previous length. Rejects |phi(0)| >= 1 and symbols whose row norm at the
// truncated shifts exceeds 1 + 1e-9 (unless the check is skipped).
CompOpMatrix build_matrix(const SymbolTuple& phi, std::size_t degree, const BuildOptions& opts = {});

// Entry w of the result is <g, phi_w>, for |w| <= min(deg g, deg phi).
FockVector adjoint_apply(const SymbolTuple& phi, const FockVector& g);

// Column count up to which singular values come from a dense SVD. A dense
// SVD at 2047 columns takes seconds on one core; power iteration is used above.
inline constexpr std::size_t kDenseSvdLimit = 1024;

// Largest singular value; dense below dense_limit columns, power iteration
// on M^*M above.
double largest_singular_value(const SparseCMatrix& m, std::size_t dense_limit = kDenseSvdLimit);

struct NormReport {
  double estimate = 0;        // largest singular value of the compression
  double lower_bound = 0;     // sampled sup of ((1-|z|^2)/(1-|phi(z)|^2))^{1/2}
  Point lower_bound_point;
  double upper_bound = 0;     // ((1+|phi(0)|)/(1-|phi(0)|))^{1/2}
  bool sandwich_ok = false;   // estimate <= upper_bound + 1e-9
  // phi(0) != 0: the estimate is a lower bound of the true norm only.
  bool estimate_is_lower_bound = false;
  std::size_t samples = 0;
};

struct NormOptions {
  std::size_t samples = 512;
  double max_radius = 0.95;
  std::size_t dense_limit = kDenseSvdLimit;
};

NormReport operator_norm_estimate(const CompOpMatrix& m, const NormOptions& opts = {});

// Sampled sup of ((1-|z|^2)/(1-|phi(z)|^2))^{1/2} over the ball of radius
// max_radius: a Halton set plus radial refinement along the best direction.
std::pair<double, Point> sampled_norm_lower_bound(const SymbolTuple& phi, std::size_t samples, double max_radius);

// For each k, the largest singular value of M restricted to the columns of
// length >= k.
std::vector<double> essential_norm_proxy(const CompOpMatrix& m, const std::vector<std::size_t>& ks,
                                         std::size_t dense_limit = kDenseSvdLimit);

struct HilbertSchmidtReport {
  double sum = 0;                  // sum_{|w|<=D} |phi_w|^2
  std::vector<double> level_sums;  // per length
  bool hilbert_schmidt = false;    // level sums decay geometrically
};

// Linear symbols use the product formula |phi_w|^2 = prod |phi_{w_j}|^2;
// others enumerate every word.
HilbertSchmidtReport hilbert_schmidt_sum(const SymbolTuple& phi, std::size_t degree);

struct TraceClassReport {
  double column_norm_sum = 0;  // sum_{|w|<=D} |phi_w|
  double bound_sum = 0;        // sum_{k<=D} (sum_i |phi_i|_inf)^k, with sup norms estimated at shifts
  double sup_norm_sum = 0;     // sum_i |phi_i|_inf estimate
};

TraceClassReport trace_class_sums(const SymbolTuple& phi, std::size_t degree);

struct NormalityReport {
  bool normal = false;
  bool constant_zero = false;
  bool linear_only = false;
  double commutator_defect = 0;  // |A^*A - AA^*|
  double max_singular = 0;       // |A|
  double matrix_defect = 0;      // |MM^* - M^*M| at the cross-check degree
  std::size_t cross_check_degree = 0;
};

NormalityReport normality_check(const SymbolTuple& phi, std::size_t cross_check_degree = 3);

// Binary dump: magic (8 bytes), u32 n, u32 degree, then the dense matrix
// row-major as little-endian (re, im) double pairs.
void write_matrix_dump(std::ostream& os, const CMatrix& m, const char magic[8], std::uint32_t n,
                       std::uint32_t degree);
void write_matrix_dump(std::ostream& os, const CompOpMatrix& m);

}  // namespace fockc
