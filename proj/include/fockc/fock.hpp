#pragma once

// Vectors of the truncated full Fock space span{e_w : |w| <= D}, kernel
// vectors, grading projections and truncated creation operators.

#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "fockc/common.hpp"
#include "fockc/series.hpp"
#include "fockc/words.hpp"

namespace fockc {

using SparseCMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, std::int64_t>;

class FockVector {
 public:
  FockVector(std::size_t n, std::size_t degree);
  FockVector(std::size_t n, std::size_t degree, CVector coeffs);

  static FockVector vacuum(std::size_t n, std::size_t degree);
  static FockVector basis(std::size_t n, std::size_t degree, const Word& w);
  // The coefficient vector of f, under the identification f <-> sum a_w e_w.
  static FockVector from_series(const NcSeries& f);

  std::size_t n() const noexcept { return n_; }
  std::size_t degree() const noexcept { return degree_; }
  const GradedEnumeration& enumeration() const { return *enum_; }
  const CVector& coeffs() const noexcept { return coeffs_; }
  CVector& coeffs() noexcept { return coeffs_; }

  Complex coefficient(const Word& w) const;
  double norm() const { return coeffs_.norm(); }
  NcSeries to_series() const;

  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  FockVector& operator*=(Complex s);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(Complex s, FockVector a) { return a *= s; }

 private:
  std::size_t n_;
  std::size_t degree_;
  std::shared_ptr<const GradedEnumeration> enum_;
  CVector coeffs_;
};

// sum_w u_w conj(v_w). Vectors of different degrees are compared on the
// common range.
Complex inner_product(const FockVector& u, const FockVector& v);

struct KernelVector {
  FockVector vector;
  // 1/(1-|mu|^2) - |z_mu^(D)|^2 = |mu|^{2(D+1)} / (1-|mu|^2): the squared
  // norm of the part of z_mu beyond degree D.
  double tail_bound;
};

// z_mu = sum_{|w|<=D} conj(mu_w) e_w; requires |mu| < 1.
KernelVector kernel_vector(const Point& mu, std::size_t degree);

// Zeroes every coefficient of length < k (the projection P_k onto lengths >= k).
FockVector tail_projection(const FockVector& v, std::size_t k);

enum class ShiftSide { left, right };

struct TruncatedShift {
  ShiftSide side;
  std::size_t generator;  // 0-based
  SparseCMatrix matrix;
};

// Left shifts S_i e_w = e_{g_i w}, right shifts R_i e_w = e_{w g_i}, with
// columns of length D sent to zero.
std::vector<TruncatedShift> shift_matrices(std::size_t n, std::size_t degree, ShiftSide side);

// Dense column-major text dump: a header line "rows cols", then one line per
// entry "re im".
std::string dump_dense(const TruncatedShift& s);

}  // namespace fockc
