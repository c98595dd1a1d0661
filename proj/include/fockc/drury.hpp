#pragma once

// The symmetric Fock space: span of w^k = (1/gamma_k) sum_{w in Lambda_k} e_w,
// where Lambda_k is the set of words with letter counts k = (k_1, ..., k_n)
// and gamma_k = |Lambda_k|. Composition operators are compressed to it in
// the orthonormal basis sqrt(gamma_k) w^k.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fockc/compop.hpp"
#include "fockc/fock.hpp"

namespace fockc {

using Multidegree = std::vector<unsigned>;

unsigned total_degree(const Multidegree& k);
Multidegree multidegree_of(const Word& w, std::size_t n);

// All multidegrees of total <= degree: by total, then colex (k_n most
// significant) within a total.
std::vector<Multidegree> enumerate_multidegrees(std::size_t n, std::size_t degree);

// |k|! / (k_1! ... k_n!); requires |k| <= 20.
std::uint64_t gamma_count(const Multidegree& k);

FockVector sym_basis_vector(const Multidegree& k, std::size_t degree);

// Orthogonal projection onto span{w^k}: averages coefficients over each
// class Lambda_k.
FockVector symmetrize(const FockVector& v);

struct SymOpMatrix {
  std::size_t n = 0;
  std::size_t degree = 0;
  std::vector<Multidegree> basis;
  CMatrix matrix;  // entry (j, k) = <C u_k, u_j>, u_k = sqrt(gamma_k) w^k
  // |(I - P) C u_k| maximized over k: how far C leaves the symmetric space.
  double invariance_defect = 0;
};

// Matrix of P C_psi P restricted to the symmetric space.
SymOpMatrix compress_composition(const SymbolTuple& psi, std::size_t degree, const BuildOptions& opts = {});

// Coordinates <f, u_k> of a Fock vector in the orthonormal symmetric basis.
CVector sym_coordinates(const FockVector& f, const std::vector<Multidegree>& basis);
FockVector from_sym_coordinates(const CVector& c, const std::vector<Multidegree>& basis, std::size_t n,
                                std::size_t degree);

// max over samples of |<S f, z_lambda> - f(psi(lambda))|, S the compressed
// operator. f must be symmetric with degree <= D.
double functional_identity_defect(const SymbolTuple& psi, const NcSeries& f, const std::vector<Point>& samples,
                                  std::size_t degree);

// Header "SYMFMAT1", u32 n, u32 degree, u32 basis size, the multidegrees
// (n u32 each), then the matrix row-major as little-endian double pairs.
void write_sym_matrix_dump(std::ostream& os, const SymOpMatrix& m);

}  // namespace fockc
