#pragma once

// Randomized invariant checks over small alphabets and degrees.

#include <cstdint>
#include <string>
#include <vector>

namespace fockc {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0;  // largest observed defect
  double tolerance = 0;
};

// Cauchy-product associativity, the reproducing-kernel identity, the
// anti-homomorphism matrix(C_{chi o phi}) = matrix(C_phi) matrix(C_chi),
// grading triangularity and adjoint consistency, `cases` random instances
// each with n = 2 and degree <= max_degree.
std::vector<PropertyResult> run_property_suite(std::size_t cases, std::uint64_t seed, std::size_t max_degree = 6,
                                               double tol = 1e-10);

}  // namespace fockc
