#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fockc {

// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitSelfTestFailed = 4;

struct RunConfig {
  std::string subcommand;  // norm spectrum classify radius essnorm hs moebius drury selftest
  std::string symbol;      // builtin expression or JSON file
  std::size_t degree = 8;
  std::optional<std::size_t> outer_cap;
  double tol = 1e-9;
  std::size_t samples = 512;
  std::uint64_t seed = 1;
  std::string out;   // report path; empty = the output stream
  std::string mode;  // spectrum: compact | filtration | schroeder | automorphism
  std::size_t cap = 3;          // product cap / filtration level
  std::size_t iterations = 40;  // radius
  std::vector<std::size_t> ks;  // essnorm cutoffs; empty = 0..degree
  std::string dump;             // binary matrix dump path
  std::size_t cases = 1000;     // selftest
};

// Runs one subcommand and writes a single-line JSON report. Errors go to
// `err` with the exit status telling their kind.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fockc
