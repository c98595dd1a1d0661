#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fockc/cli.hpp"
#include "fockc/io.hpp"
#include "helpers.hpp"

using namespace fockc;

namespace {

struct Outcome {
  int status;
  Json report;
  std::string err;
};

Outcome run_with(RunConfig c) {
  std::ostringstream out, err;
  const int status = run(c, out, err);
  Json j = out.str().empty() ? Json() : Json::parse(out.str());
  return {status, j, err.str()};
}

RunConfig config(const std::string& sub, const std::string& symbol, std::size_t degree = 4) {
  RunConfig c;
  c.subcommand = sub;
  c.symbol = symbol;
  c.degree = degree;
  return c;
}

std::string write_symbol(const SymbolTuple& phi, const std::string& name) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream os(path);
  os << symbol_to_json(phi).dump();
  return path.string();
}

}  // namespace

TEST_CASE("norm report") {
  const Outcome o = run_with(config("norm", "moebius(0.5;n=1)", 40));
  REQUIRE(o.status == kExitOk);
  CHECK(o.report["result"]["upper_bound"].get<double>() == doctest::Approx(std::sqrt(3.0)));
  CHECK(o.report["result"]["estimate"].get<double>() > 1.6);
  CHECK(o.report["config"]["degree"] == 40);
}

TEST_CASE("classify a file symbol") {
  const std::string path = write_symbol(fockc::testing::half_scaling(2), "fockc_cli_half.json");
  const Outcome o = run_with(config("classify", path));
  REQUIRE(o.status == kExitOk);
  CHECK(o.report["result"]["kind"] == "elliptic");
  CHECK(o.report["result"]["fixed_point"].size() == 2);
  std::filesystem::remove(path);
}

TEST_CASE("compact spectrum report") {
  const std::string path = write_symbol(fockc::testing::triangular_example(2), "fockc_cli_tri.json");
  RunConfig c = config("spectrum", path);
  c.mode = "compact";
  c.cap = 3;
  const Outcome o = run_with(c);
  REQUIRE(o.status == kExitOk);
  std::vector<Complex> pts;
  for (const auto& p : o.report["result"]["points"]) pts.emplace_back(p["re"].get<double>(), p["im"].get<double>());
  for (Complex z : {Complex(0), Complex(1), Complex(0.5), Complex(1.0 / 3), Complex(0.25)}) {
    CHECK(std::any_of(pts.begin(), pts.end(), [&](Complex x) { return std::abs(x - z) < 1e-12; }));
  }
  std::filesystem::remove(path);
}

TEST_CASE("other subcommands produce reports") {
  for (const char* sub : {"radius", "essnorm", "hs", "moebius", "drury"}) {
    RunConfig c = config(sub, std::string(sub) == "moebius" ? "moebius(0.3,0.1)" : "linear(0.5,0,0,0.5)", 3);
    c.samples = 16;
    const Outcome o = run_with(c);
    CHECK_MESSAGE(o.status == kExitOk, sub);
    CHECK(o.report.contains("result"));
  }
  RunConfig a = config("spectrum", "automorphism(0,0;-1,0,0,1)");
  a.mode = "automorphism";
  const Outcome o = run_with(a);
  CHECK(o.report["result"]["classification"] == "finite_subgroup");
}

TEST_CASE("exit statuses") {
  CHECK(run_with(config("norm", "nonsense(1)")).status == kExitMalformed);
  CHECK(run_with(config("norm", "moebius(0.8,0.8)")).status == kExitPrecondition);
  CHECK(run_with(config("norm", "moebius(0.5)", 0)).status == kExitPrecondition);
  CHECK(run_with(config("frobnicate", "swap")).status == kExitPrecondition);
  RunConfig s = config("selftest", "");
  s.cases = 5;
  CHECK(run_with(s).status == kExitOk);
}

TEST_CASE("reports can go to a file") {
  const auto path = std::filesystem::temp_directory_path() / "fockc_cli_report.json";
  RunConfig c = config("hs", "linear(0.5,0,0,0.5)", 10);
  c.out = path.string();
  const Outcome o = run_with(c);
  CHECK(o.status == kExitOk);
  std::ifstream is(path);
  const Json j = Json::parse(is);
  CHECK(j["result"]["hilbert_schmidt_sum"].get<double>() == doctest::Approx(2.0).epsilon(1e-3));
  std::filesystem::remove(path);
}
