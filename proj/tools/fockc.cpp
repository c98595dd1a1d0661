#include <iostream>

#include <CLI11.hpp>

#include "fockc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Composition operators on the full Fock space"};
  app.require_subcommand(1);
  fockc::RunConfig config;

  auto common = [&](CLI::App* sub, bool needs_symbol) {
    auto* opt = sub->add_option("--symbol", config.symbol, "builtin expression or JSON file");
    if (needs_symbol) opt->required();
    sub->add_option("--degree", config.degree, "truncation degree");
    sub->add_option("--outer-cap", config.outer_cap, "outer truncation for non-polynomial compositions");
    sub->add_option("--tol", config.tol, "tolerance");
    sub->add_option("--samples", config.samples, "sample count");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--out", config.out, "write the report to this file");
  };

  auto* norm = app.add_subcommand("norm", "operator norm estimate with bounds");
  common(norm, true);
  norm->add_option("--dump", config.dump, "binary dump of the truncated matrix");

  auto* spectrum = app.add_subcommand("spectrum", "spectral data");
  common(spectrum, true);
  spectrum->add_option("--mode", config.mode, "compact | filtration | schroeder | automorphism")
      ->check(CLI::IsMember({"compact", "filtration", "schroeder", "automorphism"}));
  spectrum->add_option("--cap", config.cap, "product cap or filtration level");

  auto* classify = app.add_subcommand("classify", "classify the symbol's dynamics");
  common(classify, true);

  auto* radius = app.add_subcommand("radius", "spectral radius from iterates");
  common(radius, true);
  radius->add_option("--iterations", config.iterations, "number of iterates");

  auto* essnorm = app.add_subcommand("essnorm", "essential norm proxy");
  common(essnorm, true);
  essnorm->add_option("--ks", config.ks, "tail cutoffs")->delimiter(',');

  auto* hs = app.add_subcommand("hs", "Hilbert-Schmidt and trace-class sums");
  common(hs, true);

  auto* moebius = app.add_subcommand("moebius", "series of a symbol and identity defects");
  common(moebius, true);

  auto* drury = app.add_subcommand("drury", "compression to the symmetric subspace");
  common(drury, true);
  drury->add_option("--dump", config.dump, "binary dump of the compressed matrix");

  auto* selftest = app.add_subcommand("selftest", "randomized property checks");
  common(selftest, false);
  selftest->add_option("--cases", config.cases, "cases per property");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fockc::kExitMalformed;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  return fockc::run(config, std::cout, std::cerr);
}
