// projsum: decompose positive elements into sums of projections and check certificates.
//
// Exit codes: 0 ok, 1 parse or malformed input, 2 not decomposable,
// 3 dimension cap exceeded, 4 certificate invalid.

#include <iostream>

#include <CLI11.hpp>

#include "projsum_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace projsum::cli;
  CLI::App app{"Finite sums of projections with replayable certificates"};
  app.require_subcommand(1);

  DecomposeArgs dec;
  auto* decompose = app.add_subcommand("decompose", "Decompose a spectral element and print a certificate");
  decompose->add_option("--k0", dec.k0, "K0 group as comma-separated moduli, e.g. 2 or 2,3 (empty or 1: trivial)")
      ->required();
  decompose->add_option("--element", dec.element, "Blocks 'coeff:(r1,..);...', coeff decimal or p/q")->required();
  decompose->add_option("--tol", dec.tol, "Matrix tolerance for replay checks");
  decompose->add_option("--dim-cap", dec.dim_cap, "Largest matrix dimension to build (env PROJSUM_DIM_CAP)");
  decompose->add_option("--out", dec.out, "Write the certificate here instead of stdout");

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "Replay a certificate and print a report");
  verify->add_option("certificate", cert_path, "Certificate JSON file")->required();

  std::string preset;
  auto* demo = app.add_subcommand("demo", "Run the worked battery for a Cuntz algebra preset");
  demo->add_option("preset", preset, "o2, o3, ..., oN or on(N)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kMalformed;
  }

  try {
    if (*decompose) return cmd_decompose(dec, std::cout, std::cerr);
    if (*verify) return cmd_verify(cert_path, std::cout, std::cerr);
    return cmd_demo(preset, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
}
