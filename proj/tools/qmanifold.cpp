// qmanifold: curvature and identity checks for metrics g = diag(A, A, B).

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "qmanifold/cli.hpp"

namespace {

void add_tolerance_flags(CLI::App* cmd, qmf::cli::ToleranceOverrides& tol) {
  cmd->add_option("--tol-first", tol.first, "Tolerance for first-derivative identities")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-curv", tol.curvature, "Tolerance for curvature-level identities")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and identity verification for 3-dimensional Riemannian manifolds with a Q-structure"};
  app.set_version_flag("--version", qmf::report::kToolVersion);
  app.require_subcommand(1);
  const char* env_tol = std::getenv("QMANIFOLD_TOL");

  qmf::cli::AnalyzeOptions analyze;
  analyze.tol.env = env_tol;
  auto* a = app.add_subcommand("analyze", "Full per-point report for a manifest, as JSON");
  a->add_option("manifest", analyze.manifest_path, "Manifest file")->required();
  a->add_option("-o,--output", analyze.output_path, "Write the JSON report here instead of stdout");
  add_tolerance_flags(a, analyze.tol);

  qmf::cli::VerifyOptions verify;
  verify.tol.env = env_tol;
  std::vector<double> box{verify.box.lo, verify.box.hi};
  auto* v = app.add_subcommand("verify", "Seeded randomized check of the universal identities");
  v->add_option("--seed", verify.seed, "RNG seed")->capture_default_str();
  v->add_option("--count", verify.count, "Number of random samples")->capture_default_str();
  v->add_option("--box", box, "Sampling box lo,hi for every coordinate")->delimiter(',')->expected(2);
  add_tolerance_flags(v, verify.tol);

  qmf::cli::CatenoidOptions cat;
  cat.tol.env = env_tol;
  auto* c = app.add_subcommand("catenoid", "Golden-value table for the 3-dimensional catenoid");
  c->add_option("--u", cat.u, "Values of u (nonzero), comma separated")->delimiter(',');
  c->add_option("--emit-slices", cat.emit_slices, "Write s1.csv and s2.csv with n*n points each");
  c->add_option("--out-dir", cat.out_dir, "Directory for the CSV files")->capture_default_str();
  add_tolerance_flags(c, cat.tol);

  qmf::cli::BasisOptions basis;
  basis.tol.env = env_tol;
  std::vector<double> x;
  auto* b = app.add_subcommand("basis", "Q-basis report for a vector at each manifest point, as JSON");
  b->add_option("manifest", basis.manifest_path, "Manifest file")->required();
  b->add_option("--x", x, "Vector a,b,c (overrides [basis] x)")->delimiter(',')->expected(3);
  b->add_option("-o,--output", basis.output_path, "Write the JSON report here instead of stdout");
  add_tolerance_flags(b, basis.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qmf::cli::kExitInput;
  }

  if (a->parsed()) return qmf::cli::cmd_analyze(analyze, std::cout, std::cerr);
  if (v->parsed()) {
    verify.box = {box[0], box[1]};
    return qmf::cli::cmd_verify(verify, std::cout, std::cerr);
  }
  if (c->parsed()) return qmf::cli::cmd_catenoid(cat, std::cout, std::cerr);
  if (!x.empty()) basis.x = qmf::make_vec(x[0], x[1], x[2]);
  return qmf::cli::cmd_basis(basis, std::cout, std::cerr);
}
