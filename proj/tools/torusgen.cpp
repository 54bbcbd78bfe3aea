#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace torusgen::cli;
  CLI::App app{"Generating weight sets for torus-equivariant D-modules"};
  app.set_version_flag("--version", std::string(TORUSGEN_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty_out = false;
  app.add_flag("--pretty", pretty_out, "Human-readable report instead of JSON");

  std::string spec_path, set_path;

  auto* genset = app.add_subcommand("genset", "Construct a generating weight set");
  GensetFlags gflags;
  genset->add_option("spec", spec_path, "Action spec (JSON)")->required();
  genset->add_flag("--trace", gflags.trace, "Include the derivation trace");
  genset->add_flag("--prune", gflags.prune, "Drop elements while the certificate survives");

  auto* certify = app.add_subcommand("certify", "Check a candidate weight set");
  CertifyFlags cflags;
  std::size_t depth = 0;
  certify->add_option("spec", spec_path, "Action spec (JSON)")->required();
  certify->add_option("set", set_path, "Weight set (JSON array, or an object with \"S\")")->required();
  auto* depth_opt = certify->add_option("--depth", depth, "Recursion depth of the necessary check (default n)");
  certify->add_option("--extended", cflags.extended, "Also try shift multiplicities up to m");
  certify->add_flag("--tree", cflags.tree, "Include the certificate tree");

  auto* blocks = app.add_subcommand("blocks", "Block decomposition of the weight lattice");
  blocks->add_option("spec", spec_path, "Action spec (JSON)")->required();
  blocks->add_option("set", set_path, "Optional weight set to partition");

  auto* rank1 = app.add_subcommand("rank1", "The rank-one example with weight a");
  long a = 0;
  Rank1Flags rflags;
  std::size_t syz = 0;
  rank1->add_option("a", a, "Weight a >= 1")->required();
  rank1->add_option("--window", rflags.window, "Slots [-M, M] per module (M >= 3)");
  rank1->add_flag("--ses", rflags.ses, "Verify both short exact sequences of block 0");
  rank1->add_flag("--quiver", rflags.quiver, "Print the quiver of block 0");
  auto* syz_opt = rank1->add_option("--syzygy", syz, "Syzygy probe depth on block 0");
  rank1->add_flag("--modules", rflags.modules, "Dump the module tables");

  auto* selftest = app.add_subcommand("selftest", "Randomized property checks");
  SelftestFlags sflags;
  selftest->add_option("--seed", sflags.seed, "Random seed");
  selftest->add_option("--trials", sflags.trials, "Number of random actions");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const rc = app.exit(e);
    return rc == 0 ? 0 : input_error;
  }

  Outcome out;
  try {
    if (*genset) {
      out = cmd_genset(read_json_file(spec_path), gflags);
    } else if (*certify) {
      if (*depth_opt) cflags.depth = depth;
      Json const spec = read_json_file(spec_path);
      out = cmd_certify(spec, read_json_file(set_path), cflags);
    } else if (*blocks) {
      Json const spec = read_json_file(spec_path);
      std::optional<Json> set;
      if (!set_path.empty()) set = read_json_file(set_path);
      out = cmd_blocks(spec, set);
    } else if (*rank1) {
      if (*syz_opt) rflags.syzygy = syz;
      out = cmd_rank1(a, rflags);
    } else if (*selftest) {
      out = cmd_selftest(sflags);
    }
  } catch (InputError const& e) {
    out = {input_error, Json(), e.what()};
  }

  if (!out.error.empty()) std::cerr << "error: " << out.error << "\n";
  if (!out.report.is_null()) {
    if (pretty_out)
      std::cout << pretty(out.report);
    else
      std::cout << out.report.dump(2) << "\n";
  }
  return out.exit_code;
}
