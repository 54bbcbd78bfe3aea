#include "commands.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

namespace torusgen::cli {
namespace {

Json spec(std::string const& text) { return parse_json_text(text, "test"); }

Json strip_timing(Json r) {
  r.erase("timing_ms");
  return r;
}

TEST(CmdGenset, Examples) {
  auto const two = cmd_genset(spec(R"({"rank":1,"weights":[[2]]})"), {});
  EXPECT_EQ(two.exit_code, ok);
  EXPECT_EQ(two.report["S"], spec("[[-2],[0],[1]]"));
  EXPECT_EQ(cmd_genset(spec(R"({"rank":1,"weights":[]})"), {}).report["S"], spec("[[0]]"));
  auto const mixed = cmd_genset(spec(R"({"rank":1,"weights":[[2],[3]]})"), {.trace = true});
  EXPECT_EQ(mixed.report["S"], spec("[[-5],[-3],[-2],[-1],[0],[1],[2]]"));
  EXPECT_EQ(mixed.report["certificate"]["verdict"], "valid");
  ASSERT_TRUE(mixed.report.contains("trace"));
  EXPECT_EQ(mixed.report["trace"]["nodes"][0]["result"], mixed.report["S"]);
}

TEST(CmdGenset, InputErrors) {
  EXPECT_EQ(cmd_genset(spec(R"({"rank":2,"weights":[[1]]})"), {}).exit_code, input_error);
  EXPECT_EQ(cmd_genset(spec(R"({"weights":[[1]]})"), {}).exit_code, input_error);
  EXPECT_EQ(cmd_genset(spec(R"({"rank":1,"weights":[["x"]]})"), {}).exit_code, input_error);
  EXPECT_EQ(cmd_genset(spec(R"([1,2])"), {}).exit_code, input_error);
  try {
    parse_json_text("{\n  \"rank\": 1,\n  \"weights\": [[2],\n}", "f.json");
    FAIL();
  } catch (InputError const& e) {
    EXPECT_EQ(std::string(e.what()).rfind("f.json:4:", 0), 0u) << e.what();
  }
}

TEST(JsonIo, BigIntegersAsStrings) {
  Integer const big("-100000000000000000000");
  EXPECT_EQ(io::to_json(big), "-100000000000000000000");
  EXPECT_EQ(io::to_json(Integer(42)), 42);
  EXPECT_EQ(io::integer_from_json(Json("-100000000000000000000"), "x"), big);
  EXPECT_EQ(io::integer_from_json(Json(7), "x"), 7);
  EXPECT_THROW(io::integer_from_json(Json("12a"), "x"), io::InvalidInput);
  auto const action = io::action_from_json(spec(R"({"rank":1,"weights":[["100000000000000000000"]]})"));
  EXPECT_EQ(action.weights(0, 0), -big);
  EXPECT_EQ(io::to_json(action)["weights"][0][0], "100000000000000000000");
}

TEST(CmdCertify, Examples) {
  auto const w = spec(R"({"rank":1,"weights":[[2]]})");
  EXPECT_EQ(cmd_certify(w, spec("[[-2],[0],[1]]"), {}).exit_code, ok);
  auto const bad = cmd_certify(w, spec("[[0],[1]]"), {});
  EXPECT_EQ(bad.exit_code, not_certified);
  EXPECT_EQ(bad.report["witness"]["kind"], "empty_leaf");
  EXPECT_EQ(bad.report["witness"]["descriptor"]["rays"][0]["direction"], spec("[-2]"));
  EXPECT_EQ(cmd_certify(w, spec("[]"), {}).exit_code, not_certified);
  EXPECT_EQ(cmd_certify(w, spec("[[1,2]]"), {}).exit_code, input_error);
  EXPECT_EQ(cmd_certify(w, spec("[[-4],[0],[1]]"), {.depth = std::nullopt, .extended = 4}).exit_code, ok);
}

TEST(CmdBlocks, Examples) {
  EXPECT_EQ(cmd_blocks(spec(R"({"rank":1,"weights":[[2]]})"), std::nullopt).report["block_count"], 2);
  EXPECT_EQ(cmd_blocks(spec(R"({"rank":2,"weights":[[1,0],[0,1]]})"), std::nullopt).report["block_count"], 1);
  auto const r = cmd_blocks(spec(R"({"rank":2,"weights":[[2,2]]})"), spec("[[1,0],[2,2]]"));
  EXPECT_EQ(r.exit_code, not_certified);
  ASSERT_EQ(r.report["errors"].size(), 1u);
  EXPECT_EQ(r.report["errors"][0]["weight"], spec("[1,0]"));
  EXPECT_EQ(r.report["errors"][0]["error"], "UnlabelableWeight");
  auto const part = cmd_blocks(spec(R"({"rank":1,"weights":[[2]]})"), spec("[[-2],[0],[1]]"));
  EXPECT_EQ(part.report["blocks"][0]["members"], spec("[[-2],[0]]"));
}

TEST(CmdRank1, Examples) {
  auto const two = cmd_rank1(2, {.window = 10, .ses = true, .quiver = true, .syzygy = 6});
  ASSERT_EQ(two.exit_code, ok) << two.error;
  EXPECT_EQ(two.report["end_dimension"], 5);
  EXPECT_EQ(two.report["quiver"]["text"],
            "vertices 2\narrow alpha 0 1\narrow beta 1 0\nrelation alpha*beta\nrelation beta*alpha\n");
  for (auto const& s : two.report["ses"]) EXPECT_TRUE(s["non_split"].get<bool>());
  for (auto const& c : two.report["syzygy"]["chains"]) EXPECT_EQ(c["syzygy_period"], 1);
  EXPECT_TRUE(two.report["syzygy"]["infinite_global_dimension"].get<bool>());

  auto const one = cmd_rank1(1, {});
  EXPECT_EQ(one.report["end_dimension"], 4);
  EXPECT_EQ(one.report["S"], spec("[[-1],[0]]"));
  EXPECT_EQ(cmd_rank1(3, {}).report["end_dimension"], 6);
  EXPECT_EQ(cmd_rank1(0, {}).exit_code, input_error);
  EXPECT_EQ(cmd_rank1(2, {.window = 2}).exit_code, input_error);
}

TEST(CmdRank1, ModuleDump) {
  auto const r = cmd_rank1(2, {.window = 3, .modules = true});
  auto const& p0 = r.report["modules"][1];
  EXPECT_EQ(p0["name"], "P(0)");
  EXPECT_EQ(p0["a"], 2);
  EXPECT_EQ(p0["coset"], 0);
  EXPECT_EQ(p0["window"], 3);
  EXPECT_EQ(p0["up"]["-1"], 0);
  EXPECT_EQ(p0["down"]["0"], 1);
}

TEST(Reports, DeterministicExceptTiming) {
  auto const w = spec(R"({"rank":2,"weights":[[1,2],[-1,3],[2,0]]})");
  EXPECT_EQ(strip_timing(cmd_genset(w, {.trace = true}).report).dump(),
            strip_timing(cmd_genset(w, {.trace = true}).report).dump());
  auto const s = cmd_genset(w, {}).report;
  EXPECT_EQ(strip_timing(cmd_certify(w, s, {.depth = std::nullopt, .extended = 0, .tree = true}).report).dump(),
            strip_timing(cmd_certify(w, s, {.depth = std::nullopt, .extended = 0, .tree = true}).report).dump());
  EXPECT_EQ(strip_timing(cmd_rank1(2, {.ses = true, .quiver = true, .syzygy = 4}).report).dump(),
            strip_timing(cmd_rank1(2, {.ses = true, .quiver = true, .syzygy = 4}).report).dump());
}

// genset output fed to certify exits 0, and the serialized certificate
// survives independent replay.
TEST(RoundTrip, GensetThenCertify) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t const r = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::size_t const n = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    TorusAction const action(r, oracle::random_matrix(rng, r, n, -3, 3));
    Json const w = io::to_json(action);
    auto const g = cmd_genset(w, {});
    ASSERT_EQ(g.exit_code, ok);
    auto const c = cmd_certify(w, g.report, {.depth = std::nullopt, .extended = 0, .tree = true});
    ASSERT_EQ(c.exit_code, ok) << w.dump();
    auto const s = io::weight_set_from_json(g.report, action.rank);
    auto const check = io::verify_certificate(c.report["certificate"], s, action);
    ASSERT_TRUE(check.consistent) << check.problem;
    ASSERT_TRUE(check.valid);
  }
}

TEST(VerifyCertificate, DetectsTampering) {
  auto const action = TorusAction::rank_one({2});
  auto const s = WeightSet::scalars({0, 1});
  auto tree = io::certificate_node_to_json(certify_valid(s, action).tree);
  auto const honest = io::verify_certificate(tree, s, action);
  EXPECT_TRUE(honest.consistent) << honest.problem;
  EXPECT_FALSE(honest.valid);

  auto forged = tree;
  forged["outcome"] = "pass";
  EXPECT_FALSE(io::verify_certificate(forged, s, action).consistent);
  auto moved = tree;
  moved["children"][1]["children"][0]["set"] = spec("[[0]]");
  EXPECT_FALSE(io::verify_certificate(moved, s, action).consistent);
  EXPECT_FALSE(io::verify_certificate(tree, WeightSet::scalars({-2, 0, 1}), action).consistent);
}

TEST(Selftest, SmallRunIsClean) {
  auto const r = cmd_selftest({.seed = 7, .trials = 15});
  EXPECT_EQ(r.exit_code, ok);
  EXPECT_EQ(r.report["soundness_violations"], 0);
  EXPECT_EQ(strip_timing(r.report), strip_timing(cmd_selftest({.seed = 7, .trials = 15}).report));
}

TEST(Environment, FeasibleCapOverride) {
  ::setenv("TORUSGEN_MAX_FEASIBLE_ITERS", "3", 1);
  EXPECT_EQ(limits_from_env().max_per_ray, 3);
  EXPECT_EQ(cmd_certify(spec(R"({"rank":1,"weights":[[2]]})"), spec("[[-2],[0],[1]]"), {}).exit_code, ok);
  ::setenv("TORUSGEN_MAX_FEASIBLE_ITERS", "zero", 1);
  EXPECT_EQ(cmd_genset(spec(R"({"rank":1,"weights":[[2]]})"), {}).exit_code, input_error);
  ::unsetenv("TORUSGEN_MAX_FEASIBLE_ITERS");
}

// The installed binary follows the same exit-code contract.
TEST(Binary, ExitCodes) {
  namespace fs = std::filesystem;
  fs::path const dir = fs::temp_directory_path() / "torusgen_cli_test";
  fs::create_directories(dir);
  auto write = [&](std::string const& name, std::string const& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  auto const w = write("w.json", R"({"rank":1,"weights":[[2]]})");
  auto const good = write("good.json", "[[-2],[0],[1]]");
  auto const bad = write("bad.json", "[[0],[1]]");
  auto const broken = write("broken.json", "{\"rank\":1,");
  std::string const bin = TORUSGEN_CLI_PATH;
  auto run = [&](std::string const& args) {
    int const st = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(st);
  };
  EXPECT_EQ(run("genset " + w), 0);
  EXPECT_EQ(run("certify " + w + " " + good), 0);
  EXPECT_EQ(run("certify " + w + " " + bad), 1);
  EXPECT_EQ(run("genset " + broken), 2);
  EXPECT_EQ(run("genset " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("rank1 2 --ses --pretty"), 0);
}

}  // namespace
}  // namespace torusgen::cli
