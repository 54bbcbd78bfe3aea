#pragma once

#include "torusgen/json_io.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace torusgen::cli {

using io::Json;

enum ExitCode : int { ok = 0, not_certified = 1, input_error = 2 };

struct Outcome {
  int exit_code = ok;
  Json report;      // printed on stdout
  std::string error;  // printed on stderr when non-empty
};

#ifndef TORUSGEN_VERSION
#define TORUSGEN_VERSION "0.0.0"
#endif

class InputError : public Error {
 public:
  using Error::Error;
};

/// Parses JSON text; syntax errors carry the 1-based line and column.
inline Json parse_json_text(std::string const& text, std::string const& source) {
  try {
    return Json::parse(text);
  } catch (Json::parse_error const& e) {
    std::size_t line = 1, col = 1;
    std::size_t const upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
}

inline Json read_json_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

/// Per-ray multiplicity cap for support membership, overridable through
/// TORUSGEN_MAX_FEASIBLE_ITERS.
inline FeasibilityLimits limits_from_env() {
  FeasibilityLimits limits;
  if (char const* v = std::getenv("TORUSGEN_MAX_FEASIBLE_ITERS")) {
    std::string const s(v);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18)
      throw InputError("TORUSGEN_MAX_FEASIBLE_ITERS must be a positive integer");
    limits.max_per_ray = Integer(s);
    if (limits.max_per_ray <= 0) throw InputError("TORUSGEN_MAX_FEASIBLE_ITERS must be a positive integer");
  }
  return limits;
}

inline Json header(std::string const& command) {
  return Json{{"tool", "torusgen"}, {"version", TORUSGEN_VERSION}, {"command", command}};
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class F>
Outcome guarded(F&& body) {
  try {
    return body();
  } catch (InputError const& e) {
    return {input_error, Json(), e.what()};
  } catch (io::InvalidInput const& e) {
    return {input_error, Json(), e.what()};
  } catch (DimensionMismatch const& e) {
    return {input_error, Json(), e.what()};
  } catch (WindowTooSmall const& e) {
    return {input_error, Json(),
            std::string(e.what()) + " (try --window " + std::to_string(e.suggested_window()) + ")"};
  } catch (InvalidQuiver const& e) {
    return {input_error, Json(), e.what()};
  }
}

struct GensetFlags {
  bool trace = false;
  bool prune = false;
};

inline Outcome cmd_genset(Json const& spec, GensetFlags const& flags) {
  return guarded([&]() -> Outcome {
    Stopwatch clock;
    auto const action = io::action_from_json(spec);
    auto const g = generating_set(action, {.prune = flags.prune});
    auto const cert = certify_valid(g.set, action, {.extended = 0, .limits = limits_from_env()});
    auto const blocks = block_structure(action);
    auto const part = partition_blocks(g.set, blocks);
    Json r = header("genset");
    r["input"] = io::to_json(action);
    r["S"] = io::to_json(g.set);
    r["size"] = g.set.size();
    r["pruned"] = flags.prune;
    r["certificate"] = {{"verdict", cert.valid() ? "valid" : "not_certified"}};
    r["blocks"] = io::blocks_to_json(blocks, part);
    if (flags.trace) r["trace"] = io::trace_to_json(g.trace);
    r["timing_ms"] = clock.elapsed_ms();
    return {ok, r, {}};
  });
}

struct CertifyFlags {
  std::optional<std::size_t> depth;  // defaults to the number of weights
  unsigned extended = 0;
  bool tree = false;
};

inline Outcome cmd_certify(Json const& spec, Json const& set_json, CertifyFlags const& flags) {
  return guarded([&]() -> Outcome {
    Stopwatch clock;
    auto const action = io::action_from_json(spec);
    auto const s = io::weight_set_from_json(set_json, action.rank);
    auto const limits = limits_from_env();
    auto const cert = certify_valid(s, action, {.extended = flags.extended, .limits = limits});
    std::size_t const depth = flags.depth.value_or(action.dimension());
    auto const screen = necessary_check(s, action, depth, limits);

    Json r = header("certify");
    r["input"] = io::to_json(action);
    r["S"] = io::to_json(s);
    r["size"] = s.size();
    r["extended"] = flags.extended;
    r["verdict"] = cert.valid() ? "valid" : "not_certified";
    if (cert.witness) r["witness"] = io::witness_to_json(*cert.witness);
    char const* outcome = screen.outcome == NecessaryResult::Outcome::pass   ? "pass"
                          : screen.outcome == NecessaryResult::Outcome::fail ? "fail"
                                                                             : "inconclusive";
    Json nec{{"depth", depth}, {"outcome", outcome}, {"descriptors_checked", screen.descriptors_checked}};
    if (screen.failing) nec["failing"] = io::descriptor_to_json(*screen.failing);
    if (!screen.message.empty()) nec["message"] = screen.message;
    r["necessary_check"] = nec;
    if (flags.tree) r["certificate"] = io::certificate_node_to_json(cert.tree);
    r["timing_ms"] = clock.elapsed_ms();
    return {cert.valid() ? ok : not_certified, r, {}};
  });
}

inline Outcome cmd_blocks(Json const& spec, std::optional<Json> const& set_json) {
  return guarded([&]() -> Outcome {
    Stopwatch clock;
    auto const action = io::action_from_json(spec);
    auto const b = block_structure(action);
    std::optional<BlockPartition> part;
    int code = ok;
    Json r = header("blocks");
    r["input"] = io::to_json(action);
    if (set_json) {
      auto const s = io::weight_set_from_json(*set_json, action.rank);
      part = partition_blocks(s, b);
      r["S"] = io::to_json(s);
    }
    Json body = io::blocks_to_json(b, part);
    for (auto it = body.begin(); it != body.end(); ++it) r[it.key()] = it.value();
    if (part) {
      Json errors = Json::array();
      for (auto const& w : part->unlabelable)
        errors.push_back({{"weight", io::to_json(w)}, {"error", "UnlabelableWeight"},
                          {"message", "weight lies outside the saturated weight lattice"}});
      r["errors"] = errors;
      if (!part->unlabelable.empty()) code = not_certified;
    }
    r["timing_ms"] = clock.elapsed_ms();
    return {code, r, {}};
  });
}

struct Rank1Flags {
  long window = 10;
  bool ses = false;
  bool quiver = false;
  std::optional<std::size_t> syzygy;
  bool modules = false;
};

inline Outcome cmd_rank1(long a, Rank1Flags const& flags) {
  return guarded([&]() -> Outcome {
    using namespace rank1;
    if (a < 1) throw InputError("a must be at least 1");
    if (flags.window < 3) throw InputError("window must be at least 3");
    Stopwatch clock;
    Json r = header("rank1");
    r["a"] = a;
    r["window"] = flags.window;
    auto const g = generating_set(TorusAction::rank_one({a}));
    r["S"] = io::to_json(g.set);

    auto const summands = generator_summands(a, flags.window);
    auto const alg = end_algebra(summands);
    Json names = Json::array();
    for (auto const& m : summands) names.push_back(m.name());
    r["summands"] = names;
    r["end_dimension"] = alg.dimension();
    Json hom = Json::array();
    for (auto const& row : alg.hom_dims) hom.push_back(io::sizes_to_json(row));
    r["hom_dimensions"] = hom;
    Json blocks = Json::array();
    for (std::size_t i = 0; i < alg.blocks.size(); ++i)
      blocks.push_back({{"summands", io::sizes_to_json(alg.blocks[i])}, {"dimension", alg.block_dimensions[i]}});
    r["blocks"] = blocks;

    // Block 0 on its own: P(-a) and P(0).
    auto const r0 = end_algebra({summands[0], summands[1]});
    r["block0_dimension"] = r0.dimension();
    if (flags.quiver) {
      r["quiver"] = io::quiver_to_json(r0.quiver);
      r["quiver"]["presentation_complete"] = r0.presentation_complete;
    }
    if (flags.ses) {
      auto const cx = make_standard(StandardKind::functions, a, 0, flags.window);
      auto const dl = make_standard(StandardKind::delta, a, 0, flags.window);
      auto const p0 = make_standard(StandardKind::projective, a, 0, flags.window);
      auto const pm = make_standard(StandardKind::projective, a, -a, flags.window);
      auto row = [](std::string name, SesReport const& s) {
        return Json{{"sequence", name}, {"exact", s.exact}, {"split", s.split}, {"non_split", s.non_split()},
                    {"detail", s.detail}};
      };
      Json ses = Json::array();
      ses.push_back(row("0 -> " + dl.name() + " -> " + p0.name() + " -> " + cx.name() + " -> 0", verify_ses(dl, p0, cx)));
      ses.push_back(row("0 -> " + cx.name() + " -> " + pm.name() + " -> " + dl.name() + " -> 0 (displayed as P(-1))",
                        verify_ses(cx, pm, dl)));
      r["ses"] = ses;
    }
    if (flags.syzygy) r["syzygy"] = io::syzygy_to_json(syzygy_probe(r0.quiver, *flags.syzygy));
    if (flags.modules) {
      Json mods = Json::array();
      for (auto const& m : summands) mods.push_back(io::module_to_json(m));
      mods.push_back(io::module_to_json(make_standard(StandardKind::functions, a, 0, flags.window)));
      mods.push_back(io::module_to_json(make_standard(StandardKind::delta, a, 0, flags.window)));
      r["modules"] = mods;
    }
    r["timing_ms"] = clock.elapsed_ms();
    return {ok, r, {}};
  });
}

struct SelftestFlags {
  std::uint64_t seed = 1;
  std::size_t trials = 50;
};

/// Randomized property harness: for random actions (r <= 3, n <= 4, entries
/// in [-3, 3]) the constructed set must certify and pass the necessary
/// screen, and no mutated set may certify while failing the screen.
inline Outcome cmd_selftest(SelftestFlags const& flags) {
  Stopwatch clock;
  std::mt19937_64 rng(flags.seed);
  std::size_t certified = 0, screened = 0, violations = 0, inconclusive = 0;
  Json failures = Json::array();
  auto const limits = limits_from_env();
  for (std::size_t t = 0; t < flags.trials; ++t) {
    std::size_t const r = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::size_t const n = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    IntMatrix w(r, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) w(i, j) = std::uniform_int_distribution<int>(-3, 3)(rng);
    TorusAction const action(r, w);
    auto const s = generating_set(action).set;
    bool const valid = certify_valid(s, action, {.extended = 0, .limits = limits}).valid();
    auto const screen = necessary_check(s, action, n, limits);
    certified += valid;
    screened += screen.passed();
    if (screen.outcome == NecessaryResult::Outcome::inconclusive) ++inconclusive;
    if (!valid || !screen.passed()) failures.push_back({{"trial", t}, {"weights", io::columns_to_json(w)}});

    WeightSet m = s;
    auto const elems = s.elements();
    m.erase(elems[std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng)]);
    if (certify_valid(m, action, {.extended = 0, .limits = limits}).valid() &&
        necessary_check(m, action, n, limits).outcome == NecessaryResult::Outcome::fail)
      ++violations;
  }
  Json r = header("selftest");
  r["seed"] = flags.seed;
  r["trials"] = flags.trials;
  r["certified"] = certified;
  r["necessary_passed"] = screened;
  r["inconclusive"] = inconclusive;
  r["soundness_violations"] = violations;
  r["failures"] = failures;
  r["timing_ms"] = clock.elapsed_ms();
  bool const good = certified == flags.trials && screened == flags.trials && violations == 0;
  return {good ? ok : not_certified, r, {}};
}

// ---- human-readable rendering --------------------------------------------

inline std::string vectors_text(Json const& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ", ";
    if (vs[i].size() == 1) {
      out += vs[i][0].dump();
    } else {
      out += "(";
      for (std::size_t k = 0; k < vs[i].size(); ++k) out += (k ? "," : "") + vs[i][k].dump();
      out += ")";
    }
  }
  return out + "}";
}

inline std::string pretty(Json const& r) {
  std::ostringstream os;
  std::string const cmd = r.value("command", "");
  os << "torusgen " << r.value("version", "") << " " << cmd << "\n";
  if (r.contains("input")) os << "weights: " << vectors_text(r["input"]["weights"]) << " (rank " << r["input"]["rank"] << ")\n";
  if (r.contains("S")) os << "S = " << vectors_text(r["S"]) << "  |S| = " << r["S"].size() << "\n";
  if (cmd == "genset") os << "certificate: " << r["certificate"]["verdict"].get<std::string>() << "\n";
  if (cmd == "certify") {
    os << "verdict: " << r["verdict"].get<std::string>() << "\n";
    if (r.contains("witness")) {
      auto const& w = r["witness"];
      os << "witness: " << w["kind"].get<std::string>() << " at depth " << w["depth"] << ", support base "
         << w["descriptor"]["base"].dump() << ", rays " << w["descriptor"]["rays"].dump() << "\n";
    }
    os << "necessary check (depth " << r["necessary_check"]["depth"] << "): "
       << r["necessary_check"]["outcome"].get<std::string>() << "\n";
  }
  if (r.contains("block_count")) {
    os << "blocks: " << r["block_count"] << "\n";
    for (auto const& b : r["blocks"]) {
      os << "  rep " << b["rep"].dump();
      if (b.contains("members")) os << ": " << vectors_text(b["members"]);
      os << "\n";
    }
    if (r.contains("errors"))
      for (auto const& e : r["errors"]) os << "  error: " << e["weight"].dump() << " " << e["message"].get<std::string>() << "\n";
  }
  if (cmd == "genset" && r.contains("blocks")) {
    os << "blocks: " << r["blocks"]["block_count"] << "\n";
    for (auto const& b : r["blocks"]["blocks"]) os << "  rep " << b["rep"].dump() << ": " << vectors_text(b["members"]) << "\n";
  }
  if (cmd == "rank1") {
    os << "a = " << r["a"] << ", window " << r["window"] << "\n";
    os << "dim End = " << r["end_dimension"] << " (block 0: " << r["block0_dimension"] << ")\n";
    if (r.contains("quiver")) os << r["quiver"]["text"].get<std::string>();
    if (r.contains("ses"))
      for (auto const& s : r["ses"])
        os << s["sequence"].get<std::string>() << ": " << (s["exact"].get<bool>() ? "exact" : "not exact")
           << (s["non_split"].get<bool>() ? ", non-split" : (s["split"].get<bool>() ? ", split" : "")) << "\n";
    if (r.contains("syzygy")) {
      for (auto const& c : r["syzygy"]["chains"])
        os << "simple " << c["simple"] << ": syzygy period " << c["syzygy_period"].dump() << ", orbit period "
           << c["orbit_period"].dump() << "\n";
      os << "infinite global dimension: " << (r["syzygy"]["infinite_global_dimension"].get<bool>() ? "yes" : "no")
         << "\n";
    }
  }
  if (cmd == "selftest")
    os << "trials " << r["trials"] << ", certified " << r["certified"] << ", necessary passed "
       << r["necessary_passed"] << ", soundness violations " << r["soundness_violations"] << "\n";
  if (r.contains("timing_ms")) os << "time: " << r["timing_ms"].get<double>() << " ms\n";
  return os.str();
}

}  // namespace torusgen::cli
