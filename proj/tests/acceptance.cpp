// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "torusgen/blocks.hpp"
#include "torusgen/certify.hpp"
#include "torusgen/genset.hpp"
#include "torusgen/quiver.hpp"
#include "torusgen/rank1/end_algebra.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

namespace {

using namespace torusgen;

struct Verdict {
  bool ok = true;
  std::string detail;
};

Verdict fail(std::string why) { return {false, std::move(why)}; }

int failures = 0;

void criterion(int id, char const* title, double budget_seconds, std::function<Verdict()> const& body) {
  auto const start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (std::exception const& e) {
    v = fail(std::string("exception: ") + e.what());
  }
  double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (v.ok && secs > budget_seconds) v = fail("over budget (" + std::to_string(budget_seconds) + " s)");
  if (!v.ok) ++failures;
  std::printf("%s  [%d] %s  (%.3f s)%s%s\n", v.ok ? "PASS" : "FAIL", id, title, secs, v.detail.empty() ? "" : "  ",
              v.detail.c_str());
  std::fflush(stdout);
}

WeightSet expected_rank1(long a) {
  WeightSet s(1);
  s.insert(IntVector{Integer(-a)});
  for (long x = 0; x < a; ++x) s.insert(IntVector{Integer(x)});
  return s;
}

struct RandomAction {
  TorusAction action;
  WeightSet set;
};

// The shared sample for the property and soundness criteria.
std::vector<RandomAction> const& sample() {
  static std::vector<RandomAction> const actions = [] {
    std::mt19937_64 rng(20261016);
    std::vector<RandomAction> out;
    for (int t = 0; t < 200; ++t) {
      std::size_t const r = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      std::size_t const n = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
      TorusAction action(r, oracle::random_matrix(rng, r, n, -3, 3));
      auto set = generating_set(action).set;
      out.push_back({std::move(action), std::move(set)});
    }
    return out;
  }();
  return actions;
}

WeightSet mutate(WeightSet const& s, std::mt19937_64& rng) {
  WeightSet m = s;
  auto const elems = s.elements();
  auto pick = [&] { return elems[std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng)]; };
  auto random_vector = [&] {
    IntVector v(s.rank());
    for (auto& x : v) x = std::uniform_int_distribution<int>(-4, 4)(rng);
    return v;
  };
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      m.erase(pick());
      break;
    case 1:
      m.insert(random_vector());
      break;
    default: {
      auto const e = pick();
      m.erase(e);
      m.insert(e + random_vector());
    }
  }
  return m;
}

}  // namespace

int main() {
  using namespace torusgen::rank1;

  criterion(1, "rank-1 generating sets for a = 1..6", 1.0, [] {
    for (long a = 1; a <= 6; ++a) {
      auto const s = generating_set(TorusAction::rank_one({a})).set;
      if (s != expected_rank1(a)) return fail("a = " + std::to_string(a) + ": got " + std::to_string(s.size()) + " elements");
    }
    return Verdict{};
  });

  criterion(2, "rank-1 block count a, {-a, 0} in block 0", 1.0, [] {
    for (long a = 1; a <= 6; ++a) {
      auto const b = block_structure(TorusAction::rank_one({a}));
      if (b.block_count() != static_cast<std::size_t>(a)) return fail("a = " + std::to_string(a) + ": block count");
      auto const p = partition_blocks(expected_rank1(a), b);
      std::vector<IntVector> const zero{IntVector{Integer(-a)}, IntVector{Integer(0)}};
      if (a >= 2 && p.blocks[0].members != zero) return fail("a = " + std::to_string(a) + ": block 0 members");
      for (std::size_t i = 1; i < p.blocks.size(); ++i)
        if (p.blocks[i].members.size() != 1) return fail("a = " + std::to_string(a) + ": singleton blocks");
    }
    return Verdict{};
  });

  criterion(3, "a = 2 example: End, quiver, sequences, periodicity, total End", 5.0, [] {
    long const a = 2, window = 10;
    auto const summands = generator_summands(a, window);
    auto const r0 = end_algebra({summands[0], summands[1]});
    if (r0.dimension() != 4) return fail("dim End(P(-2) + P(0)) = " + std::to_string(r0.dimension()));
    auto const expected = QuiverPresentation::parse(
        "vertices 2\narrow alpha 0 1\narrow beta 1 0\nrelation alpha*beta\nrelation beta*alpha\n");
    if (r0.quiver.to_text() != expected.to_text()) return fail("quiver:\n" + r0.quiver.to_text());
    if (!r0.presentation_complete || BoundPathAlgebra(r0.quiver).dimension() != 4)
      return fail("presentation does not reproduce End");
    auto const cx = make_standard(StandardKind::functions, a, 0, window);
    auto const dl = make_standard(StandardKind::delta, a, 0, window);
    auto const p0 = make_standard(StandardKind::projective, a, 0, window);
    auto const pm = make_standard(StandardKind::projective, a, -a, window);
    auto const first = verify_ses(dl, p0, cx);
    auto const second = verify_ses(cx, pm, dl);
    if (!first.non_split()) return fail("0 -> delta -> P(0) -> C[x] -> 0: " + first.detail);
    if (!second.non_split()) return fail("0 -> C[x] -> P(-a) -> delta -> 0: " + second.detail);
    for (long n = 1; n <= 3; ++n)
      if (!iso_check(p0, make_standard(StandardKind::projective, a, 2 * n, window)))
        return fail("P(0) not isomorphic to P(" + std::to_string(2 * n) + ")");
    auto const total = end_algebra(summands).dimension();
    if (total != static_cast<std::size_t>(4 + (a - 1))) return fail("total End dimension " + std::to_string(total));
    return Verdict{};
  });

  criterion(4, "syzygies of R0 have period 1 through depth 6", 1.0, [] {
    auto const r0 = QuiverPresentation::parse(
        "vertices 2\narrow alpha 0 1\narrow beta 1 0\nrelation alpha*beta\nrelation beta*alpha\n");
    auto const rep = syzygy_probe(r0, 6);
    if (rep.chains.size() != 2) return fail("expected two simples");
    for (auto const& c : rep.chains) {
      if (c.syzygy_period != std::optional<std::size_t>(1)) return fail("simple " + std::to_string(c.simple));
      if (c.simple_index.size() != 6) return fail("chain stopped early");
      for (auto const& s : c.simple_index)
        if (!s) return fail("a syzygy of simple " + std::to_string(c.simple) + " is not simple");
    }
    if (!rep.infinite_global_dimension || rep.global_dimension) return fail("global dimension not infinite");
    return Verdict{};
  });

  criterion(5, "200 random actions: constructed set certifies and passes the screen", 300.0, [] {
    std::size_t certified = 0, screened = 0;
    for (auto const& [action, set] : sample()) {
      certified += certify_valid(set, action).valid();
      screened += necessary_check(set, action, action.dimension()).passed();
    }
    if (certified != 200 || screened != 200)
      return fail(std::to_string(certified) + " certified, " + std::to_string(screened) + " screened");
    return Verdict{};
  });

  criterion(6, "soundness on 200 constructed and 200 mutated sets", 300.0, [] {
    std::mt19937_64 rng(7);
    std::size_t violations = 0, checked = 0, certified = 0, rejected = 0;
    auto check = [&](WeightSet const& s, TorusAction const& action) {
      ++checked;
      bool const valid = certify_valid(s, action).valid();
      bool const screen_fail =
          necessary_check(s, action, action.dimension()).outcome == NecessaryResult::Outcome::fail;
      certified += valid;
      rejected += screen_fail;
      violations += valid && screen_fail;
    };
    for (auto const& [action, set] : sample()) {
      check(set, action);
      check(mutate(set, rng), action);
    }
    Verdict v{violations == 0, std::to_string(checked) + " sets, " + std::to_string(certified) + " certified, " +
                                       std::to_string(rejected) + " screened out, " + std::to_string(violations) +
                                       " violations"};
    return v;
  });

  criterion(7, "500 random matrices: normal forms and quotient order", 30.0, [] {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
      std::size_t const r = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
      std::size_t const n = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
      IntMatrix const m = oracle::random_matrix(rng, r, n, -9, 9);
      auto const hf = hnf(m);
      if (m * hf.u != hf.h || abs(determinant(hf.u)) != 1) return fail("hnf on " + m.str());
      auto const sf = snf(m);
      if (sf.u * m * sf.v != sf.d || abs(determinant(sf.u)) != 1 || abs(determinant(sf.v)) != 1)
        return fail("snf on " + m.str());
      IntMatrix const sq = oracle::random_matrix(rng, r, r, -5, 5);
      std::vector<std::vector<Integer>> rows(r, std::vector<Integer>(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) rows[i][j] = sq(i, j);
      Integer const det = abs(oracle::det_expand(rows));
      if (det == 0 || det > 5000) continue;
      auto const q = quotient(span_lattice(sq));
      if (q.order() != det || q.coset_reps.size() != static_cast<std::size_t>(det))
        return fail("quotient order on " + sq.str());
    }
    return Verdict{};
  });

  criterion(8, "Hom/End dimensions agree between windows 6 and 12 for a <= 4", 60.0, [] {
    for (long a = 1; a <= 4; ++a) {
      auto modules = [a](long w) {
        auto ms = generator_summands(a, w);
        ms.push_back(make_standard(StandardKind::functions, a, 0, w));
        ms.push_back(make_standard(StandardKind::delta, a, 0, w));
        return ms;
      };
      auto const small = modules(6), large = modules(12);
      for (std::size_t i = 0; i < small.size(); ++i)
        for (std::size_t j = 0; j < small.size(); ++j) {
          if (small[i].coset() != small[j].coset()) continue;
          if (hom_dim(small[i], small[j]).dimension() != hom_dim(large[i], large[j]).dimension())
            return fail("a = " + std::to_string(a) + ": Hom(" + small[i].name() + ", " + small[j].name() + ")");
        }
      auto const gs = generator_summands(a, 6), gl = generator_summands(a, 12);
      if (end_algebra(gs).dimension() != end_algebra(gl).dimension())
        return fail("a = " + std::to_string(a) + ": End dimension");
    }
    return Verdict{};
  });

  std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
