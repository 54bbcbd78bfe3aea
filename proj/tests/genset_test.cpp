#include "torusgen/genset.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

namespace torusgen {
namespace {

TorusAction random_action(std::mt19937_64& rng, std::size_t max_rank, std::size_t max_dim, int lo, int hi) {
  std::size_t const r = std::uniform_int_distribution<std::size_t>(1, max_rank)(rng);
  std::size_t const n = std::uniform_int_distribution<std::size_t>(0, max_dim)(rng);
  return TorusAction(r, oracle::random_matrix(rng, r, n, lo, hi));
}

TEST(GeneratingSet, RankOneWeightTwo) {
  auto const g = generating_set(TorusAction::rank_one({2}));
  EXPECT_EQ(g.set, WeightSet::scalars({-2, 0, 1}));
  ASSERT_EQ(g.trace->kind, DerivationNode::Kind::hyperplane_split);
  EXPECT_EQ(g.trace->coset_reps, (std::vector<IntVector>{make_vector({0}), make_vector({1})}));
  ASSERT_EQ(g.trace->children.size(), 1u);
  EXPECT_EQ(g.trace->children[0].node->result, WeightSet::scalars({0}));
  EXPECT_EQ(g.trace->children[0].shift, make_vector({-2}));
}

TEST(GeneratingSet, RankOneWeightOne) {
  EXPECT_EQ(generating_set(TorusAction::rank_one({1})).set, WeightSet::scalars({-1, 0}));
}

TEST(GeneratingSet, RankOneFamilyMatchesProjectiveGenerator) {
  for (long long a = 1; a <= 6; ++a) {
    WeightSet expected(1);
    expected.insert(make_vector({-a}));
    for (long long b = 0; b < a; ++b) expected.insert(make_vector({b}));
    EXPECT_EQ(generating_set(TorusAction::rank_one({a})).set, expected) << "a = " << a;
  }
}

TEST(GeneratingSet, NoCoordinates) {
  for (std::size_t r : {0u, 1u, 3u}) {
    auto const g = generating_set(TorusAction(r, IntMatrix(r, 0)));
    WeightSet expected(r);
    expected.insert(zero_vector(r));
    EXPECT_EQ(g.set, expected);
    EXPECT_EQ(g.trace->kind, DerivationNode::Kind::base_case);
    EXPECT_FALSE(g.trace->note.empty());
  }
}

// Hand replay: S' = {0}; S_1 = gen([3]) = {-3,0,1,2}, S_1 - 2 = {-5,-2,-1,0};
// S_2 = gen([2]) = {-2,0,1}, S_2 - 3 = {-5,-3,-2}.
TEST(GeneratingSet, WeightsTwoAndThree) {
  auto const action = TorusAction::rank_one({2, 3});
  auto const g = generating_set(action);
  EXPECT_EQ(g.set, WeightSet::scalars({-5, -3, -2, -1, 0, 1, 2}));
  EXPECT_TRUE(certify_valid(g.set, action).valid());
}

TEST(GeneratingSet, ZeroWeightsReduceToTrivialTorus) {
  auto const g = generating_set(TorusAction::rank_one({0, 0}));
  EXPECT_EQ(g.set, WeightSet::scalars({0}));
  ASSERT_EQ(g.trace->kind, DerivationNode::Kind::kernel_reduction);
  EXPECT_EQ(g.trace->reduced->rank, 0u);
  EXPECT_EQ(g.trace->reduced->kind, DerivationNode::Kind::base_case);
}

TEST(ReduceKernel, DiagonalWeights) {
  auto const action = TorusAction::from_columns(2, {make_vector({2, 2}), make_vector({4, 4})});
  auto const red = reduce_kernel(action);
  EXPECT_EQ(red.reduced.rank, 1u);
  EXPECT_EQ(red.reduced.weights, IntMatrix::from_rows({{2, 4}}));
  EXPECT_EQ(red.embed, IntMatrix::from_rows({{1}, {1}}));
  EXPECT_EQ(red.embed * red.reduced.weights, action.weights);
}

TEST(ReduceKernel, ZeroWeight) {
  auto const red = reduce_kernel(TorusAction::rank_one({0}));
  EXPECT_EQ(red.reduced.rank, 0u);
  EXPECT_EQ(red.reduced.weights.rows(), 0u);
  EXPECT_EQ(red.reduced.weights.cols(), 1u);
}

TEST(ReduceKernel, RejectsSpanningWeights) {
  auto const action = TorusAction::from_columns(2, {make_vector({1, 0}), make_vector({0, 1})});
  EXPECT_THROW(reduce_kernel(action), NotDeficient);
}

TEST(GeneratingSet, EmbeddedRankOneAction) {
  auto const action = TorusAction::from_columns(2, {make_vector({2, 2}), make_vector({4, 4})});
  auto const g = generating_set(action);
  for (auto const& s : g.set) EXPECT_EQ(s[0], s[1]);
  EXPECT_TRUE(certify_valid(g.set, action).valid());
}

TEST(GeneratingSet, PruneKeepsCertificate) {
  auto const action = TorusAction::rank_one({2, 3});
  auto const full = generating_set(action).set;
  auto const pruned = generating_set(action, {.prune = true}).set;
  EXPECT_TRUE(full.includes(pruned));
  EXPECT_LE(pruned.size(), full.size());
  EXPECT_TRUE(certify_valid(pruned, action).valid());
}

void check_trace_laws(DerivationNode const& node, IntMatrix const& weights_of_root) {
  EXPECT_EQ(replay(node), node.result);
  if (node.kind == DerivationNode::Kind::base_case) {
    EXPECT_TRUE(node.coordinates.empty() || node.rank == 0);
  }
  if (node.kind == DerivationNode::Kind::hyperplane_split) {
    for (auto const& child : node.children) {
      EXPECT_TRUE(node.result.includes(child.node->result));
      EXPECT_TRUE(node.result.includes(child.node->result.shifted(child.shift)));
      check_trace_laws(*child.node, weights_of_root);
    }
    // Coset cover by S'.
    auto const q = quotient(span_lattice(node.weights));
    std::set<std::size_t> hit;
    for (auto const& s : node.result) hit.insert(q.index_of(s));
    EXPECT_EQ(hit.size(), q.coset_reps.size());
    // Growth bound.
    std::size_t bound = q.coset_reps.size();
    for (auto const& child : node.children) bound += 2 * child.node->result.size();
    EXPECT_LE(node.result.size(), bound);
  }
  if (node.kind == DerivationNode::Kind::kernel_reduction) check_trace_laws(*node.reduced, weights_of_root);
}

TEST(GeneratingSetProperties, RandomActions) {
  std::mt19937_64 rng(9001);
  for (int trial = 0; trial < 40; ++trial) {
    auto const action = random_action(rng, 3, 3, -3, 3);
    auto const g = generating_set(action);
    auto const again = generating_set(action);
    ASSERT_EQ(g.set, again.set);
    ASSERT_EQ(g.set.rank(), action.rank);
    check_trace_laws(*g.trace, action.weights);
    ASSERT_TRUE(certify_valid(g.set, action).valid()) << action.weights.str();

    // Permuting columns permutes the recursion only.
    std::vector<std::size_t> perm(action.dimension());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<IntVector> cols;
    for (auto p : perm) cols.push_back(action.weight(p));
    auto const permuted = TorusAction::from_columns(action.rank, cols);
    ASSERT_EQ(generating_set(permuted).set, g.set) << action.weights.str();

    // Fourier symmetry: -gen(-W) certifies for W.
    auto const dual = generating_set(action.negated()).set.negated();
    ASSERT_TRUE(certify_valid(dual, action).valid()) << action.weights.str();
  }
}

}  // namespace
}  // namespace torusgen
