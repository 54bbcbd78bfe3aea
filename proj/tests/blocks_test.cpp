#include "torusgen/blocks.hpp"
#include "torusgen/genset.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace torusgen {
namespace {

TEST(BlockStructure, RankOneWeightTwo) {
  auto const b = block_structure(TorusAction::rank_one({2}));
  EXPECT_EQ(b.block_count(), 2u);
  EXPECT_EQ(b.label(make_vector({0})), 0u);
  EXPECT_EQ(b.label(make_vector({1})), 1u);
  EXPECT_EQ(b.label(make_vector({-2})), 0u);
  EXPECT_EQ(b.labels, (std::vector<std::optional<std::size_t>>{0u}));
}

TEST(BlockStructure, StandardBasisHasOneBlock) {
  auto const b = block_structure(TorusAction::from_columns(2, {make_vector({1, 0}), make_vector({0, 1})}));
  EXPECT_EQ(b.block_count(), 1u);
}

TEST(BlockStructure, DiagonalWeight) {
  auto const b = block_structure(TorusAction::from_columns(2, {make_vector({2, 2})}));
  EXPECT_EQ(b.weight_lattice, span_lattice(IntMatrix::from_rows({{1}, {1}})));
  EXPECT_EQ(b.block_lattice, span_lattice(IntMatrix::from_rows({{2}, {2}})));
  EXPECT_EQ(b.block_count(), 2u);
  EXPECT_FALSE(b.label(make_vector({1, 0})).has_value());
  EXPECT_EQ(b.label(make_vector({1, 1})), 1u);
}

TEST(AssignBlocks, RankOneGeneratorSplitsAsExpected) {
  auto const action = TorusAction::rank_one({2});
  auto const blocks = assign_blocks(WeightSet::scalars({-2, 0, 1}), block_structure(action));
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].members, (std::vector<IntVector>{make_vector({-2}), make_vector({0})}));
  EXPECT_EQ(blocks[1].members, (std::vector<IntVector>{make_vector({1})}));
}

TEST(AssignBlocks, SingleBlock) {
  auto const blocks = assign_blocks(WeightSet::scalars({0}), block_structure(TorusAction::rank_one({1})));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].members.size(), 1u);
}

TEST(AssignBlocks, OutsideSaturationThrows) {
  auto const b = block_structure(TorusAction::from_columns(2, {make_vector({2, 2})}));
  WeightSet s(2);
  s.insert(make_vector({1, 0}));
  EXPECT_THROW(assign_blocks(s, b), UnlabelableWeight);
  auto const p = partition_blocks(s, b);
  EXPECT_EQ(p.unlabelable.size(), 1u);
}

TEST(BlockProperties, RandomActions) {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t const r = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::size_t const n = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    TorusAction const action(r, oracle::random_matrix(rng, r, n, -3, 3));
    auto const b = block_structure(action);
    // Block count = product of invariant factors of A inside A^sat.
    ASSERT_EQ(Integer(b.block_count()), b.block_group.order());
    ASSERT_TRUE(b.weight_lattice.contains(b.block_lattice));

    auto const s = generating_set(action).set;
    auto const blocks = assign_blocks(s, b);
    std::size_t total = 0;
    for (auto const& blk : blocks) {
      total += blk.members.size();
      if (span_lattice(action.weights).full_rank()) ASSERT_FALSE(blk.members.empty());
    }
    ASSERT_EQ(total, s.size());

    // Labels are invariant under translation by A.
    for (auto const& e : s)
      for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(b.label(e), b.label(e + Integer(3) * action.weight(j)));
  }
  for (long long a = 1; a <= 6; ++a) EXPECT_EQ(block_structure(TorusAction::rank_one({a})).block_count(), std::size_t(a));
}

}  // namespace
}  // namespace torusgen
