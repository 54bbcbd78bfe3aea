#pragma once

#include "torusgen/action.hpp"
#include "torusgen/errors.hpp"
#include "torusgen/lattice.hpp"

#include <optional>
#include <vector>

namespace torusgen {

// The equivariant category splits by the coset of A (the weight lattice)
// inside its saturation A^sat; weights outside A^sat occur in no module.
struct BlockStructure {
  Lattice weight_lattice;            // A^sat
  Lattice block_lattice;             // A
  QuotientDescription block_group;   // A^sat / A, in A^sat coordinates
  std::vector<IntVector> reps;       // canonical block representatives in Z^r
  std::vector<std::optional<std::size_t>> labels;  // block of each action weight

  std::size_t block_count() const { return reps.size(); }

  std::optional<std::size_t> label(IntVector const& w) const {
    auto const c = weight_lattice.coordinates(w);
    if (!c) return std::nullopt;
    return block_group.index_of(*c);
  }
};

inline BlockStructure block_structure(TorusAction const& action) {
  BlockStructure b;
  b.block_lattice = span_lattice(action.weights);
  b.weight_lattice = saturate(b.block_lattice);
  std::vector<IntVector> reduced;
  for (std::size_t j = 0; j < action.dimension(); ++j)
    reduced.push_back(*b.weight_lattice.coordinates(action.weight(j)));
  b.block_group = quotient(span_lattice(IntMatrix::from_columns(b.weight_lattice.rank(), reduced)));
  for (auto const& c : b.block_group.coset_reps) b.reps.push_back(b.weight_lattice.basis() * c);
  for (std::size_t j = 0; j < action.dimension(); ++j) b.labels.push_back(b.label(action.weight(j)));
  return b;
}

struct Block {
  IntVector rep;
  std::vector<IntVector> members;
};

struct BlockPartition {
  std::vector<Block> blocks;
  std::vector<IntVector> unlabelable;
};

/// Partition of s by block; elements outside A^sat are collected separately.
inline BlockPartition partition_blocks(WeightSet const& s, BlockStructure const& b) {
  BlockPartition p;
  for (auto const& rep : b.reps) p.blocks.push_back({rep, {}});
  for (auto const& e : s) {
    if (auto idx = b.label(e))
      p.blocks[*idx].members.push_back(e);
    else
      p.unlabelable.push_back(e);
  }
  return p;
}

inline std::vector<Block> assign_blocks(WeightSet const& s, BlockStructure const& b) {
  auto p = partition_blocks(s, b);
  if (!p.unlabelable.empty())
    throw UnlabelableWeight("weight " + to_string(p.unlabelable.front()) +
                            " lies outside the saturated weight lattice");
  return std::move(p.blocks);
}

}  // namespace torusgen
