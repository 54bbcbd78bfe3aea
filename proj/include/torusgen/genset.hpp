#pragma once

#include "torusgen/action.hpp"
#include "torusgen/certify.hpp"
#include "torusgen/errors.hpp"
#include "torusgen/lattice.hpp"

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace torusgen {

/// One step of the inductive construction. Nodes reached along different
/// removal orders are shared, so a trace is a DAG whose unfolding is the
/// recursion tree.
struct DerivationNode {
  enum class Kind { base_case, kernel_reduction, hyperplane_split };

  struct Child {
    std::size_t coordinate;  // original index of the omitted coordinate
    IntVector shift;         // -weight of that coordinate, in this node's coordinates
    std::shared_ptr<DerivationNode const> node;
  };

  Kind kind = Kind::base_case;
  std::size_t rank = 0;                  // rank of the torus at this node
  std::vector<std::size_t> coordinates;  // original indices still present
  IntMatrix weights;                     // rank x |coordinates|
  std::string note;

  // kernel_reduction: result = embed * (reduced result)
  IntMatrix embed;
  std::shared_ptr<DerivationNode const> reduced;

  // hyperplane_split: result = coset_reps u children u (children shifted)
  std::vector<IntVector> coset_reps;
  std::vector<Child> children;

  WeightSet result;
};

using DerivationTrace = std::shared_ptr<DerivationNode const>;

struct GeneratingSet {
  WeightSet set;
  DerivationTrace trace;
};

struct ReducedAction {
  TorusAction reduced;
  IntMatrix embed;  // r x r', image = saturation of the weight lattice
};

/// Rewrites an action whose weights do not span Q^r as an action of the
/// quotient torus: the weights in a basis of the saturated weight lattice.
inline ReducedAction reduce_kernel(TorusAction const& action) {
  Lattice const a = span_lattice(action.weights);
  if (a.rank() == action.rank)
    throw NotDeficient("weights already span Q^" + std::to_string(action.rank));
  Lattice const sat = saturate(a);
  IntMatrix const& embed = sat.basis();
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < action.dimension(); ++j) cols.push_back(*sat.coordinates(action.weight(j)));
  return {TorusAction(sat.rank(), IntMatrix::from_columns(sat.rank(), cols), action.labels), embed};
}

namespace detail {

class GeneratingSetBuilder {
 public:
  DerivationTrace build(std::size_t rank, IntMatrix const& weights, std::vector<std::size_t> const& coords) {
    Key key{rank, coords, weights.columns()};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    auto node = std::make_shared<DerivationNode>();
    node->rank = rank;
    node->coordinates = coords;
    node->weights = weights;
    node->result = WeightSet(rank);

    std::size_t const n = weights.cols();
    Lattice const a = span_lattice(weights);
    if (n == 0 || rank == 0) {
      node->kind = DerivationNode::Kind::base_case;
      node->note = rank == 0 ? "trivial torus: the only character is 0"
                             : "no coordinates: strong equivariance makes the torus act on every module "
                               "through its differential, which is zero here, so only weight 0 occurs";
      node->result.insert(zero_vector(rank));
    } else if (a.rank() < rank) {
      node->kind = DerivationNode::Kind::kernel_reduction;
      auto const red = reduce_kernel(TorusAction(rank, weights));
      node->note = "weights span a rank-" + std::to_string(a.rank()) +
                   " sublattice; a subtorus acts trivially, pass to the quotient torus";
      node->embed = red.embed;
      node->reduced = build(red.reduced.rank, red.reduced.weights, coords);
      for (auto const& s : node->reduced->result) node->result.insert(red.embed * s);
    } else {
      node->kind = DerivationNode::Kind::hyperplane_split;
      node->coset_reps = quotient(a).coset_reps;
      for (auto const& rep : node->coset_reps) node->result.insert(rep);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> rest = coords;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        DerivationNode::Child child{coords[i], -weights.column(i), build(rank, weights.without_column(i), rest)};
        node->result.merge(child.node->result);
        node->result.merge(child.node->result.shifted(child.shift));
        node->children.push_back(std::move(child));
      }
    }
    memo_.emplace(std::move(key), node);
    return node;
  }

  std::size_t distinct_nodes() const { return memo_.size(); }

 private:
  using Key = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<IntVector>>;
  std::map<Key, DerivationTrace> memo_;
};

}  // namespace detail

struct GensetOptions {
  /// Greedily drop elements (in canonical order) whose removal keeps the set
  /// certified. Heuristic; the unpruned set is the constructed one.
  bool prune = false;
};

/// Recomputes a node's result from its recorded children only.
inline WeightSet replay(DerivationNode const& node) {
  WeightSet out(node.rank);
  switch (node.kind) {
    case DerivationNode::Kind::base_case:
      out.insert(zero_vector(node.rank));
      break;
    case DerivationNode::Kind::kernel_reduction:
      for (auto const& s : replay(*node.reduced)) out.insert(node.embed * s);
      break;
    case DerivationNode::Kind::hyperplane_split:
      for (auto const& rep : node.coset_reps) out.insert(rep);
      for (auto const& child : node.children) {
        WeightSet const sub = replay(*child.node);
        out.merge(sub);
        out.merge(sub.shifted(child.shift));
      }
      break;
  }
  return out;
}

inline WeightSet prune(WeightSet s, TorusAction const& action) {
  for (auto const& e : s.elements()) {
    WeightSet candidate = s;
    candidate.erase(e);
    if (certify_valid(candidate, action).valid()) s = std::move(candidate);
  }
  return s;
}

/// A finite weight set S such that the sum of the induced modules P(lambda),
/// lambda in S, generates the category of T-equivariant D-modules on C^n.
/// Built by induction on rank + dimension:
///   * no coordinates or trivial torus: {0};
///   * weights not spanning Q^r: recurse on the quotient torus and embed;
///   * otherwise: coset representatives of Z^r / A, together with S_i and
///     S_i - lambda_i for each hyperplane action omitting lambda_i.
inline GeneratingSet generating_set(TorusAction const& action, GensetOptions const& options = {}) {
  detail::GeneratingSetBuilder builder;
  std::vector<std::size_t> coords(action.dimension());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
  DerivationTrace trace = builder.build(action.rank, action.weights, coords);
  WeightSet set = trace->result;
  if (options.prune) set = prune(std::move(set), action);
  return {std::move(set), std::move(trace)};
}

}  // namespace torusgen
