#pragma once

#include "torusgen/action.hpp"
#include "torusgen/errors.hpp"
#include "torusgen/feasibility.hpp"
#include "torusgen/lattice.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace torusgen {

/// Symbolic weight support of a test module:
///   { base + a + sum_j m_j * rays[j].direction : a in core, m_j >= rays[j].min_mult }.
/// Ray directions are +-columns of the original weight matrix.
struct SupportDescriptor {
  IntVector base;
  Lattice core;
  std::vector<Ray> rays;

  bool contains(IntVector const& w, FeasibilityLimits const& limits = {}) const {
    return feasible_shift(w - base, rays, core, limits);
  }

  /// Equal keys describe equal sets: minimum multiplicities are folded into
  /// the base, rays are sorted, the base is reduced modulo the core.
  using Key = std::tuple<std::vector<IntVector>, std::vector<IntVector>, IntVector>;

  Key canonical_key() const {
    IntVector b = base;
    std::vector<IntVector> dirs;
    for (auto const& ray : rays) {
      b = b + ray.min_mult * ray.direction;
      dirs.push_back(ray.direction);
    }
    std::sort(dirs.begin(), dirs.end());
    return {core.basis().columns(), dirs, core.reduce(b)};
  }

  std::string str() const {
    std::string out = to_string(base);
    if (core.rank() > 0) out += " + <" + core.basis().str() + ">";
    for (auto const& ray : rays)
      out += " + m*" + to_string(ray.direction) + " (m>=" + ray.min_mult.str() + ")";
    return out;
  }
};

enum class CertNodeKind { coset_cover, leaf_zero, case1_shift, case2_plain };

inline char const* kind_name(CertNodeKind k) {
  switch (k) {
    case CertNodeKind::coset_cover:
      return "coset_cover";
    case CertNodeKind::leaf_zero:
      return "leaf_zero";
    case CertNodeKind::case1_shift:
      return "case1_shift";
    case CertNodeKind::case2_plain:
      return "case2_plain";
  }
  return "?";
}

/// Certificate tree. Check nodes (coset_cover, leaf_zero) alternate with
/// edge nodes (case1_shift, case2_plain) that carry exactly one check node.
///
/// A check node works in the coordinates of the saturated lattice of its
/// sub-action: `embed` maps them into the parent's coordinates, `weights` and
/// `set` are the sub-action and the candidate set restricted and re-expressed
/// there.
struct CertificateNode {
  CertNodeKind kind = CertNodeKind::leaf_zero;
  std::vector<std::size_t> columns;  // original coordinate indices of the sub-action
  bool local_passed = true;          // this node's own check
  bool passed = true;                // whole subtree

  // check nodes
  IntMatrix embed;
  IntMatrix weights;
  std::vector<IntVector> set;
  std::vector<IntVector> missed_cosets;

  // edge nodes
  std::size_t coordinate = 0;  // original index of the removed coordinate
  std::size_t position = 0;    // its column position in the parent check node
  Integer multiplicity = 0;    // how often the parent weight is added to the set

  std::vector<CertificateNode> children;
};

struct Witness {
  enum class Kind { missed_coset, empty_leaf };
  Kind kind = Kind::missed_coset;
  std::size_t depth = 0;
  std::vector<std::size_t> columns;
  std::optional<IntVector> missed_coset;  // in Z^r
  SupportDescriptor descriptor;
  /// Whether the descriptor was confirmed disjoint from the candidate set
  /// (nullopt if the check was inconclusive).
  std::optional<bool> descriptor_disjoint;
};

struct Certificate {
  CertificateNode tree;
  std::optional<Witness> witness;

  bool valid() const { return tree.passed; }
};

struct CertifyOptions {
  /// 0 checks case 1 with the single shift +lambda_k and case 2 unshifted.
  /// m > 0 also accepts shifts by j*lambda_k, j = 1..m (case 1) and
  /// -j*lambda_k, j = 0..m-1 (case 2).
  unsigned extended = 0;
  FeasibilityLimits limits;
};

namespace detail {

class Certifier {
 public:
  Certifier(CertifyOptions const& options) : options_(options) {}

  CertificateNode check(std::vector<IntVector> const& input, IntMatrix const& input_weights,
                        std::vector<std::size_t> const& columns) {
    CertificateNode node;
    node.columns = columns;
    Lattice const sat = saturate(span_lattice(input_weights));
    node.embed = sat.basis();
    std::size_t const r = sat.rank();
    std::vector<IntVector> w;
    for (std::size_t j = 0; j < input_weights.cols(); ++j) w.push_back(*sat.coordinates(input_weights.column(j)));
    node.weights = IntMatrix::from_columns(r, w);
    std::set<IntVector> restricted;
    for (auto const& s : input)
      if (auto c = sat.coordinates(s)) restricted.insert(*c);
    node.set.assign(restricted.begin(), restricted.end());

    if (input_weights.cols() == 0) {
      node.kind = CertNodeKind::leaf_zero;
      node.local_passed = node.passed = !node.set.empty();
      return node;
    }

    node.kind = CertNodeKind::coset_cover;
    auto const q = quotient(span_lattice(node.weights));
    std::vector<bool> hit(q.coset_reps.size(), false);
    for (auto const& s : node.set) hit[q.index_of(s)] = true;
    for (std::size_t i = 0; i < hit.size(); ++i)
      if (!hit[i]) node.missed_cosets.push_back(q.coset_reps[i]);
    node.local_passed = node.missed_cosets.empty();
    node.passed = node.local_passed;

    for (std::size_t k = 0; k < node.weights.cols(); ++k) {
      std::vector<std::size_t> rest = columns;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      IntMatrix const sub = node.weights.without_column(k);
      IntVector const lambda = node.weights.column(k);
      for (auto kind : {CertNodeKind::case2_plain, CertNodeKind::case1_shift}) {
        // Multiplicities tried in order; the first passing one is kept.
        long first = kind == CertNodeKind::case1_shift ? 1 : 0;
        long last = first + (options_.extended > 0 ? static_cast<long>(options_.extended) - 1 : 0);
        CertificateNode edge;
        for (long j = first; j <= last; ++j) {
          Integer const mult = kind == CertNodeKind::case1_shift ? Integer(j) : Integer(-j);
          std::vector<IntVector> shifted;
          for (auto const& s : node.set) shifted.push_back(s + mult * lambda);
          CertificateNode child = check(shifted, sub, rest);
          if (j == first || child.passed) {
            edge = CertificateNode{};
            edge.kind = kind;
            edge.columns = rest;
            edge.coordinate = columns[k];
            edge.position = k;
            edge.multiplicity = mult;
            edge.passed = edge.local_passed = child.passed;
            edge.children.clear();
            edge.children.push_back(std::move(child));
          }
          if (edge.passed) break;
        }
        node.passed = node.passed && edge.passed;
        node.children.push_back(std::move(edge));
      }
    }
    return node;
  }

 private:
  CertifyOptions options_;
};

}  // namespace detail

/// Builds the support descriptor of the test module that a failing check node
/// stands for, given the edge path from the root.
inline SupportDescriptor descriptor_for_path(TorusAction const& action, std::vector<CertificateNode const*> const& path,
                                             CertificateNode const& failing, std::optional<IntVector> const& node_rep) {
  std::size_t const r = action.rank;
  IntMatrix embed = IntMatrix::identity(r);
  SupportDescriptor d;
  for (auto const* step : path) {
    if (step->kind == CertNodeKind::coset_cover || step->kind == CertNodeKind::leaf_zero) {
      embed = embed * step->embed;
    } else {
      IntVector const lambda = action.weight(step->coordinate);
      if (step->kind == CertNodeKind::case1_shift)
        d.rays.push_back({-lambda, 1});
      else
        d.rays.push_back({lambda, 0});
    }
  }
  embed = embed * failing.embed;
  d.base = node_rep ? embed * *node_rep : zero_vector(r);
  std::vector<IntVector> core_gens;
  if (failing.kind == CertNodeKind::coset_cover)
    for (auto c : failing.columns) core_gens.push_back(action.weight(c));
  d.core = span_lattice(IntMatrix::from_columns(r, core_gens));
  return d;
}

/// Recursive sufficient certificate that s is a generating set of weights:
///   valid(S, L): restrict S to the saturation of A_L; if L is empty, 0 is in
///   S; otherwise S meets every coset of A_L, and for every k both
///   valid(S, L \ k) and valid(S + lambda_k, L \ k) hold.
/// An invalid certificate reports the shallowest failing check.
inline Certificate certify_valid(WeightSet const& s, TorusAction const& action, CertifyOptions const& options = {}) {
  if (s.rank() != action.rank) throw DimensionMismatch("weight set rank differs from torus rank");
  std::vector<std::size_t> columns(action.dimension());
  for (std::size_t i = 0; i < columns.size(); ++i) columns[i] = i;
  detail::Certifier certifier(options);
  Certificate cert{certifier.check(s.elements(), action.weights, columns), std::nullopt};
  if (cert.valid()) return cert;

  // Breadth-first search for the shallowest failing check node.
  struct Item {
    CertificateNode const* node;
    std::vector<CertificateNode const*> path;
    std::size_t depth;
  };
  std::deque<Item> queue{{&cert.tree, {}, 0}};
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    CertificateNode const& node = *item.node;
    if (!node.local_passed) {
      Witness w;
      w.depth = item.depth;
      w.columns = node.columns;
      std::optional<IntVector> rep;
      if (node.kind == CertNodeKind::coset_cover) {
        w.kind = Witness::Kind::missed_coset;
        rep = node.missed_cosets.front();
      } else {
        w.kind = Witness::Kind::empty_leaf;
      }
      w.descriptor = descriptor_for_path(action, item.path, node, rep);
      if (rep) {
        IntMatrix embed = IntMatrix::identity(action.rank);
        for (auto const* step : item.path)
          if (step->kind == CertNodeKind::coset_cover || step->kind == CertNodeKind::leaf_zero) embed = embed * step->embed;
        w.missed_coset = embed * node.embed * *rep;
      }
      try {
        ShiftProblem const problem(w.descriptor.rays, w.descriptor.core, options.limits);
        bool hit = false;
        for (auto const& e : s)
          if (problem.feasible(e - w.descriptor.base)) {
            hit = true;
            break;
          }
        w.descriptor_disjoint = !hit;
      } catch (Inconclusive const&) {
        w.descriptor_disjoint = std::nullopt;
      }
      cert.witness = std::move(w);
      break;
    }
    for (auto const& edge : node.children) {
      if (edge.passed) continue;
      auto path = item.path;
      path.push_back(&node);
      path.push_back(&edge);
      queue.push_back({&edge.children.front(), std::move(path), item.depth + 1});
    }
  }
  return cert;
}

namespace detail {

inline void enumerate_supports(TorusAction const& action, std::vector<std::size_t> const& columns, std::size_t depth,
                               std::vector<SupportDescriptor>& out,
                               std::set<SupportDescriptor::Key>& seen,
                               std::vector<Ray> const& outer_rays);

}  // namespace detail

/// The family of test-module weight supports exhibited by the inductive
/// argument, up to the given recursion depth:
///   F(empty) = { {0} },
///   F(L) = { mu + A_L : mu over coset reps of A_L in its saturation }
///          u { D + ray(-lambda_k, >= 1) : D in F(L \ k) }
///          u { D + ray(+lambda_k, >= 0) : D in F(L \ k) },
/// deduplicated by canonical form.
inline std::vector<SupportDescriptor> enumerate_test_supports(TorusAction const& action, std::size_t depth) {
  std::vector<std::size_t> columns(action.dimension());
  for (std::size_t i = 0; i < columns.size(); ++i) columns[i] = i;
  std::vector<SupportDescriptor> out;
  std::set<SupportDescriptor::Key> seen;
  detail::enumerate_supports(action, columns, depth, out, seen, {});
  return out;
}

namespace detail {

inline void enumerate_supports(TorusAction const& action, std::vector<std::size_t> const& columns, std::size_t depth,
                               std::vector<SupportDescriptor>& out,
                               std::set<SupportDescriptor::Key>& seen,
                               std::vector<Ray> const& outer_rays) {
  std::size_t const r = action.rank;
  auto emit = [&](SupportDescriptor d) {
    auto key = d.canonical_key();
    if (seen.insert(key).second) out.push_back(std::move(d));
  };

  if (columns.empty()) {
    emit({zero_vector(r), Lattice(r), outer_rays});
    return;
  }

  std::vector<IntVector> gens;
  for (auto c : columns) gens.push_back(action.weight(c));
  IntMatrix const w = IntMatrix::from_columns(r, gens);
  Lattice const a = span_lattice(w);
  Lattice const sat = saturate(a);
  std::vector<IntVector> reduced;
  for (auto const& g : gens) reduced.push_back(*sat.coordinates(g));
  auto const q = quotient(span_lattice(IntMatrix::from_columns(sat.rank(), reduced)));
  for (auto const& rep : q.coset_reps) emit({sat.basis() * rep, a, outer_rays});

  if (depth == 0) return;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    std::vector<std::size_t> rest = columns;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    IntVector const lambda = action.weight(columns[k]);
    auto rays = outer_rays;
    rays.push_back({-lambda, 1});
    enumerate_supports(action, rest, depth - 1, out, seen, rays);
    rays.back() = {lambda, 0};
    enumerate_supports(action, rest, depth - 1, out, seen, rays);
  }
}

}  // namespace detail

struct NecessaryResult {
  enum class Outcome { pass, fail, inconclusive };
  Outcome outcome = Outcome::pass;
  std::optional<SupportDescriptor> failing;  // first descriptor missing s (or undecided)
  std::size_t descriptors_checked = 0;
  std::string message;

  bool passed() const { return outcome == Outcome::pass; }
};

/// Screens s against every enumerated test support: each must meet s.
/// Coset misses are reported as certificate failures, not as proofs that s
/// fails to generate.
inline NecessaryResult necessary_check(WeightSet const& s, TorusAction const& action, std::size_t depth,
                                       FeasibilityLimits const& limits = {}) {
  if (s.rank() != action.rank) throw DimensionMismatch("weight set rank differs from torus rank");
  NecessaryResult result;
  auto const supports = enumerate_test_supports(action, depth);
  for (auto const& d : supports) {
    ++result.descriptors_checked;
    bool hit = false;
    try {
      if (d.rays.empty()) {
        for (auto const& e : s)
          if (d.core.contains(e - d.base)) {
            hit = true;
            break;
          }
      } else {
        ShiftProblem const problem(d.rays, d.core, limits);
        for (auto const& e : s)
          if (problem.feasible(e - d.base)) {
            hit = true;
            break;
          }
      }
    } catch (Inconclusive const& ex) {
      result.outcome = NecessaryResult::Outcome::inconclusive;
      result.failing = d;
      result.message = ex.what();
      return result;
    }
    if (!hit) {
      result.outcome = NecessaryResult::Outcome::fail;
      result.failing = d;
      result.message = "no weight of the set lies in " + d.str();
      return result;
    }
  }
  return result;
}

}  // namespace torusgen
