#pragma once

#include "torusgen/blocks.hpp"
#include "torusgen/certify.hpp"
#include "torusgen/genset.hpp"
#include "torusgen/quiver.hpp"
#include "torusgen/rank1/end_algebra.hpp"

#include <nlohmann/json.hpp>

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace torusgen::io {

using Json = nlohmann::ordered_json;

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Integers go out as JSON numbers when they fit in 64 bits, as decimal
// strings otherwise; both forms are accepted on input.
inline Json to_json(Integer const& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Json to_json(Rational const& v) {
  if (boost::multiprecision::denominator(v) == 1) return to_json(Integer(boost::multiprecision::numerator(v)));
  return Json(v.str());
}

inline Integer integer_from_json(Json const& j, std::string const& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    auto const s = j.get<std::string>();
    std::size_t const start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return Integer(s);
  }
  throw InvalidInput(where + ": expected an integer, got " + j.dump());
}

inline Json to_json(IntVector const& v) {
  Json a = Json::array();
  for (auto const& x : v) a.push_back(to_json(x));
  return a;
}

inline IntVector vector_from_json(Json const& j, std::string const& where) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

inline Json vectors_to_json(std::vector<IntVector> const& vs) {
  Json a = Json::array();
  for (auto const& v : vs) a.push_back(to_json(v));
  return a;
}

/// Columns of the matrix, each as an array.
inline Json columns_to_json(IntMatrix const& m) { return vectors_to_json(m.columns()); }

inline Json to_json(WeightSet const& s) { return vectors_to_json(s.elements()); }

inline Json sizes_to_json(std::vector<std::size_t> const& xs) {
  Json a = Json::array();
  for (auto x : xs) a.push_back(x);
  return a;
}

// ---- inputs ---------------------------------------------------------------

/// {"rank": r, "weights": [[...], ...], "labels": [...]} with weights given
/// as columns.
inline TorusAction action_from_json(Json const& j) {
  if (!j.is_object()) throw InvalidInput("action spec must be a JSON object");
  if (!j.contains("rank")) throw InvalidInput("action spec is missing \"rank\"");
  if (!j.contains("weights")) throw InvalidInput("action spec is missing \"weights\"");
  Integer const r = integer_from_json(j["rank"], "rank");
  if (r < 0 || r > 64) throw InvalidInput("rank must lie in [0, 64]");
  auto const rank = static_cast<std::size_t>(r);
  auto const& w = j["weights"];
  if (!w.is_array()) throw InvalidInput("\"weights\" must be an array of integer vectors");
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto v = vector_from_json(w[i], "weights[" + std::to_string(i) + "]");
    if (v.size() != rank)
      throw InvalidInput("weights[" + std::to_string(i) + "] has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(rank));
    cols.push_back(std::move(v));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw InvalidInput("\"labels\" must be an array of strings");
    for (auto const& l : j["labels"]) {
      if (!l.is_string()) throw InvalidInput("\"labels\" must be an array of strings");
      labels.push_back(l.get<std::string>());
    }
    if (labels.size() != cols.size()) throw InvalidInput("one label per weight is required");
  }
  return TorusAction(rank, IntMatrix::from_columns(rank, cols), labels);
}

inline Json to_json(TorusAction const& a) {
  Json j;
  j["rank"] = a.rank;
  j["weights"] = columns_to_json(a.weights);
  Json labels = Json::array();
  for (auto const& l : a.labels) labels.push_back(l);
  j["labels"] = labels;
  return j;
}

/// A weight set: either a bare array of vectors or an object with an "S"
/// member (so a genset report can be passed straight to certify).
inline WeightSet weight_set_from_json(Json const& j, std::size_t rank) {
  Json const* arr = &j;
  if (j.is_object()) {
    if (!j.contains("S")) throw InvalidInput("weight set object is missing \"S\"");
    arr = &j["S"];
  }
  if (!arr->is_array()) throw InvalidInput("weight set must be an array of integer vectors");
  WeightSet s(rank);
  for (std::size_t i = 0; i < arr->size(); ++i) {
    auto v = vector_from_json((*arr)[i], "S[" + std::to_string(i) + "]");
    if (v.size() != rank)
      throw InvalidInput("S[" + std::to_string(i) + "] has length " + std::to_string(v.size()) + ", expected " +
                         std::to_string(rank));
    s.insert(v);
  }
  return s;
}

// ---- derivation traces ----------------------------------------------------

inline char const* kind_name(DerivationNode::Kind k) {
  switch (k) {
    case DerivationNode::Kind::base_case:
      return "base_case";
    case DerivationNode::Kind::kernel_reduction:
      return "kernel_reduction";
    case DerivationNode::Kind::hyperplane_split:
      return "hyperplane_split";
  }
  return "?";
}

/// Shared sub-derivations appear once: {"root": id, "nodes": [...]}, with
/// children referring to node ids. Ids follow depth-first first visits.
inline Json trace_to_json(DerivationTrace const& root) {
  std::map<DerivationNode const*, std::size_t> ids;
  std::vector<DerivationNode const*> order;
  // Iterative pre-order so ids are stable and deep traces do not recurse.
  std::vector<DerivationNode const*> todo{root.get()};
  while (!todo.empty()) {
    auto const* n = todo.back();
    todo.pop_back();
    if (!ids.emplace(n, order.size()).second) continue;
    order.push_back(n);
    if (n->reduced) todo.push_back(n->reduced.get());
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) todo.push_back(it->node.get());
  }
  Json nodes = Json::array();
  for (auto const* n : order) {
    Json j;
    j["id"] = ids[n];
    j["kind"] = kind_name(n->kind);
    j["rank"] = n->rank;
    j["coordinates"] = sizes_to_json(n->coordinates);
    j["weights"] = columns_to_json(n->weights);
    if (!n->note.empty()) j["note"] = n->note;
    if (n->kind == DerivationNode::Kind::kernel_reduction) {
      j["embed"] = columns_to_json(n->embed);
      j["reduced"] = ids[n->reduced.get()];
    }
    if (n->kind == DerivationNode::Kind::hyperplane_split) {
      j["coset_reps"] = vectors_to_json(n->coset_reps);
      Json children = Json::array();
      for (auto const& c : n->children)
        children.push_back({{"coordinate", c.coordinate}, {"shift", to_json(c.shift)}, {"node", ids[c.node.get()]}});
      j["children"] = children;
    }
    j["result"] = to_json(n->result);
    nodes.push_back(std::move(j));
  }
  return Json{{"root", 0}, {"nodes", nodes}};
}

// ---- certificates ---------------------------------------------------------

inline Json descriptor_to_json(SupportDescriptor const& d) {
  Json rays = Json::array();
  for (auto const& r : d.rays) rays.push_back({{"direction", to_json(r.direction)}, {"min_mult", to_json(r.min_mult)}});
  return Json{{"base", to_json(d.base)}, {"core", columns_to_json(d.core.basis())}, {"rays", rays}};
}

inline Json certificate_node_to_json(CertificateNode const& n) {
  Json j;
  j["kind"] = kind_name(n.kind);
  j["columns"] = sizes_to_json(n.columns);
  j["outcome"] = n.passed ? "pass" : "fail";
  if (n.kind == CertNodeKind::coset_cover || n.kind == CertNodeKind::leaf_zero) {
    j["embed"] = columns_to_json(n.embed);
    j["weights"] = columns_to_json(n.weights);
    j["set"] = vectors_to_json(n.set);
    if (n.kind == CertNodeKind::coset_cover) j["missed_cosets"] = vectors_to_json(n.missed_cosets);
  } else {
    j["coordinate"] = n.coordinate;
    j["position"] = n.position;
    j["multiplicity"] = to_json(n.multiplicity);
  }
  Json children = Json::array();
  for (auto const& c : n.children) children.push_back(certificate_node_to_json(c));
  j["children"] = children;
  return j;
}

inline Json witness_to_json(Witness const& w) {
  Json j;
  j["kind"] = w.kind == Witness::Kind::missed_coset ? "missed_coset" : "empty_leaf";
  j["depth"] = w.depth;
  j["columns"] = sizes_to_json(w.columns);
  if (w.missed_coset) j["missed_coset"] = to_json(*w.missed_coset);
  j["descriptor"] = descriptor_to_json(w.descriptor);
  j["descriptor_disjoint"] = w.descriptor_disjoint ? Json(*w.descriptor_disjoint) : Json(nullptr);
  return j;
}

struct CertificateCheck {
  bool consistent = true;
  bool valid = false;
  std::string problem;
};

/// Re-checks a serialized certificate node by node: each check node's data
/// is recomputed from its parent's and compared, each local outcome is
/// re-derived, and every coordinate must carry both case edges. No search.
inline CertificateCheck verify_certificate(Json const& tree, WeightSet const& s, TorusAction const& action) {
  CertificateCheck out;
  auto fail = [&](std::string msg) {
    out.consistent = false;
    out.problem = std::move(msg);
    return out;
  };
  struct Item {
    Json const* node;
    std::vector<IntVector> input;
    IntMatrix input_weights;
    std::vector<std::size_t> columns;
    std::string where;
  };
  std::vector<std::size_t> all(action.dimension());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<Item> stack{{&tree, s.elements(), action.weights, all, "root"}};
  bool root_pass = false;
  bool first = true;
  try {
    while (!stack.empty()) {
      Item it = std::move(stack.back());
      stack.pop_back();
      Json const& n = *it.node;
      std::string const kind = n.at("kind").get<std::string>();
      if (kind != "coset_cover" && kind != "leaf_zero") return fail(it.where + ": expected a check node");
      bool const claimed = n.at("outcome").get<std::string>() == "pass";
      if (first) root_pass = claimed;
      first = false;

      Lattice const sat = saturate(span_lattice(it.input_weights));
      if (columns_to_json(sat.basis()) != n.at("embed")) return fail(it.where + ": embed differs");
      std::vector<IntVector> w;
      for (std::size_t j = 0; j < it.input_weights.cols(); ++j) w.push_back(*sat.coordinates(it.input_weights.column(j)));
      IntMatrix const weights = IntMatrix::from_columns(sat.rank(), w);
      if (columns_to_json(weights) != n.at("weights")) return fail(it.where + ": weights differ");
      std::set<IntVector> restricted;
      for (auto const& e : it.input)
        if (auto c = sat.coordinates(e)) restricted.insert(*c);
      std::vector<IntVector> const set(restricted.begin(), restricted.end());
      if (vectors_to_json(set) != n.at("set")) return fail(it.where + ": restricted set differs");

      auto const& children = n.at("children");
      bool subtree = true;
      if (kind == "leaf_zero") {
        if (weights.cols() != 0) return fail(it.where + ": leaf with remaining weights");
        subtree = !set.empty();
      } else {
        auto const q = quotient(span_lattice(weights));
        std::vector<bool> hit(q.coset_reps.size(), false);
        for (auto const& e : set) hit[q.index_of(e)] = true;
        std::vector<IntVector> missed;
        for (std::size_t i = 0; i < hit.size(); ++i)
          if (!hit[i]) missed.push_back(q.coset_reps[i]);
        if (vectors_to_json(missed) != n.at("missed_cosets")) return fail(it.where + ": missed cosets differ");
        subtree = missed.empty();
        if (children.size() != 2 * weights.cols()) return fail(it.where + ": expected two edges per coordinate");
        for (std::size_t e = 0; e < children.size(); ++e) {
          auto const& edge = children[e];
          std::size_t const k = e / 2;
          std::string const ek = edge.at("kind").get<std::string>();
          if (ek != (e % 2 == 0 ? "case2_plain" : "case1_shift")) return fail(it.where + ": unexpected edge order");
          if (edge.at("position").get<std::size_t>() != k || edge.at("coordinate").get<std::size_t>() != it.columns[k])
            return fail(it.where + ": edge refers to the wrong coordinate");
          Integer const mult = integer_from_json(edge.at("multiplicity"), "multiplicity");
          if ((ek == "case1_shift" && mult < 1) || (ek == "case2_plain" && mult > 0))
            return fail(it.where + ": multiplicity has the wrong sign");
          if (edge.at("children").size() != 1) return fail(it.where + ": edge must carry one check node");
          subtree = subtree && edge.at("outcome").get<std::string>() == "pass";
          std::vector<IntVector> shifted;
          IntVector const lambda = weights.column(k);
          for (auto const& x : set) shifted.push_back(x + mult * lambda);
          auto rest = it.columns;
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
          stack.push_back({&edge.at("children")[0], shifted, weights.without_column(k), rest,
                           it.where + "/" + ek + "[" + std::to_string(it.columns[k]) + "]"});
          if (edge.at("outcome") != edge.at("children")[0].at("outcome"))
            return fail(it.where + ": edge outcome differs from its check node");
        }
      }
      if (subtree != claimed) return fail(it.where + ": claimed outcome does not match the recomputed one");
    }
  } catch (Json::exception const& e) {
    return fail(std::string("malformed certificate: ") + e.what());
  }
  out.valid = root_pass;
  return out;
}

// ---- blocks ---------------------------------------------------------------

inline Json blocks_to_json(BlockStructure const& b, std::optional<BlockPartition> const& p) {
  Json j;
  j["block_count"] = b.block_count();
  j["weight_lattice"] = columns_to_json(b.weight_lattice.basis());
  Json factors = Json::array();
  for (auto const& d : b.block_group.invariant_factors) factors.push_back(to_json(d));
  j["block_group"] = factors;
  Json labels = Json::array();
  for (auto const& l : b.labels) labels.push_back(l ? Json(*l) : Json(nullptr));
  j["weight_labels"] = labels;
  Json blocks = Json::array();
  for (std::size_t i = 0; i < b.block_count(); ++i) {
    Json blk{{"rep", to_json(b.reps[i])}};
    if (p) blk["members"] = vectors_to_json(p->blocks[i].members);
    blocks.push_back(std::move(blk));
  }
  j["blocks"] = blocks;
  return j;
}

// ---- rank one -------------------------------------------------------------

inline Json module_to_json(rank1::GradedModule const& m) {
  Json j;
  j["name"] = m.name();
  j["a"] = m.a();
  j["coset"] = m.coset();
  j["window"] = m.window();
  Json support = Json::array();
  for (long s : m.support()) support.push_back(s);
  j["support"] = support;
  Json up = Json::object(), down = Json::object();
  for (long s : m.support()) {
    if (m.present(s + 1)) up[std::to_string(s)] = to_json(m.up(s));
    if (m.present(s - 1)) down[std::to_string(s)] = to_json(m.down(s));
  }
  j["up"] = up;
  j["down"] = down;
  return j;
}

inline Json quiver_to_json(QuiverPresentation const& q) {
  Json arrows = Json::array();
  for (auto const& a : q.arrows) arrows.push_back({{"name", a.name}, {"source", a.source}, {"target", a.target}});
  Json rels = Json::array();
  for (auto const& r : q.relations) {
    Json terms = Json::array();
    for (auto const& t : r) terms.push_back({{"coefficient", to_json(t.coefficient)}, {"path", q.path_name(t.path)}});
    rels.push_back(terms);
  }
  return Json{{"vertices", q.vertices}, {"arrows", arrows}, {"relations", rels}, {"text", q.to_text()}};
}

inline Json syzygy_to_json(SyzygyReport const& r) {
  auto opt = [](std::optional<std::size_t> const& x) { return x ? Json(*x) : Json(nullptr); };
  Json chains = Json::array();
  for (auto const& c : r.chains) {
    Json dims = Json::array();
    for (auto const& d : c.dimension_vectors) dims.push_back(sizes_to_json(d));
    Json simples = Json::array();
    for (auto const& s : c.simple_index) simples.push_back(opt(s));
    chains.push_back({{"simple", c.simple},
                      {"dimension_vectors", dims},
                      {"isomorphic_simple", simples},
                      {"projective_dimension", opt(c.projective_dimension)},
                      {"syzygy_period", opt(c.syzygy_period)},
                      {"orbit_period", opt(c.orbit_period)},
                      {"repeats", c.repeats}});
  }
  return Json{{"depth", r.depth},
              {"algebra_dimension", r.algebra_dimension},
              {"chains", chains},
              {"infinite_global_dimension", r.infinite_global_dimension},
              {"global_dimension", opt(r.global_dimension)}};
}

}  // namespace torusgen::io
