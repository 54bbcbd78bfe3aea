#pragma once

#include "torusgen/errors.hpp"
#include "torusgen/integer.hpp"
#include "torusgen/matrix.hpp"

#include <initializer_list>
#include <set>
#include <string>
#include <vector>

namespace torusgen {

/// A finite set of integer vectors of a fixed length, kept in lexicographic
/// order.
class WeightSet {
 public:
  using const_iterator = std::set<IntVector>::const_iterator;

  explicit WeightSet(std::size_t rank = 0) : rank_(rank) {}

  WeightSet(std::size_t rank, std::vector<IntVector> const& elements) : rank_(rank) {
    for (auto const& e : elements) insert(e);
  }

  /// Rank-1 convenience: WeightSet::scalars({-2, 0, 1}).
  static WeightSet scalars(std::initializer_list<long long> xs) {
    WeightSet s(1);
    for (long long x : xs) s.insert(IntVector{Integer(x)});
    return s;
  }

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const_iterator begin() const { return elements_.begin(); }
  const_iterator end() const { return elements_.end(); }

  void insert(IntVector const& v) {
    if (v.size() != rank_)
      throw DimensionMismatch("weight of length " + std::to_string(v.size()) + " in a set of rank " +
                              std::to_string(rank_));
    elements_.insert(v);
  }

  void erase(IntVector const& v) { elements_.erase(v); }

  bool contains(IntVector const& v) const { return elements_.count(v) > 0; }

  void merge(WeightSet const& other) {
    for (auto const& e : other) insert(e);
  }

  /// { s + by : s in this set }
  WeightSet shifted(IntVector const& by) const {
    WeightSet out(rank_);
    for (auto const& e : elements_) out.elements_.insert(e + by);
    return out;
  }

  WeightSet negated() const {
    WeightSet out(rank_);
    for (auto const& e : elements_) out.elements_.insert(-e);
    return out;
  }

  bool includes(WeightSet const& other) const {
    for (auto const& e : other)
      if (!contains(e)) return false;
    return true;
  }

  std::vector<IntVector> elements() const { return {elements_.begin(), elements_.end()}; }

  friend bool operator==(WeightSet const& a, WeightSet const& b) {
    return a.rank_ == b.rank_ && a.elements_ == b.elements_;
  }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (auto const& e : elements_) {
      if (!first) out += ", ";
      first = false;
      out += rank_ == 1 ? e[0].str() : to_string(e);
    }
    return out + "}";
  }

 private:
  std::size_t rank_;
  std::set<IntVector> elements_;
};

/// A rank-r torus acting linearly on C^n; column i of `weights` is the
/// character by which the torus scales coordinate i.
struct TorusAction {
  std::size_t rank = 0;
  IntMatrix weights;
  std::vector<std::string> labels;

  TorusAction() = default;

  TorusAction(std::size_t r, IntMatrix w, std::vector<std::string> names = {})
      : rank(r), weights(std::move(w)), labels(std::move(names)) {
    if (weights.rows() != rank)
      throw DimensionMismatch("weight matrix has " + std::to_string(weights.rows()) + " rows for a rank-" +
                              std::to_string(rank) + " torus");
    if (labels.empty())
      for (std::size_t i = 0; i < weights.cols(); ++i) labels.push_back("x" + std::to_string(i + 1));
    if (labels.size() != weights.cols()) throw DimensionMismatch("one label per coordinate is required");
  }

  static TorusAction from_columns(std::size_t r, std::vector<IntVector> const& columns) {
    return TorusAction(r, IntMatrix::from_columns(r, columns));
  }

  /// Rank-1 torus with the given scalar weights.
  static TorusAction rank_one(std::initializer_list<long long> ws) {
    std::vector<IntVector> cols;
    for (long long w : ws) cols.push_back(IntVector{Integer(w)});
    return from_columns(1, cols);
  }

  std::size_t dimension() const { return weights.cols(); }
  IntVector weight(std::size_t i) const { return weights.column(i); }

  TorusAction negated() const {
    IntMatrix w = weights;
    for (std::size_t j = 0; j < w.cols(); ++j) w.negate_column(j);
    return TorusAction(rank, w, labels);
  }
};

}  // namespace torusgen
