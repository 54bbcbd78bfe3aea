#pragma once

#include "torusgen/errors.hpp"
#include "torusgen/integer.hpp"
#include "torusgen/lattice.hpp"
#include "torusgen/matrix.hpp"
#include "torusgen/normal_form.hpp"

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace torusgen {

/// A translation direction together with the least multiplicity allowed.
struct Ray {
  IntVector direction;
  Integer min_mult = 0;

  friend bool operator==(Ray const&, Ray const&) = default;
  friend bool operator<(Ray const& a, Ray const& b) {
    return std::tie(a.direction, a.min_mult) < std::tie(b.direction, b.min_mult);
  }
};

struct FeasibilityLimits {
  Integer max_per_ray = 10000;
  Integer max_nodes = 10000000;
};

namespace detail {

// Coordinates of Z^r / L: a free part in Z^f and a torsion part in
// Z/d_1 x ... x Z/d_k (entries with d_i = 1 are always zero).
class QuotientCoordinates {
 public:
  explicit QuotientCoordinates(Lattice const& l) : rank_(l.rank()) {
    SmithForm const sf = snf(l.basis());
    projection_ = sf.u;
    for (std::size_t i = 0; i < rank_; ++i) moduli_.push_back(sf.d(i, i));
  }

  std::size_t free_rank() const { return projection_.rows() - rank_; }

  IntVector free_part(IntVector const& v) const {
    IntVector w = projection_ * v;
    return IntVector(w.begin() + rank_, w.end());
  }

  IntVector torsion_part(IntVector const& v) const {
    IntVector w = projection_ * v;
    IntVector t(rank_);
    for (std::size_t i = 0; i < rank_; ++i) t[i] = floor_mod(w[i], moduli_[i]);
    return t;
  }

  std::vector<Integer> const& moduli() const { return moduli_; }

 private:
  std::size_t rank_;
  IntMatrix projection_;
  std::vector<Integer> moduli_;
};

inline bool positive_circuit(std::vector<IntVector> const& cols, std::size_t free_rank) {
  RatMatrix m(free_rank, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < free_rank; ++i) m(i, j) = Rational(cols[j][i]);
  auto const kernel = nullspace(m);
  if (kernel.size() != 1) return false;
  int sign = 0;
  for (auto const& x : kernel.front()) {
    if (x == 0) return false;
    int const s = x > 0 ? 1 : -1;
    if (sign != 0 && s != sign) return false;
    sign = s;
  }
  return true;
}

}  // namespace detail

/// Decides, for a fixed list of rays and modulus lattice, whether
///   target - sum_j m_j * ray_j  lies in the modulus for some m_j >= min_j.
///
/// Rays that take part in a nonnegative circuit of the free quotient generate
/// a group there and are folded into the modulus. The remaining rays span a
/// pointed cone, so the rational relaxation is a polytope; its vertices bound
/// every multiplicity and the integer box is searched exhaustively. A bound
/// above the configured cap raises Inconclusive instead of guessing.
class ShiftProblem {
 public:
  ShiftProblem(std::vector<Ray> rays, Lattice const& modulus, FeasibilityLimits limits = {})
      : ambient_(modulus.ambient_rank()), limits_(std::move(limits)) {
    offset_ = zero_vector(ambient_);
    for (auto const& ray : rays) {
      if (ray.direction.size() != ambient_) throw DimensionMismatch("ray length differs from modulus ambient rank");
      offset_ = offset_ + ray.min_mult * ray.direction;
    }

    detail::QuotientCoordinates const base(modulus);
    std::size_t const f = base.free_rank();
    std::vector<IntVector> free_parts;
    for (auto const& ray : rays) free_parts.push_back(base.free_part(ray.direction));

    std::size_t const m = rays.size();
    std::vector<bool> in_group(m, false);
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
      std::vector<IntVector> cols;
      for (std::size_t j = 0; j < m; ++j)
        if (mask >> j & 1) cols.push_back(free_parts[j]);
      if (detail::positive_circuit(cols, f))
        for (std::size_t j = 0; j < m; ++j)
          if (mask >> j & 1) in_group[j] = true;
    }

    std::vector<IntVector> group_dirs;
    for (std::size_t j = 0; j < m; ++j) {
      if (in_group[j])
        group_dirs.push_back(rays[j].direction);
      else
        cone_dirs_.push_back(rays[j].direction);
    }
    modulus_ = modulus.sum(IntMatrix::from_columns(ambient_, group_dirs));
    coords_.emplace(modulus_);

    std::size_t const fr = coords_->free_rank();
    for (auto const& d : cone_dirs_) {
      cone_free_.push_back(coords_->free_part(d));
      cone_torsion_.push_back(coords_->torsion_part(d));
    }
    cone_matrix_ = RatMatrix(fr, cone_dirs_.size());
    for (std::size_t j = 0; j < cone_dirs_.size(); ++j)
      for (std::size_t i = 0; i < fr; ++i) cone_matrix_(i, j) = Rational(cone_free_[j][i]);
    prepare_bases();
  }

  bool feasible(IntVector const& target) const {
    if (target.size() != ambient_) throw DimensionMismatch("target length differs from modulus ambient rank");
    IntVector const shifted = target - offset_;
    if (cone_dirs_.empty()) return modulus_.contains(shifted);

    IntVector const goal_free = coords_->free_part(shifted);
    IntVector const goal_torsion = coords_->torsion_part(shifted);
    std::vector<Integer> bounds;
    if (!multiplicity_bounds(goal_free, bounds)) return false;
    for (auto const& b : bounds)
      if (b > limits_.max_per_ray)
        throw Inconclusive("feasible_shift: multiplicity bound " + b.str() + " exceeds the cap " +
                           limits_.max_per_ray.str());

    Integer nodes = 0;
    IntVector acc_free = zero_vector(goal_free.size());
    IntVector acc_torsion = zero_vector(goal_torsion.size());
    return search(0, bounds, goal_free, goal_torsion, acc_free, acc_torsion, nodes);
  }

  /// The modulus after folding in the rays that act as a group.
  Lattice const& effective_modulus() const { return modulus_; }
  std::size_t cone_ray_count() const { return cone_dirs_.size(); }

 private:
  struct Basis {
    std::vector<std::size_t> columns;
    RatMatrix inverse;
  };

  void prepare_bases() {
    // Independent rows of the cone matrix; every basic solution lives on them.
    RatMatrix t = cone_matrix_.transpose();
    row_pivots_ = row_reduce(t);
    std::size_t const rho = row_pivots_.size();
    std::size_t const m = cone_dirs_.size();
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t start) {
      if (pick.size() == rho) {
        RatMatrix sub(rho, rho);
        for (std::size_t a = 0; a < rho; ++a)
          for (std::size_t b = 0; b < rho; ++b) sub(a, b) = cone_matrix_(row_pivots_[a], pick[b]);
        if (determinant(sub) != 0) bases_.push_back({pick, inverse(sub)});
        return;
      }
      for (std::size_t j = start; j < m; ++j) {
        pick.push_back(j);
        choose(j + 1);
        pick.pop_back();
      }
    };
    choose(0);
  }

  bool multiplicity_bounds(IntVector const& goal_free, std::vector<Integer>& bounds) const {
    std::vector<Rational> rhs(goal_free.size());
    for (std::size_t i = 0; i < goal_free.size(); ++i) rhs[i] = Rational(goal_free[i]);
    if (!solve(cone_matrix_, rhs)) return false;
    std::vector<Rational> sub_rhs(row_pivots_.size());
    for (std::size_t a = 0; a < row_pivots_.size(); ++a) sub_rhs[a] = rhs[row_pivots_[a]];

    bounds.assign(cone_dirs_.size(), Integer(0));
    bool any_vertex = false;
    for (auto const& basis : bases_) {
      std::vector<Rational> const x = basis.inverse * sub_rhs;
      bool nonneg = true;
      for (auto const& xi : x)
        if (xi < 0) nonneg = false;
      if (!nonneg) continue;
      any_vertex = true;
      for (std::size_t a = 0; a < x.size(); ++a) {
        Integer const fl = floor_div(boost::multiprecision::numerator(x[a]), boost::multiprecision::denominator(x[a]));
        if (fl > bounds[basis.columns[a]]) bounds[basis.columns[a]] = fl;
      }
    }
    return any_vertex;
  }

  bool search(std::size_t j, std::vector<Integer> const& bounds, IntVector const& goal_free,
              IntVector const& goal_torsion, IntVector& acc_free, IntVector& acc_torsion, Integer& nodes) const {
    if (++nodes > limits_.max_nodes)
      throw Inconclusive("feasible_shift: search exceeded " + limits_.max_nodes.str() + " nodes");
    if (j == cone_dirs_.size()) {
      if (acc_free != goal_free) return false;
      auto const& mod = coords_->moduli();
      for (std::size_t i = 0; i < mod.size(); ++i)
        if (floor_mod(acc_torsion[i] - goal_torsion[i], mod[i]) != 0) return false;
      return true;
    }
    IntVector const saved_free = acc_free, saved_torsion = acc_torsion;
    for (Integer k = 0; k <= bounds[j]; ++k) {
      if (search(j + 1, bounds, goal_free, goal_torsion, acc_free, acc_torsion, nodes)) return true;
      acc_free = acc_free + cone_free_[j];
      acc_torsion = acc_torsion + cone_torsion_[j];
    }
    acc_free = saved_free;
    acc_torsion = saved_torsion;
    return false;
  }

  std::size_t ambient_;
  FeasibilityLimits limits_;
  IntVector offset_;
  Lattice modulus_;
  std::optional<detail::QuotientCoordinates> coords_;
  std::vector<IntVector> cone_dirs_;
  std::vector<IntVector> cone_free_;
  std::vector<IntVector> cone_torsion_;
  RatMatrix cone_matrix_;
  std::vector<std::size_t> row_pivots_;
  std::vector<Basis> bases_;
};

/// True iff target - sum_j m_j * ray_j lies in the modulus for some integers
/// m_j >= min_mult_j. Throws Inconclusive when the search cap is reached.
inline bool feasible_shift(IntVector const& target, std::vector<Ray> const& rays, Lattice const& modulus,
                           FeasibilityLimits const& limits = {}) {
  return ShiftProblem(rays, modulus, limits).feasible(target);
}

}  // namespace torusgen
