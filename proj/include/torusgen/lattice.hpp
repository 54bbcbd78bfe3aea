#pragma once

#include "torusgen/errors.hpp"
#include "torusgen/integer.hpp"
#include "torusgen/matrix.hpp"
#include "torusgen/normal_form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torusgen {

/// A subgroup of Z^r, stored by its column Hermite normal form basis. Two
/// equal subgroups always have identical stored bases.
class Lattice {
 public:
  /// The zero lattice in Z^ambient_rank.
  explicit Lattice(std::size_t ambient_rank = 0) : ambient_rank_(ambient_rank), basis_(ambient_rank, 0) {}

  /// Integer column span of the generators.
  static Lattice span(IntMatrix const& generators) {
    HermiteForm hf = hnf(generators);
    Lattice l(generators.rows());
    l.basis_ = hf.h.first_columns(hf.rank());
    l.pivot_rows_ = std::move(hf.pivot_rows);
    return l;
  }

  static Lattice full(std::size_t ambient_rank) { return span(IntMatrix::identity(ambient_rank)); }

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.cols(); }
  bool full_rank() const { return rank() == ambient_rank_; }
  IntMatrix const& basis() const { return basis_; }
  std::vector<std::size_t> const& pivot_rows() const { return pivot_rows_; }

  /// Coefficients of v in the stored basis, or nullopt if v is not in the
  /// lattice. Exact back-substitution against the echelon basis.
  std::optional<IntVector> coordinates(IntVector v) const {
    check_length(v);
    IntVector coeffs(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
      std::size_t const p = pivot_rows_[j];
      for (std::size_t i = (j == 0 ? 0 : pivot_rows_[j - 1] + 1); i < p; ++i)
        if (v[i] != 0) return std::nullopt;
      if (v[p] % basis_(p, j) != 0) return std::nullopt;
      coeffs[j] = v[p] / basis_(p, j);
      for (std::size_t i = p; i < ambient_rank_; ++i) v[i] -= coeffs[j] * basis_(i, j);
    }
    if (!is_zero(v)) return std::nullopt;
    return coeffs;
  }

  bool contains(IntVector const& v) const { return coordinates(v).has_value(); }

  bool contains(Lattice const& other) const {
    if (other.ambient_rank_ != ambient_rank_) return false;
    for (std::size_t j = 0; j < other.rank(); ++j)
      if (!contains(other.basis_.column(j))) return false;
    return true;
  }

  /// Canonical residue of v modulo the lattice: pivot coordinates are brought
  /// into [0, pivot). Congruent vectors have equal residues.
  IntVector reduce(IntVector v) const {
    check_length(v);
    for (std::size_t j = 0; j < rank(); ++j) {
      std::size_t const p = pivot_rows_[j];
      Integer const q = floor_div(v[p], basis_(p, j));
      if (q == 0) continue;
      for (std::size_t i = p; i < ambient_rank_; ++i) v[i] -= q * basis_(i, j);
    }
    return v;
  }

  /// Lattice generated by this one together with extra generators.
  Lattice sum(IntMatrix const& extra) const {
    if (extra.rows() != ambient_rank_) throw DimensionMismatch("lattice sum: ambient rank mismatch");
    IntMatrix gens(ambient_rank_, rank() + extra.cols());
    for (std::size_t i = 0; i < ambient_rank_; ++i) {
      for (std::size_t j = 0; j < rank(); ++j) gens(i, j) = basis_(i, j);
      for (std::size_t j = 0; j < extra.cols(); ++j) gens(i, rank() + j) = extra(i, j);
    }
    return span(gens);
  }

  friend bool operator==(Lattice const& a, Lattice const& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
  }

 private:
  void check_length(IntVector const& v) const {
    if (v.size() != ambient_rank_)
      throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " in a lattice of ambient rank " +
                              std::to_string(ambient_rank_));
  }

  std::size_t ambient_rank_;
  IntMatrix basis_;
  std::vector<std::size_t> pivot_rows_;
};

inline Lattice span_lattice(IntMatrix const& weights) { return Lattice::span(weights); }

inline bool member(IntVector const& v, Lattice const& l) { return l.contains(v); }

/// (l tensor Q) intersected with Z^r.
inline Lattice saturate(Lattice const& l) {
  if (l.rank() == 0) return l;
  SmithForm const sf = snf(l.basis());
  // basis = u^-1 d v^-1, so the rational span is spanned by the first rank
  // columns of u^-1, which also span a saturated subgroup.
  IntMatrix const u_inv = inverse_unimodular(sf.u);
  return Lattice::span(u_inv.first_columns(l.rank()));
}

/// Z^r / L for a full-rank L, with canonical coset representatives: the rep
/// of a coset is the vector whose Smith coordinates (projection * v) lie in
/// [0, d_i) for every i.
struct QuotientDescription {
  std::vector<Integer> invariant_factors;
  std::vector<IntVector> coset_reps;
  IntMatrix projection;
  IntMatrix projection_inverse;

  Integer order() const {
    Integer n = 1;
    for (auto const& d : invariant_factors) n *= d;
    return n;
  }

  /// Smith coordinates of the coset containing v.
  IntVector label(IntVector const& v) const {
    IntVector c = projection * v;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = floor_mod(c[i], invariant_factors[i]);
    return c;
  }

  IntVector reduce(IntVector const& v) const { return projection_inverse * label(v); }

  /// Position of v's coset in coset_reps.
  std::size_t index_of(IntVector const& v) const {
    IntVector const c = label(v);
    Integer idx = 0;
    for (std::size_t i = 0; i < c.size(); ++i) idx = idx * invariant_factors[i] + c[i];
    return static_cast<std::size_t>(idx);
  }
};

inline QuotientDescription quotient(Lattice const& l) {
  if (!l.full_rank())
    throw NotFullRank("quotient requires a full-rank lattice (rank " + std::to_string(l.rank()) + " in Z^" +
                      std::to_string(l.ambient_rank()) + ")");
  std::size_t const r = l.ambient_rank();
  SmithForm const sf = snf(l.basis());
  QuotientDescription q;
  q.projection = sf.u;
  q.projection_inverse = inverse_unimodular(sf.u);
  for (std::size_t i = 0; i < r; ++i) q.invariant_factors.push_back(sf.d(i, i));

  // Mixed-radix walk over the box of Smith coordinates, last index fastest.
  IntVector c = zero_vector(r);
  for (;;) {
    q.coset_reps.push_back(q.projection_inverse * c);
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (++c[i] < q.invariant_factors[i]) break;
      c[i] = 0;
      if (i == 0) return q;
    }
    if (r == 0) return q;
  }
}

}  // namespace torusgen
