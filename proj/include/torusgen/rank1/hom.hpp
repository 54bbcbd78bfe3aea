#pragma once

#include "torusgen/errors.hpp"
#include "torusgen/matrix.hpp"
#include "torusgen/rank1/graded_module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torusgen::rank1 {

/// A morphism as a slot-indexed family h_m (index m + window); zero off the
/// common support.
using SlotMap = std::vector<Rational>;

struct HomSpace {
  GradedModule source;
  GradedModule target;
  std::vector<SlotMap> basis;

  std::size_t dimension() const { return basis.size(); }
};

namespace detail {

inline void check_compatible(GradedModule const& x, GradedModule const& y, char const* op) {
  if (x.a() != y.a() || x.window() != y.window())
    throw DimensionMismatch(std::string(op) + ": modules must share a and window");
}

inline std::size_t slot_index(GradedModule const& m, long slot) { return static_cast<std::size_t>(slot + m.window()); }

/// Intertwiners at the given window with no re-validation. Constraints that
/// reference out-of-window slots are dropped.
inline HomSpace hom_at_window(GradedModule const& src, GradedModule const& tgt) {
  HomSpace out{src, tgt, {}};
  if (src.coset() != tgt.coset()) return out;
  long const w = src.window();
  std::vector<long> vars;
  std::vector<long> var_of(2 * w + 1, -1);
  for (long m = -w; m <= w; ++m)
    if (src.present(m) && tgt.present(m)) {
      var_of[slot_index(src, m)] = static_cast<long>(vars.size());
      vars.push_back(m);
    }
  if (vars.empty()) return out;

  // One row per in-window bond and operator: h_{m+1} s_m - s'_m h_m = 0 and
  // h_m t_{m+1} - t'_{m+1} h_{m+1} = 0.
  std::vector<std::vector<Rational>> rows;
  auto coeff_row = [&](long m_left, Rational const& c_left, long m_right, Rational const& c_right) {
    std::vector<Rational> row(vars.size(), Rational(0));
    bool any = false;
    if (long v = var_of[slot_index(src, m_left)]; v >= 0 && c_left != 0) {
      row[v] += c_left;
      any = true;
    }
    if (long v = var_of[slot_index(src, m_right)]; v >= 0 && c_right != 0) {
      row[v] += c_right;
      any = true;
    }
    if (any) rows.push_back(std::move(row));
  };
  for (long m = -w; m < w; ++m) {
    coeff_row(m + 1, src.up(m), m, -tgt.up(m));
    coeff_row(m, src.down(m + 1), m + 1, -tgt.down(m + 1));
  }
  RatMatrix sys(rows.size(), vars.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < vars.size(); ++j) sys(i, j) = rows[i][j];
  for (auto const& v : nullspace(sys)) {
    SlotMap h(2 * w + 1, Rational(0));
    for (std::size_t j = 0; j < vars.size(); ++j) h[slot_index(src, vars[j])] = v[j];
    out.basis.push_back(std::move(h));
  }
  return out;
}

}  // namespace detail

/// Slotwise intertwiners src -> tgt. The dimension is recomputed five slots
/// further out on each side; a mismatch means the window cuts off structure.
inline HomSpace hom_dim(GradedModule const& src, GradedModule const& tgt) {
  detail::check_compatible(src, tgt, "hom_dim");
  auto hs = detail::hom_at_window(src, tgt);
  long const wider = src.window() + 5;
  auto const check = detail::hom_at_window(src.extended(wider), tgt.extended(wider));
  if (check.dimension() != hs.dimension())
    throw WindowTooSmall("Hom(" + src.name() + ", " + tgt.name() + ") has dimension " +
                             std::to_string(hs.dimension()) + " at window " + std::to_string(src.window()) +
                             " but " + std::to_string(check.dimension()) + " at window " + std::to_string(wider),
                         wider + 5);
  return hs;
}

/// g after f, slotwise.
inline SlotMap compose(SlotMap const& g, SlotMap const& f) {
  if (g.size() != f.size()) throw DimensionMismatch("compose: window mismatch");
  SlotMap out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[i] * f[i];
  return out;
}

/// Identity family of a module: 1 on every present slot.
inline SlotMap identity_map(GradedModule const& m) {
  SlotMap id(2 * m.window() + 1, Rational(0));
  for (long s : m.support()) id[detail::slot_index(m, s)] = 1;
  return id;
}

/// Whether h satisfies every in-window intertwining equation src -> tgt.
inline bool is_intertwiner(SlotMap const& h, GradedModule const& src, GradedModule const& tgt) {
  long const w = src.window();
  auto at = [&](long m) -> Rational { return (src.present(m) && tgt.present(m)) ? h[w + m] : Rational(0); };
  for (long m = -w; m <= w; ++m)
    if (h[w + m] != 0 && !(src.present(m) && tgt.present(m))) return false;
  for (long m = -w; m < w; ++m) {
    if (at(m + 1) * src.up(m) != tgt.up(m) * at(m)) return false;
    if (at(m) * src.down(m + 1) != tgt.down(m + 1) * at(m + 1)) return false;
  }
  return true;
}

/// A combination of the basis that is nonzero on every slot where some basis
/// element is. Coefficients are chosen greedily from 1, 2, 3, ...
inline SlotMap generic_element(HomSpace const& hs) {
  std::size_t const len = 2 * hs.source.window() + 1;
  SlotMap acc(len, Rational(0));
  for (auto const& b : hs.basis) {
    for (long c = 1;; ++c) {
      bool ok = true;
      SlotMap trial(len);
      for (std::size_t i = 0; i < len; ++i) {
        trial[i] = acc[i] + Rational(c) * b[i];
        if (trial[i] == 0 && (acc[i] != 0 || b[i] != 0)) ok = false;
      }
      if (ok) {
        acc = std::move(trial);
        break;
      }
    }
  }
  return acc;
}

/// True iff some f: m1 -> m2 and g: m2 -> m1 compose to identities.
inline bool iso_check(GradedModule const& m1, GradedModule const& m2) {
  detail::check_compatible(m1, m2, "iso_check");
  if (m1.coset() != m2.coset() || m1.support() != m2.support()) return false;
  auto const f = generic_element(hom_dim(m1, m2));
  SlotMap g(f.size(), Rational(0));
  for (long s : m1.support()) {
    auto const i = detail::slot_index(m1, s);
    if (f[i] == 0) return false;
    g[i] = 1 / f[i];
  }
  return is_intertwiner(f, m1, m2) && is_intertwiner(g, m2, m1);
}

struct SesReport {
  bool exact = false;
  bool split = false;
  std::string detail;

  bool non_split() const { return exact && !split; }
};

/// Checks 0 -> sub -> mid -> quot -> 0. With one-dimensional weight spaces,
/// exactness amounts to a slotwise partition of supports together with an
/// injective i and a surjective p; the sequence splits iff id_sub factors as
/// r . i for some r: mid -> sub.
inline SesReport verify_ses(GradedModule const& sub, GradedModule const& mid, GradedModule const& quot) {
  detail::check_compatible(sub, mid, "verify_ses");
  detail::check_compatible(mid, quot, "verify_ses");
  SesReport rep;
  if (sub.coset() != mid.coset() || quot.coset() != mid.coset()) {
    rep.detail = "modules lie in different cosets";
    return rep;
  }
  for (long m = -mid.window(); m <= mid.window(); ++m) {
    int const lhs = mid.present(m) ? 1 : 0;
    int const rhs = (sub.present(m) ? 1 : 0) + (quot.present(m) ? 1 : 0);
    if (lhs != rhs) {
      rep.detail = "weight dimensions do not add up at slot " + std::to_string(m);
      return rep;
    }
  }
  auto const inj = generic_element(hom_dim(sub, mid));
  for (long s : sub.support())
    if (inj[detail::slot_index(sub, s)] == 0) {
      rep.detail = "no injection sub -> mid (vanishes at slot " + std::to_string(s) + ")";
      return rep;
    }
  auto const surj = generic_element(hom_dim(mid, quot));
  for (long s : quot.support())
    if (surj[detail::slot_index(quot, s)] == 0) {
      rep.detail = "no surjection mid -> quot (vanishes at slot " + std::to_string(s) + ")";
      return rep;
    }
  rep.exact = true;

  auto const retractions = hom_dim(mid, sub);
  auto const id = identity_map(sub);
  RatMatrix sys(id.size(), retractions.dimension());
  for (std::size_t k = 0; k < retractions.dimension(); ++k) {
    auto const c = compose(retractions.basis[k], inj);
    for (std::size_t i = 0; i < id.size(); ++i) sys(i, k) = c[i];
  }
  rep.split = solve(sys, id).has_value();
  rep.detail = rep.split ? "exact and split" : "exact and non-split";
  return rep;
}

}  // namespace torusgen::rank1
