#pragma once

#include "torusgen/errors.hpp"
#include "torusgen/integer.hpp"

#include <string>
#include <vector>

namespace torusgen::rank1 {

/// A C^x-equivariant D-module on the line (weight a > 0) whose weight spaces
/// are all of dimension at most one, truncated to the slots m in [-M, M].
/// Slot m carries weight coset + m*a, where 0 <= coset < a.
///
/// up(m) is the scalar by which x maps slot m to slot m+1; down(m) the scalar
/// by which d/dx maps slot m to slot m-1. Strong equivariance plus
/// [d/dx, x] = 1 force, on every present slot m,
///   up(m-1) * down(m) = weight(m)/a  and  up(m) * down(m+1) = weight(m)/a + 1
/// wherever the neighbouring slot is inside the window.
class GradedModule {
 public:
  GradedModule(long a, long coset, long window)
      : a_(a),
        coset_(coset),
        window_(window),
        present_(2 * window + 1, false),
        up_(2 * window + 1, Rational(0)),
        down_(2 * window + 1, Rational(0)) {
    if (a <= 0) throw Error("weight a must be positive");
    if (coset < 0 || coset >= a) throw Error("coset representative must lie in [0, a)");
    if (window < 1) throw Error("window must be at least 1");
  }

  long a() const { return a_; }
  long coset() const { return coset_; }
  long window() const { return window_; }
  std::string const& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool in_window(long m) const { return m >= -window_ && m <= window_; }
  Integer weight(long m) const { return Integer(coset_) + Integer(m) * a_; }
  Rational euler(long m) const { return Rational(weight(m), Integer(a_)); }

  bool present(long m) const { return in_window(m) && present_[idx(m)]; }
  Rational up(long m) const { return in_window(m) ? up_[idx(m)] : Rational(0); }
  Rational down(long m) const { return in_window(m) ? down_[idx(m)] : Rational(0); }

  void set_present(long m, bool p) { present_.at(idx(m)) = p; }
  void set_up(long m, Rational s) { up_.at(idx(m)) = std::move(s); }
  void set_down(long m, Rational t) { down_.at(idx(m)) = std::move(t); }

  /// Slots carrying a nonzero space.
  std::vector<long> support() const {
    std::vector<long> out;
    for (long m = -window_; m <= window_; ++m)
      if (present(m)) out.push_back(m);
    return out;
  }

  /// Empty if the Euler relation and the zero-pattern rules hold, otherwise a
  /// description of the first violation.
  std::string euler_violation() const {
    for (long m = -window_; m <= window_; ++m) {
      bool const here = present(m);
      if (!here && (up(m) != 0 || down(m) != 0))
        return "slot " + std::to_string(m) + " is empty but carries a nonzero map";
      if (here && m + 1 <= window_ && !present(m + 1) && up(m) != 0)
        return "x maps slot " + std::to_string(m) + " into an empty slot";
      if (here && m - 1 >= -window_ && !present(m - 1) && down(m) != 0)
        return "d maps slot " + std::to_string(m) + " into an empty slot";
      if (!here) continue;
      if (m - 1 >= -window_ && up(m - 1) * down(m) != euler(m))
        return "x*d on slot " + std::to_string(m) + " is " + (up(m - 1) * down(m)).str() + ", expected " +
               euler(m).str();
      if (m + 1 <= window_ && up(m) * down(m + 1) != euler(m) + 1)
        return "d*x on slot " + std::to_string(m) + " is " + (up(m) * down(m + 1)).str() + ", expected " +
               (euler(m) + 1).str();
    }
    return {};
  }

  bool satisfies_euler() const { return euler_violation().empty(); }

  /// The same module on a larger window. Away from the bond between weights
  /// -a and 0 the structure is forced, so the boundary pattern continues.
  GradedModule extended(long new_window) const {
    if (new_window < window_) throw Error("extended() cannot shrink the window");
    GradedModule out(a_, coset_, new_window);
    out.name_ = name_;
    for (long m = -new_window; m <= new_window; ++m) {
      if (in_window(m)) {
        out.set_present(m, present(m));
        out.set_up(m, up(m));
        out.set_down(m, down(m));
      } else {
        out.set_present(m, present(m < 0 ? -window_ : window_));
      }
    }
    for (long m = -new_window; m < new_window; ++m) {
      if (in_window(m) && in_window(m + 1)) continue;
      if (out.present(m) && out.present(m + 1)) {
        out.set_up(m, 1);
        out.set_down(m + 1, out.euler(m + 1));
      }
    }
    return out;
  }

  friend bool operator==(GradedModule const& x, GradedModule const& y) {
    return x.a_ == y.a_ && x.coset_ == y.coset_ && x.window_ == y.window_ && x.present_ == y.present_ &&
           x.up_ == y.up_ && x.down_ == y.down_;
  }

 private:
  std::size_t idx(long m) const { return static_cast<std::size_t>(m + window_); }

  long a_;
  long coset_;
  long window_;
  std::string name_;
  std::vector<bool> present_;
  std::vector<Rational> up_;
  std::vector<Rational> down_;
};

enum class StandardKind {
  projective,  // P(b) = D / D(a x d - b)
  functions,   // C[x]
  delta,       // C[d] (x) delta, weights -a, -2a, ...
};

/// The standard modules, gauge-normalized: on every bond with nonzero Euler
/// value, up = 1 and down = weight/a. For P(b) with a | b the bond between
/// weights -a and 0 has Euler value 0 and carries (up, down) = (0, 1) when
/// b >= 0 and (1, 0) when b < 0, which makes P(an) = P(0) and P(-an) = P(-a)
/// hold on the nose.
inline GradedModule make_standard(StandardKind kind, long a, long b, long window) {
  if (a <= 0) throw Error("weight a must be positive");
  long const coset = ((b % a) + a) % a;
  if (kind != StandardKind::projective && coset != 0)
    throw ParityViolation("C[x] and the delta module live in the coset of 0; b = " + std::to_string(b) +
                          " is not divisible by " + std::to_string(a));
  GradedModule mod(a, coset, window);
  for (long m = -window; m <= window; ++m) {
    bool p = true;
    if (kind == StandardKind::functions) p = m >= 0;
    if (kind == StandardKind::delta) p = m <= -1;
    mod.set_present(m, p);
  }
  for (long m = -window; m < window; ++m) {
    if (!mod.present(m) || !mod.present(m + 1)) continue;
    Rational const e = mod.euler(m + 1);
    if (e != 0) {
      mod.set_up(m, 1);
      mod.set_down(m + 1, e);
    } else if (b >= 0) {
      mod.set_up(m, 0);
      mod.set_down(m + 1, 1);
    } else {
      mod.set_up(m, 1);
      mod.set_down(m + 1, 0);
    }
  }
  switch (kind) {
    case StandardKind::projective:
      mod.set_name("P(" + std::to_string(b) + ")");
      break;
    case StandardKind::functions:
      mod.set_name("C[x]");
      break;
    case StandardKind::delta:
      mod.set_name("C[d]delta_" + std::to_string(-a));
      break;
  }
  return mod;
}

/// Direct sum of two modules with disjoint supports (so weight spaces stay
/// at most one-dimensional); bonds between the two pieces are zero.
inline GradedModule direct_sum(GradedModule const& x, GradedModule const& y) {
  if (x.a() != y.a() || x.coset() != y.coset() || x.window() != y.window())
    throw DimensionMismatch("direct_sum: modules differ in a, coset or window");
  GradedModule out(x.a(), x.coset(), x.window());
  out.set_name(x.name() + " + " + y.name());
  for (long m = -x.window(); m <= x.window(); ++m) {
    if (x.present(m) && y.present(m))
      throw Error("direct_sum: supports overlap at slot " + std::to_string(m));
    GradedModule const& src = x.present(m) ? x : y;
    out.set_present(m, x.present(m) || y.present(m));
    if (!out.present(m)) continue;
    if (src.present(m + 1)) out.set_up(m, src.up(m));
    if (src.present(m - 1)) out.set_down(m, src.down(m));
  }
  return out;
}

}  // namespace torusgen::rank1
