#pragma once

#include "torusgen/integer.hpp"
#include "torusgen/matrix.hpp"

#include <algorithm>
#include <vector>

namespace torusgen {

/// Column Hermite normal form: h = m * u with u unimodular.
///
/// h is lower echelon: the nonzero columns come first, column j has its first
/// nonzero entry (the pivot, positive) in row pivot_rows[j], pivot rows
/// strictly increase, and every entry left of a pivot in its row lies in
/// [0, pivot). This shape depends only on the column span of m.
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::vector<std::size_t> pivot_rows;

  std::size_t rank() const { return pivot_rows.size(); }
};

inline HermiteForm hnf(IntMatrix const& m) {
  HermiteForm out{m, IntMatrix::identity(m.cols()), {}};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t const n = m.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < m.rows() && k < n; ++i) {
    for (std::size_t j = k + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      Integer const a = h(i, k), b = h(i, j);
      auto const [g, x, y] = extended_gcd(a, b);
      Integer const bg = b / g, ag = a / g;
      h.combine_columns(k, j, x, y, -bg, ag);
      u.combine_columns(k, j, x, y, -bg, ag);
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0) {
      h.negate_column(k);
      u.negate_column(k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Integer const q = floor_div(h(i, j), h(i, k));
      h.add_column_multiple(j, k, -q);
      u.add_column_multiple(j, k, -q);
    }
    out.pivot_rows.push_back(i);
    ++k;
  }
  return out;
}

/// Smith normal form: u * m * v = d, d diagonal with d_1 | d_2 | ... and
/// nonnegative diagonal entries.
struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;

  /// Nonzero diagonal entries, in order.
  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
      if (d(i, i) != 0) out.push_back(d(i, i));
    return out;
  }
};

inline SmithForm snf(IntMatrix const& m) {
  std::size_t const rows = m.rows(), cols = m.cols();
  SmithForm out{m, IntMatrix::identity(rows), IntMatrix::identity(cols)};
  IntMatrix& d = out.d;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return out;
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_columns(t, pj);
      v.swap_columns(t, pj);

      bool cleared = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer const q = d(i, t) / d(t, t);
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer const q = d(t, j) / d(t, t);
        d.add_column_multiple(j, t, -q);
        v.add_column_multiple(j, t, -q);
        if (d(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      d.add_row_multiple(t, bad, 1);
      u.add_row_multiple(t, bad, 1);
    }
    // Sign fix by a column operation so that u stays free of negations.
    if (d(t, t) < 0) {
      d.negate_column(t);
      v.negate_column(t);
    }
  }
  return out;
}

}  // namespace torusgen
