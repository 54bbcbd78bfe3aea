#pragma once

#include "torusgen/quiver.hpp"
#include "torusgen/rank1/hom.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace torusgen::rank1 {

struct EndBasisElement {
  std::size_t source = 0;
  std::size_t target = 0;
  SlotMap map;
};

/// End of a direct sum of graded modules. Multiplication is diagrammatic:
/// x * y means "x, then y", i.e. the composite y . x, matching path
/// concatenation in the extracted quiver.
struct EndAlgebra {
  std::vector<GradedModule> summands;
  std::vector<std::vector<std::size_t>> hom_dims;  // [source][target]
  std::vector<EndBasisElement> basis;
  // multiplication[p][q] = coordinates of basis[p] * basis[q].
  std::vector<std::vector<std::vector<Rational>>> multiplication;
  QuiverPresentation quiver;
  // Arrow k corresponds to this element of the algebra (coordinates).
  std::vector<std::vector<Rational>> arrow_elements;
  // Whether kQ/I with the extracted length-2 relations has the same dimension.
  bool presentation_complete = false;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_dimensions;

  std::size_t dimension() const { return basis.size(); }
};

inline std::string arrow_name(std::size_t k) {
  static char const* const greek[] = {"alpha", "beta",    "gamma", "delta", "epsilon", "zeta",
                                      "eta",   "theta",   "iota",  "kappa", "lambda",  "mu",
                                      "nu",    "xi",      "omicron", "pi",  "rho",     "sigma",
                                      "tau",   "upsilon", "phi",   "chi",   "psi",     "omega"};
  if (k < std::size(greek)) return greek[k];
  return "a" + std::to_string(k);
}

namespace detail {

inline std::size_t column_rank(std::size_t n, std::vector<std::vector<Rational>> const& cols) {
  if (cols.empty()) return 0;
  return rank(RatMatrix::from_columns(n, cols));
}

/// Greedy basis of span(candidates) modulo span(base).
inline std::vector<std::vector<Rational>> extend_basis(std::size_t n, std::vector<std::vector<Rational>> base,
                                                       std::vector<std::vector<Rational>> const& candidates) {
  std::vector<std::vector<Rational>> picked;
  std::size_t r = column_rank(n, base);
  for (auto const& c : candidates) {
    base.push_back(c);
    std::size_t const nr = column_rank(n, base);
    if (nr > r) {
      picked.push_back(c);
      r = nr;
    } else {
      base.pop_back();
    }
  }
  return picked;
}

}  // namespace detail

inline EndAlgebra end_algebra(std::vector<GradedModule> const& summands) {
  EndAlgebra alg;
  alg.summands = summands;
  std::size_t const k = summands.size();
  for (std::size_t i = 1; i < k; ++i) detail::check_compatible(summands[0], summands[i], "end_algebra");

  // block_start[i][j]: index of the first basis element of Hom(i, j).
  std::vector<std::vector<std::size_t>> block_start(k, std::vector<std::size_t>(k, 0));
  std::vector<std::vector<HomSpace>> homs(k);
  alg.hom_dims.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      homs[i].push_back(hom_dim(summands[i], summands[j]));
      alg.hom_dims[i][j] = homs[i][j].dimension();
      block_start[i][j] = alg.basis.size();
      for (auto const& h : homs[i][j].basis) alg.basis.push_back({i, j, h});
    }
  std::size_t const n = alg.basis.size();

  auto coords_in = [&](std::size_t i, std::size_t j, SlotMap const& f) {
    std::vector<Rational> out(n, Rational(0));
    auto const& hb = homs[i][j].basis;
    if (hb.empty()) return out;
    auto const c = solve(RatMatrix::from_columns(f.size(), hb), f);
    if (!c) throw Error("end_algebra: composite is not an intertwiner");
    for (std::size_t t = 0; t < hb.size(); ++t) out[block_start[i][j] + t] = (*c)[t];
    return out;
  };

  alg.multiplication.assign(n, std::vector<std::vector<Rational>>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      auto const& x = alg.basis[p];
      auto const& y = alg.basis[q];
      if (x.target != y.source)
        alg.multiplication[p][q].assign(n, Rational(0));
      else
        alg.multiplication[p][q] = coords_in(x.source, y.target, compose(y.map, x.map));
    }

  auto multiply = [&](std::vector<Rational> const& x, std::vector<Rational> const& y) {
    std::vector<Rational> out(n, Rational(0));
    for (std::size_t p = 0; p < n; ++p) {
      if (x[p] == 0) continue;
      for (std::size_t q = 0; q < n; ++q) {
        if (y[q] == 0) continue;
        Rational const c = x[p] * y[q];
        for (std::size_t s = 0; s < n; ++s) out[s] += c * alg.multiplication[p][q][s];
      }
    }
    return out;
  };

  // Jacobson radical in characteristic zero: the kernel of the trace form
  // (x, y) -> Tr(L_{xy}).
  std::vector<Rational> trace_left(n, Rational(0));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) trace_left[p] += alg.multiplication[p][q][q];
  RatMatrix form(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t s = 0; s < n; ++s) form(p, q) += alg.multiplication[p][q][s] * trace_left[s];
  auto const rad = nullspace(form);

  // The radical is an ideal, so its (i, j) components lie in it as well.
  std::vector<std::vector<std::vector<std::vector<Rational>>>> rad_ij(
      k, std::vector<std::vector<std::vector<Rational>>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<std::vector<Rational>> parts;
      for (auto const& r : rad) {
        std::vector<Rational> part(n, Rational(0));
        for (std::size_t t = 0; t < alg.hom_dims[i][j]; ++t) part[block_start[i][j] + t] = r[block_start[i][j] + t];
        parts.push_back(std::move(part));
      }
      rad_ij[i][j] = detail::extend_basis(n, {}, parts);
    }

  alg.quiver.vertices = k;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<std::vector<Rational>> rad2;
      for (std::size_t m = 0; m < k; ++m)
        for (auto const& x : rad_ij[i][m])
          for (auto const& y : rad_ij[m][j]) rad2.push_back(multiply(x, y));
      rad2 = detail::extend_basis(n, {}, rad2);
      for (auto const& a : detail::extend_basis(n, rad2, rad_ij[i][j])) {
        alg.quiver.arrows.push_back({arrow_name(alg.quiver.arrows.size()), i, j});
        alg.arrow_elements.push_back(a);
      }
    }

  // Relations among paths of length two with fixed endpoints.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Path> paths;
      std::vector<std::vector<Rational>> images;
      for (std::size_t a = 0; a < alg.quiver.arrows.size(); ++a)
        for (std::size_t b = 0; b < alg.quiver.arrows.size(); ++b) {
          auto const& x = alg.quiver.arrows[a];
          auto const& y = alg.quiver.arrows[b];
          if (x.source != i || y.target != j || x.target != y.source) continue;
          paths.push_back({a, b});
          images.push_back(multiply(alg.arrow_elements[a], alg.arrow_elements[b]));
        }
      if (paths.empty()) continue;
      for (auto const& v : nullspace(RatMatrix::from_columns(n, images))) {
        Relation rel;
        for (std::size_t t = 0; t < paths.size(); ++t)
          if (v[t] != 0) rel.push_back({v[t], paths[t]});
        alg.quiver.relations.push_back(std::move(rel));
      }
    }
  try {
    alg.presentation_complete = BoundPathAlgebra(alg.quiver).dimension() == n;
  } catch (InvalidQuiver const&) {
    alg.presentation_complete = false;
  }

  // Blocks: connected components of the "some nonzero Hom" graph.
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (alg.hom_dims[i][j] > 0) parent[find(i)] = find(j);
  std::vector<std::size_t> root_block(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    auto const r = find(i);
    if (root_block[r] == k) {
      root_block[r] = alg.blocks.size();
      alg.blocks.push_back({});
    }
    alg.blocks[root_block[r]].push_back(i);
  }
  for (auto const& blk : alg.blocks) {
    std::size_t d = 0;
    for (auto i : blk)
      for (auto j : blk) d += alg.hom_dims[i][j];
    alg.block_dimensions.push_back(d);
  }
  return alg;
}

/// P(-a), P(0), P(1), ..., P(a-1): the modules attached to the rank-one
/// generating weights.
inline std::vector<GradedModule> generator_summands(long a, long window) {
  std::vector<GradedModule> out{make_standard(StandardKind::projective, a, -a, window)};
  for (long b = 0; b < a; ++b) out.push_back(make_standard(StandardKind::projective, a, b, window));
  return out;
}

}  // namespace torusgen::rank1
