#pragma once

#include "torusgen/errors.hpp"
#include "torusgen/matrix.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace torusgen {

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;

  friend bool operator==(Arrow const&, Arrow const&) = default;
};

// A path is a sequence of arrow indices in traversal order.
using Path = std::vector<std::size_t>;

struct RelationTerm {
  Rational coefficient;
  Path path;

  friend bool operator==(RelationTerm const&, RelationTerm const&) = default;
};

using Relation = std::vector<RelationTerm>;

/// Finite quiver with relations. Text format, one item per line:
///   vertices N
///   arrow <name> <source> <target>
///   relation [<coef>] <a1>*<a2>*... [+ [<coef>] <path> ...]
/// Lines starting with '#' are comments.
struct QuiverPresentation {
  std::size_t vertices = 0;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;

  std::size_t path_source(Path const& p) const { return arrows.at(p.front()).source; }
  std::size_t path_target(Path const& p) const { return arrows.at(p.back()).target; }

  std::string path_name(Path const& p) const {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "*" : "") + arrows.at(p[i]).name;
    return s;
  }

  /// Throws InvalidQuiver unless arrows are in range, paths compose, and every
  /// relation is a combination of parallel paths of length >= 2.
  void validate() const {
    std::map<std::string, std::size_t> names;
    for (auto const& a : arrows) {
      if (a.source >= vertices || a.target >= vertices)
        throw InvalidQuiver("arrow " + a.name + " has an endpoint outside 0.." + std::to_string(vertices));
      if (!names.emplace(a.name, 0).second) throw InvalidQuiver("duplicate arrow name " + a.name);
    }
    for (auto const& rel : relations) {
      if (rel.empty()) throw InvalidQuiver("empty relation");
      for (auto const& t : rel) {
        if (t.path.size() < 2) throw InvalidQuiver("relations must use paths of length at least 2");
        for (auto a : t.path)
          if (a >= arrows.size()) throw InvalidQuiver("relation refers to an unknown arrow");
        for (std::size_t i = 0; i + 1 < t.path.size(); ++i)
          if (arrows[t.path[i]].target != arrows[t.path[i + 1]].source)
            throw InvalidQuiver("path " + path_name(t.path) + " does not compose");
        if (path_source(t.path) != path_source(rel.front().path) ||
            path_target(t.path) != path_target(rel.front().path))
          throw InvalidQuiver("relation mixes paths with different endpoints");
      }
    }
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "vertices " << vertices << "\n";
    for (auto const& a : arrows) os << "arrow " << a.name << " " << a.source << " " << a.target << "\n";
    for (auto const& rel : relations) {
      os << "relation";
      for (std::size_t i = 0; i < rel.size(); ++i) {
        if (i) os << " +";
        if (rel[i].coefficient != 1) os << " " << rel[i].coefficient.str();
        os << " " << path_name(rel[i].path);
      }
      os << "\n";
    }
    return os.str();
  }

  static QuiverPresentation parse(std::string const& text) {
    QuiverPresentation q;
    std::map<std::string, std::size_t> index;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_vertices = false;
    auto fail = [&](std::string const& msg) -> InvalidQuiver {
      return InvalidQuiver("line " + std::to_string(lineno) + ": " + msg);
    };
    auto parse_count = [&](std::string const& tok) -> std::size_t {
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw fail("expected a nonnegative integer, got '" + tok + "'");
      return std::stoul(tok);
    };
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      std::string kw;
      if (!(ls >> kw) || kw[0] == '#') continue;
      if (kw == "vertices") {
        std::string n;
        ls >> n;
        q.vertices = parse_count(n);
        have_vertices = true;
      } else if (kw == "arrow") {
        std::string name, s, t;
        if (!(ls >> name >> s >> t)) throw fail("arrow needs a name, a source and a target");
        if (name.find('*') != std::string::npos) throw fail("arrow names may not contain '*'");
        index[name] = q.arrows.size();
        q.arrows.push_back({name, parse_count(s), parse_count(t)});
      } else if (kw == "relation") {
        Relation rel;
        std::vector<std::string> toks;
        for (std::string tok; ls >> tok;) toks.push_back(tok);
        std::size_t i = 0;
        while (i < toks.size()) {
          Rational coef = 1;
          if (toks[i].find_first_not_of("0123456789-/") == std::string::npos) {
            try {
              coef = Rational(toks[i]);
            } catch (std::exception const&) {
              throw fail("bad coefficient '" + toks[i] + "'");
            }
            ++i;
          }
          if (i >= toks.size()) throw fail("relation term is missing its path");
          Path p;
          std::istringstream ps(toks[i]);
          for (std::string a; std::getline(ps, a, '*');) {
            auto it = index.find(a);
            if (it == index.end()) throw fail("unknown arrow '" + a + "'");
            p.push_back(it->second);
          }
          rel.push_back({coef, p});
          ++i;
          if (i < toks.size()) {
            if (toks[i] != "+") throw fail("expected '+' between relation terms");
            ++i;
            if (i >= toks.size()) throw fail("dangling '+'");
          }
        }
        if (rel.empty()) throw fail("empty relation");
        q.relations.push_back(std::move(rel));
      } else {
        throw fail("unknown keyword '" + kw + "'");
      }
    }
    if (!have_vertices) throw InvalidQuiver("missing 'vertices' line");
    q.validate();
    return q;
  }
};

/// kQ/I for homogeneous relations, graded by path length. Each degree keeps
/// the row-reduced relation subspace I_d; paths that are not pivots form the
/// standard basis of A_d.
class BoundPathAlgebra {
 public:
  explicit BoundPathAlgebra(QuiverPresentation q, std::size_t max_degree = 64, std::size_t max_paths = 20000)
      : q_(std::move(q)) {
    q_.validate();
    for (auto const& rel : q_.relations)
      for (auto const& t : rel)
        if (t.path.size() != rel.front().path.size())
          throw InvalidQuiver("only homogeneous relations are supported");
    Degree d0;
    for (std::size_t v = 0; v < q_.vertices; ++v) d0.add({}, v, v);
    d0.set_relations({});
    degrees_.push_back(std::move(d0));
    for (std::size_t d = 1;; ++d) {
      if (d > max_degree)
        throw InvalidQuiver("algebra is not finite-dimensional within degree " + std::to_string(max_degree));
      Degree cur;
      if (d == 1) {
        for (std::size_t a = 0; a < q_.arrows.size(); ++a) cur.add({a}, q_.arrows[a].source, q_.arrows[a].target);
      } else {
        auto const& prev = degrees_.back();
        for (std::size_t i = 0; i < prev.paths.size(); ++i)
          for (std::size_t a = 0; a < q_.arrows.size(); ++a) {
            if (prev.endpoints[i].second != q_.arrows[a].source) continue;
            Path p = prev.paths[i];
            p.push_back(a);
            cur.add(std::move(p), prev.endpoints[i].first, q_.arrows[a].target);
          }
      }
      if (cur.paths.size() > max_paths) throw InvalidQuiver("too many paths in degree " + std::to_string(d));
      if (cur.paths.empty()) break;
      cur.set_relations(relation_generators(cur, d));
      bool const zero = cur.standard.empty();
      degrees_.push_back(std::move(cur));
      if (zero) break;
    }
  }

  QuiverPresentation const& presentation() const { return q_; }
  std::size_t top_degree() const { return degrees_.size() - 1; }

  std::size_t dimension() const {
    std::size_t n = 0;
    for (auto const& d : degrees_) n += d.standard.size();
    return n;
  }

  /// Standard basis elements of degree d from u to v, as path indices.
  std::vector<std::size_t> standard_paths(std::size_t d, std::size_t u, std::size_t v) const {
    std::vector<std::size_t> out;
    if (d >= degrees_.size()) return out;
    for (auto i : degrees_[d].standard)
      if (degrees_[d].endpoints[i] == std::pair{u, v}) out.push_back(i);
    return out;
  }

  Path const& path(std::size_t d, std::size_t i) const { return degrees_.at(d).paths.at(i); }

  /// Path i of degree d followed by arrow a, as a combination of standard
  /// paths of degree d+1: (path index, coefficient) pairs.
  std::vector<std::pair<std::size_t, Rational>> extend_by_arrow(std::size_t d, std::size_t i, std::size_t a) const {
    std::vector<std::pair<std::size_t, Rational>> out;
    if (d + 1 >= degrees_.size() || degrees_[d].endpoints[i].second != q_.arrows[a].source) return out;
    Path p = degrees_[d].paths[i];
    p.push_back(a);
    auto const& next = degrees_[d + 1];
    auto const full = next.reduce(next.index.at(p));
    for (auto j : next.standard)
      if (full[j] != 0) out.push_back({j, full[j]});
    return out;
  }

 private:
  struct Degree {
    std::vector<Path> paths;
    std::vector<std::pair<std::size_t, std::size_t>> endpoints;
    std::map<Path, std::size_t> index;  // unused in degree 0, where all paths are empty
    RatMatrix rref;  // rows span I_d
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> standard;  // non-pivot path indices

    void add(Path p, std::size_t s, std::size_t t) {
      index[p] = paths.size();
      paths.push_back(std::move(p));
      endpoints.push_back({s, t});
    }

    void set_relations(std::vector<std::vector<Rational>> const& gens) {
      rref = RatMatrix(gens.size(), paths.size());
      for (std::size_t r = 0; r < gens.size(); ++r)
        for (std::size_t c = 0; c < paths.size(); ++c) rref(r, c) = gens[r][c];
      pivots = row_reduce(rref);
      std::vector<bool> piv(paths.size(), false);
      for (auto p : pivots) piv[p] = true;
      standard.clear();
      for (std::size_t i = 0; i < paths.size(); ++i)
        if (!piv[i]) standard.push_back(i);
    }

    // Path i modulo I_d, supported on standard paths.
    std::vector<Rational> reduce(std::size_t i) const {
      std::vector<Rational> full(paths.size(), Rational(0));
      full[i] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        Rational const c = full[pivots[r]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < paths.size(); ++j) full[j] -= c * rref(r, j);
      }
      return full;
    }
  };

  // Spanning set of I_d: prefix * relation * suffix for all compatible paths.
  std::vector<std::vector<Rational>> relation_generators(Degree const& cur, std::size_t d) const {
    std::vector<std::vector<Rational>> gens;
    for (auto const& rel : q_.relations) {
      std::size_t const len = rel.front().path.size();
      if (len > d) continue;
      std::size_t const src = q_.path_source(rel.front().path);
      std::size_t const tgt = q_.path_target(rel.front().path);
      for (std::size_t pre = 0; pre + len <= d; ++pre) {
        std::size_t const post = d - len - pre;
        for (std::size_t i = 0; i < degrees_[pre].paths.size(); ++i) {
          if (degrees_[pre].endpoints[i].second != src) continue;
          for (std::size_t j = 0; j < degrees_[post].paths.size(); ++j) {
            if (degrees_[post].endpoints[j].first != tgt) continue;
            std::vector<Rational> g(cur.paths.size(), Rational(0));
            for (auto const& t : rel) {
              Path full = degrees_[pre].paths[i];
              full.insert(full.end(), t.path.begin(), t.path.end());
              full.insert(full.end(), degrees_[post].paths[j].begin(), degrees_[post].paths[j].end());
              g[cur.index.at(full)] += t.coefficient;
            }
            gens.push_back(std::move(g));
          }
        }
      }
    }
    return gens;
  }

  QuiverPresentation q_;
  std::vector<Degree> degrees_;
};

/// Right-module convention: a representation assigns a space to each vertex
/// and, to an arrow u -> v, a linear map V_u -> V_v (matrix of size
/// dims[v] x dims[u]). Paths act in traversal order.
struct Representation {
  std::vector<std::size_t> dims;
  std::vector<RatMatrix> maps;

  std::size_t total_dimension() const {
    std::size_t n = 0;
    for (auto d : dims) n += d;
    return n;
  }
  bool is_zero() const { return total_dimension() == 0; }
};

inline Representation simple_representation(QuiverPresentation const& q, std::size_t v) {
  Representation s;
  s.dims.assign(q.vertices, 0);
  s.dims.at(v) = 1;
  for (auto const& a : q.arrows) s.maps.emplace_back(s.dims[a.target], s.dims[a.source]);
  return s;
}

/// Indecomposable projective e_v A: spanned by standard paths starting at v.
struct ProjectiveModel {
  Representation rep;
  // (degree, path index) of each coordinate at each vertex.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> basis;
};

inline ProjectiveModel projective_representation(BoundPathAlgebra const& alg, std::size_t v) {
  auto const& q = alg.presentation();
  ProjectiveModel pm;
  pm.basis.assign(q.vertices, {});
  for (std::size_t d = 0; d <= alg.top_degree(); ++d)
    for (std::size_t w = 0; w < q.vertices; ++w)
      for (auto i : alg.standard_paths(d, v, w)) pm.basis[w].push_back({d, i});
  for (std::size_t w = 0; w < q.vertices; ++w) pm.rep.dims.push_back(pm.basis[w].size());
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    auto const u = q.arrows[a].source;
    auto const w = q.arrows[a].target;
    RatMatrix m(pm.rep.dims[w], pm.rep.dims[u]);
    auto const& bw = pm.basis[w];
    for (std::size_t col = 0; col < pm.basis[u].size(); ++col) {
      auto const [d, i] = pm.basis[u][col];
      for (auto const& [j, c] : alg.extend_by_arrow(d, i, a)) {
        auto const row = std::find(bw.begin(), bw.end(), std::pair{d + 1, j}) - bw.begin();
        m(static_cast<std::size_t>(row), col) = c;
      }
    }
    pm.rep.maps.push_back(std::move(m));
  }
  return pm;
}

namespace detail {

inline RatMatrix hstack(RatMatrix const& x, RatMatrix const& y) {
  RatMatrix out(x.rows(), x.cols() + y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j);
    for (std::size_t j = 0; j < y.cols(); ++j) out(i, x.cols() + j) = y(i, j);
  }
  return out;
}

/// Unit vectors extending the column span of `existing` to the whole space.
inline std::vector<std::size_t> complement_units(std::size_t n, RatMatrix const& existing) {
  std::vector<std::size_t> picked;
  RatMatrix cur = existing;
  std::size_t r = rank(cur);
  for (std::size_t i = 0; i < n; ++i) {
    RatMatrix e(n, 1);
    e(i, 0) = 1;
    RatMatrix trial = hstack(cur, e);
    std::size_t const tr = rank(trial);
    if (tr > r) {
      picked.push_back(i);
      cur = std::move(trial);
      r = tr;
    }
  }
  return picked;
}

}  // namespace detail

/// First syzygy: kernel of the projective cover P -> M whose generators are
/// unit vectors spanning a complement of rad M (the sum of arrow images).
inline Representation syzygy(BoundPathAlgebra const& alg, Representation const& m) {
  auto const& q = alg.presentation();
  std::size_t const nv = q.vertices;

  struct Summand {
    std::size_t vertex;
    std::vector<Rational> generator;
    ProjectiveModel proj;
    std::vector<std::size_t> offset;  // first cover coordinate at each vertex
  };
  std::vector<Summand> summands;
  for (std::size_t v = 0; v < nv; ++v) {
    RatMatrix rad(m.dims[v], 0);
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].target == v) rad = detail::hstack(rad, m.maps[a]);
    for (auto i : detail::complement_units(m.dims[v], rad)) {
      std::vector<Rational> e(m.dims[v], Rational(0));
      e[i] = 1;
      summands.push_back({v, e, projective_representation(alg, v), {}});
    }
  }

  Representation cover;
  cover.dims.assign(nv, 0);
  for (auto& s : summands) {
    s.offset = cover.dims;
    for (std::size_t w = 0; w < nv; ++w) cover.dims[w] += s.proj.rep.dims[w];
  }
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    auto const u = q.arrows[a].source;
    auto const w = q.arrows[a].target;
    RatMatrix mat(cover.dims[w], cover.dims[u]);
    for (auto const& s : summands)
      for (std::size_t i = 0; i < s.proj.rep.dims[w]; ++i)
        for (std::size_t j = 0; j < s.proj.rep.dims[u]; ++j) mat(s.offset[w] + i, s.offset[u] + j) = s.proj.rep.maps[a](i, j);
    cover.maps.push_back(std::move(mat));
  }

  // A standard path p sends the generator g to g acted on by p's arrows.
  std::vector<RatMatrix> phi;
  for (std::size_t w = 0; w < nv; ++w) phi.emplace_back(m.dims[w], cover.dims[w]);
  for (auto const& s : summands)
    for (std::size_t w = 0; w < nv; ++w)
      for (std::size_t c = 0; c < s.proj.basis[w].size(); ++c) {
        auto const [d, i] = s.proj.basis[w][c];
        RatMatrix vec = RatMatrix::from_columns(m.dims[s.vertex], {s.generator});
        for (auto a : alg.path(d, i)) vec = m.maps[a] * vec;
        for (std::size_t k = 0; k < m.dims[w]; ++k) phi[w](k, s.offset[w] + c) = vec(k, 0);
      }

  Representation k;
  std::vector<RatMatrix> kb;
  for (std::size_t w = 0; w < nv; ++w) {
    auto const ns = nullspace(phi[w]);
    k.dims.push_back(ns.size());
    kb.push_back(ns.empty() ? RatMatrix(cover.dims[w], 0) : RatMatrix::from_columns(cover.dims[w], ns));
  }
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    auto const u = q.arrows[a].source;
    auto const w = q.arrows[a].target;
    RatMatrix mat(k.dims[w], k.dims[u]);
    RatMatrix const moved = cover.maps[a] * kb[u];
    for (std::size_t c = 0; c < k.dims[u]; ++c) {
      auto const coords = solve(kb[w], moved.column(c));
      if (!coords) throw Error("syzygy: kernel is not closed under an arrow");
      for (std::size_t r = 0; r < k.dims[w]; ++r) mat(r, c) = (*coords)[r];
    }
    k.maps.push_back(std::move(mat));
  }
  return k;
}

/// Isomorphism test: look for an invertible element of Hom(x, y) among
/// deterministic pseudo-random combinations of a basis.
inline bool representations_isomorphic(QuiverPresentation const& q, Representation const& x,
                                       Representation const& y) {
  if (x.dims != y.dims) return false;
  std::size_t const nv = q.vertices;
  std::vector<std::size_t> offset(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) offset[v + 1] = offset[v] + x.dims[v] * y.dims[v];
  std::size_t const unknowns = offset[nv];
  if (unknowns == 0) return true;
  // X_v is dims_y[v] x dims_x[v], entry (i, j) at offset[v] + i * dims_x[v] + j.
  auto var = [&](std::size_t v, std::size_t i, std::size_t j) { return offset[v] + i * x.dims[v] + j; };
  std::vector<std::vector<Rational>> rows;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    auto const u = q.arrows[a].source;
    auto const w = q.arrows[a].target;
    // Y_a X_u = X_w X_a, entrywise (i, j) with i < dims[w], j < dims[u].
    for (std::size_t i = 0; i < y.dims[w]; ++i)
      for (std::size_t j = 0; j < x.dims[u]; ++j) {
        std::vector<Rational> row(unknowns, Rational(0));
        for (std::size_t k = 0; k < y.dims[u]; ++k) row[var(u, k, j)] += y.maps[a](i, k);
        for (std::size_t k = 0; k < x.dims[w]; ++k) row[var(w, i, k)] -= x.maps[a](k, j);
        rows.push_back(std::move(row));
      }
  }
  RatMatrix sys(rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) sys(r, c) = rows[r][c];
  auto const basis = nullspace(sys);
  if (basis.empty()) return false;
  unsigned long long state = 0x9e3779b97f4a7c15ULL;
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<Rational> f(unknowns, Rational(0));
    for (auto const& b : basis) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      long const c = static_cast<long>((state >> 33) % 97) + 1;
      for (std::size_t k = 0; k < unknowns; ++k) f[k] += Rational(c) * b[k];
    }
    bool invertible = true;
    for (std::size_t v = 0; v < nv && invertible; ++v) {
      RatMatrix xv(y.dims[v], x.dims[v]);
      for (std::size_t i = 0; i < y.dims[v]; ++i)
        for (std::size_t j = 0; j < x.dims[v]; ++j) xv(i, j) = f[var(v, i, j)];
      if (x.dims[v] > 0 && determinant(xv) == 0) invertible = false;
    }
    if (invertible) return true;
  }
  return false;
}

struct SyzygyChain {
  std::size_t simple = 0;
  // Dimension vectors of Omega^1 .. Omega^k (k <= depth; stops at zero).
  std::vector<std::vector<std::size_t>> dimension_vectors;
  // For each computed Omega^k, the simple it is isomorphic to, if any.
  std::vector<std::optional<std::size_t>> simple_index;
  std::optional<std::size_t> projective_dimension;
  // Smallest p >= 1 with Omega^p S isomorphic to a simple module.
  std::optional<std::size_t> syzygy_period;
  // Smallest p >= 1 with Omega^p S isomorphic to S itself.
  std::optional<std::size_t> orbit_period;
  // Some nonzero Omega^l is isomorphic to an earlier Omega^k (k >= 0).
  bool repeats = false;
};

struct SyzygyReport {
  std::size_t depth = 0;
  std::size_t algebra_dimension = 0;
  std::vector<SyzygyChain> chains;
  bool infinite_global_dimension = false;
  std::optional<std::size_t> global_dimension;
};

/// Minimal projective resolutions of all simples up to the given depth.
inline SyzygyReport syzygy_probe(QuiverPresentation const& q, std::size_t depth) {
  BoundPathAlgebra const alg(q);
  SyzygyReport rep;
  rep.depth = depth;
  rep.algebra_dimension = alg.dimension();
  std::vector<Representation> simples;
  for (std::size_t v = 0; v < q.vertices; ++v) simples.push_back(simple_representation(q, v));
  bool all_finite = true;
  std::size_t gldim = 0;
  for (std::size_t v = 0; v < q.vertices; ++v) {
    SyzygyChain ch;
    ch.simple = v;
    std::vector<Representation> seen{simples[v]};
    Representation cur = simples[v];
    for (std::size_t k = 1; k <= depth; ++k) {
      cur = syzygy(alg, cur);
      ch.dimension_vectors.push_back(cur.dims);
      if (cur.is_zero()) {
        ch.simple_index.push_back(std::nullopt);
        ch.projective_dimension = k - 1;
        break;
      }
      std::optional<std::size_t> sidx;
      for (std::size_t s = 0; s < simples.size() && !sidx; ++s)
        if (representations_isomorphic(q, cur, simples[s])) sidx = s;
      ch.simple_index.push_back(sidx);
      if (sidx && !ch.syzygy_period) ch.syzygy_period = k;
      if (sidx == v && !ch.orbit_period) ch.orbit_period = k;
      for (auto const& prev : seen)
        if (representations_isomorphic(q, cur, prev)) ch.repeats = true;
      seen.push_back(cur);
    }
    if (ch.repeats) rep.infinite_global_dimension = true;
    if (ch.projective_dimension)
      gldim = std::max(gldim, *ch.projective_dimension);
    else
      all_finite = false;
    rep.chains.push_back(std::move(ch));
  }
  if (all_finite) rep.global_dimension = gldim;
  return rep;
}

}  // namespace torusgen
