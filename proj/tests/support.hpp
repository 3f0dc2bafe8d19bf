// support.hpp - fixture loading and brute-force oracles shared by the tests.
// The oracles only use compose/segment/paths and direct definitions, never
// the engines they are compared against.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kgprim/graph_spec.hpp"
#include "kgprim/kgraph.hpp"
#include "kgprim/lasso.hpp"
#include "kgprim/tails.hpp"

namespace kgtest {

using namespace kgprim;

inline std::string fixture_path(const std::string& name) {
  return std::string(KGPRIM_FIXTURE_DIR) + "/" + name + ".json";
}

inline KGraph fixture(const std::string& name) { return load_graph(fixture_path(name)); }

inline const std::vector<std::string>& good_fixtures() {
  static const std::vector<std::string> names = {"G_loop", "G_O2", "G_2v", "G_sq", "G_flip", "G_prod", "G_cube"};
  return names;
}

inline Path P(const KGraph& g, const std::string& text) { return g.parse_path(text); }

inline Degree D(std::initializer_list<std::int64_t> e) { return Degree(e); }

// Every path with |d|_inf <= bound.
inline std::vector<Path> all_paths(const KGraph& g, std::int64_t bound) {
  std::vector<Path> out;
  for (const Degree& n : degrees_in_box(g.k(), bound)) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (const Path& p : g.paths(v, n)) out.push_back(p);
    }
  }
  return out;
}

// Every path with range v and degree n, built edge by edge from edge lists
// (not from KGraph::paths) and normalised.
inline std::vector<Path> brute_paths(const KGraph& g, VertexId v, const Degree& n) {
  std::vector<Path> out;
  std::vector<std::size_t> word;
  for (std::size_t c = 0; c < g.k(); ++c) {
    for (std::int64_t i = 0; i < n[c]; ++i) word.push_back(c);
  }
  std::vector<EdgeId> edges;
  std::function<void(VertexId, std::size_t)> rec = [&](VertexId at, std::size_t i) {
    if (i == word.size()) {
      out.push_back(edges.empty() ? g.vertex_path(v) : g.normalize(edges));
      return;
    }
    for (EdgeId e : g.edges_into(at, word[i])) {
      edges.push_back(e);
      rec(g.edge(e).source, i + 1);
      edges.pop_back();
    }
  };
  rec(v, 0);
  return out;
}

// Depth-bounded equivalence check written from the definition: mu x and nu x
// agree on their common initial segment for every extension of degree
// (depth,...,depth).
inline bool brute_compatible(const KGraph& g, const Path& mu, const Path& nu, std::int64_t depth) {
  Degree full = Degree::diagonal(g.k(), depth);
  for (const Path& ext : brute_paths(g, mu.source, full)) {
    Path a = g.compose(mu, ext);
    Path b = g.compose(nu, ext);
    Degree t = meet(a.degree, b.degree);
    Degree zero(g.k());
    if (g.segment(a, zero, t) != g.segment(b, zero, t)) return false;
  }
  return true;
}

// sigma^p(x)(0, n) = sigma^q(x)(0, n) for every x with x(0) = v, tested on
// every finite path of degree max(p,q) + n from v.
inline bool brute_sigma(const KGraph& g, VertexId v, const Degree& p, const Degree& q, std::int64_t depth) {
  Degree n = Degree::diagonal(g.k(), depth);
  Degree top = join(p, q) + n;
  for (const Path& lam : brute_paths(g, v, top)) {
    if (g.segment(lam, p, p + n) != g.segment(lam, q, q + n)) return false;
  }
  return true;
}

// Direct reachability by DFS over edges (range -> source).
inline std::vector<std::vector<bool>> brute_reach(const KGraph& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (VertexId v = 0; v < n; ++v) {
    std::vector<VertexId> stack = {v};
    r[v][v] = true;
    while (!stack.empty()) {
      VertexId at = stack.back();
      stack.pop_back();
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).range == at && !r[v][g.edge(e).source]) {
          r[v][g.edge(e).source] = true;
          stack.push_back(g.edge(e).source);
        }
      }
    }
  }
  return r;
}

// Conditions (a)-(c) of a maximal tail, straight from the definition.
inline bool brute_is_tail(const KGraph& g, const std::vector<bool>& in) {
  auto r = brute_reach(g);
  std::size_t n = g.vertex_count();
  bool any = false;
  for (VertexId v = 0; v < n; ++v) any = any || in[v];
  if (!any) return false;
  for (VertexId v1 = 0; v1 < n; ++v1) {
    for (VertexId v2 = 0; v2 < n; ++v2) {
      if (!in[v1] || !in[v2]) continue;
      bool common = false;
      for (VertexId w = 0; w < n; ++w) common = common || (in[w] && r[v1][w] && r[v2][w]);
      if (!common) return false;
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (!in[v]) continue;
    for (std::size_t c = 0; c < g.k(); ++c) {
      bool back = false;
      for (EdgeId e : g.edges_into(v, c)) back = back || in[g.edge(e).source];
      if (!back) return false;
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w = 0; w < n; ++w) {
      if (in[w] && r[v][w] && !in[v]) return false;
    }
  }
  return true;
}

}  // namespace kgtest
