#include "kgprim/tails.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace kgprim {

std::vector<std::vector<bool>> reachability(const KGraph& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (VertexId v = 0; v < n; ++v) {
    std::vector<VertexId> stack{v};
    reach[v][v] = true;
    while (!stack.empty()) {
      VertexId cur = stack.back();
      stack.pop_back();
      for (EdgeId e : g.edges_at(cur)) {
        VertexId s = g.edge(e).source;
        if (!reach[v][s]) {
          reach[v][s] = true;
          stack.push_back(s);
        }
      }
    }
  }
  return reach;
}

TailCheck check_maximal_tail(const KGraph& g, const VertexSet& tail) {
  if (tail.empty()) throw std::invalid_argument("empty vertex set is not a tail candidate");
  std::vector<bool> in(g.vertex_count(), false);
  for (VertexId v : tail) in.at(v) = true;
  auto reach = reachability(g);
  const auto& name = [&](VertexId v) { return g.vertex_name(v); };

  for (VertexId v1 : tail) {
    for (VertexId v2 : tail) {
      if (v2 < v1) continue;
      bool common = std::any_of(tail.begin(), tail.end(),
                                [&](VertexId w) { return reach[v1][w] && reach[v2][w]; });
      if (!common) {
        return {false, 'a', name(v1) + " and " + name(v2) + " have no common receiver in T"};
      }
    }
  }
  for (VertexId v : tail) {
    for (std::size_t c = 0; c < g.k(); ++c) {
      const auto& es = g.edges_into(v, c);
      bool back = std::any_of(es.begin(), es.end(), [&](EdgeId e) { return in[g.edge(e).source]; });
      if (!back) {
        return {false, 'b', name(v) + " has no edge of color " + std::to_string(c + 1) + " from T"};
      }
    }
  }
  for (VertexId w : tail) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (reach[v][w] && !in[v]) {
        return {false, 'c', name(v) + " reaches " + name(w) + " but is not in T"};
      }
    }
  }
  return {};
}

std::vector<VertexSet> maximal_tails(const KGraph& g) {
  std::size_t n = g.vertex_count();
  if (n > 24) throw std::invalid_argument("maximal tail enumeration is limited to 24 vertices");
  auto reach = reachability(g);
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    // Condition (c) first: anything reaching a member must be a member.
    bool closed = true;
    for (VertexId w = 0; w < n && closed; ++w) {
      if (!(mask >> w & 1)) continue;
      for (VertexId v = 0; v < n; ++v) {
        if (reach[v][w] && !(mask >> v & 1)) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) continue;
    VertexSet t;
    for (VertexId v = 0; v < n; ++v) {
      if (mask >> v & 1) t.push_back(v);
    }
    if (is_maximal_tail(g, t)) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_hereditary(const KGraph& g, const VertexSet& set) {
  std::vector<bool> in(g.vertex_count(), false);
  for (VertexId v : set) in.at(v) = true;
  for (VertexId v : set) {
    for (EdgeId e : g.edges_at(v)) {
      if (!in[g.edge(e).source]) return false;
    }
  }
  return true;
}

VertexSet hereditary_closure(const KGraph& g, const VertexSet& seeds) {
  auto reach = reachability(g);
  std::set<VertexId> out;
  for (VertexId v : seeds) {
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
      if (reach[v][w]) out.insert(w);
    }
  }
  return VertexSet(out.begin(), out.end());
}

VertexSet vertex_set_from_names(const KGraph& g, const std::vector<std::string>& names) {
  std::set<VertexId> out;
  for (const auto& n : names) {
    auto v = g.find_vertex(n);
    if (!v) throw std::invalid_argument("unknown vertex '" + n + "'");
    out.insert(*v);
  }
  return VertexSet(out.begin(), out.end());
}

std::vector<std::string> vertex_names(const KGraph& g, const VertexSet& set) {
  std::vector<std::string> out;
  for (VertexId v : set) out.push_back(g.vertex_name(v));
  return out;
}

Path TailSubgraph::lift(const KGraph& parent, const Path& p) const {
  if (p.edges.empty()) return parent.vertex_path(vertex_to_parent.at(p.range));
  Path out{vertex_to_parent.at(p.range), vertex_to_parent.at(p.source), p.degree, {}};
  for (EdgeId e : p.edges) out.edges.push_back(edge_to_parent.at(e));
  return out;
}

LassoPath TailSubgraph::lift(const KGraph& parent, const LassoPath& x) const {
  return LassoPath{lift(parent, x.prefix), lift(parent, x.cycle)};
}

VertexSet TailSubgraph::lift(const VertexSet& set) const {
  VertexSet out;
  for (VertexId v : set) out.push_back(vertex_to_parent.at(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Path> TailSubgraph::lower(const KGraph& parent, const Path& p) const {
  auto r = graph.find_vertex(parent.vertex_name(p.range));
  auto s = graph.find_vertex(parent.vertex_name(p.source));
  if (!r || !s) return std::nullopt;
  Path out{*r, *s, p.degree, {}};
  for (EdgeId e : p.edges) {
    auto sub = graph.find_edge(parent.edge(e).name);
    if (!sub) return std::nullopt;
    out.edges.push_back(*sub);
  }
  return out;
}

VertexSet TailSubgraph::lower(const KGraph& parent, const VertexSet& set) const {
  VertexSet out;
  for (VertexId v : set) {
    auto sub = graph.find_vertex(parent.vertex_name(v));
    if (!sub) throw std::invalid_argument("vertex " + parent.vertex_name(v) + " is outside the tail");
    out.push_back(*sub);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TailSubgraph tail_subgraph(const KGraph& g, const VertexSet& tail) {
  auto check = check_maximal_tail(g, tail);
  if (!check.ok) {
    throw std::invalid_argument(std::string("not a maximal tail: condition (") + check.condition +
                                ") " + check.witness);
  }
  std::vector<bool> in(g.vertex_count(), false);
  for (VertexId v : tail) in[v] = true;
  Presentation full = g.presentation();
  Presentation sub;
  sub.skeleton.k = full.skeleton.k;
  std::set<std::string> kept_edges;
  for (VertexId v : tail) sub.skeleton.vertices.push_back(g.vertex_name(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    if (in[ed.range] && in[ed.source]) {
      sub.skeleton.edges.push_back(full.skeleton.edges[e]);
      kept_edges.insert(ed.name);
    }
  }
  for (const auto& sq : full.rules.squares) {
    if (kept_edges.count(sq.first[0]) && kept_edges.count(sq.first[1]) &&
        kept_edges.count(sq.second[0]) && kept_edges.count(sq.second[1])) {
      sub.rules.squares.push_back(sq);
    }
  }
  TailSubgraph out{validate(sub), {}, {}};
  for (VertexId v = 0; v < out.graph.vertex_count(); ++v) {
    out.vertex_to_parent.push_back(*g.find_vertex(out.graph.vertex_name(v)));
  }
  for (EdgeId e = 0; e < out.graph.edge_count(); ++e) {
    out.edge_to_parent.push_back(*g.find_edge(out.graph.edge(e).name));
  }
  return out;
}

LassoPath cofinal_path(const KGraph& g, const VertexSet& tail) {
  TailSubgraph sub = tail_subgraph(g, tail);
  auto reach = reachability(sub.graph);
  // Vertices every member of T reaches inside ΛT; nonempty for a finite tail.
  std::optional<VertexId> target;
  for (VertexId w = 0; w < sub.graph.vertex_count() && !target; ++w) {
    bool all = true;
    for (VertexId v = 0; v < sub.graph.vertex_count(); ++v) all = all && reach[v][w];
    if (all) target = w;
  }
  if (!target) throw std::logic_error("maximal tail without a common receiver");
  return sub.lift(g, lasso_at(sub.graph, *target));
}

}  // namespace kgprim
