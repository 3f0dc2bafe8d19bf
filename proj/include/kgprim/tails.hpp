// tails.hpp - maximal tails, tail subgraphs and cofinal infinite paths.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgprim/kgraph.hpp"
#include "kgprim/lasso.hpp"

namespace kgprim {

// Sorted vertex ids of the owning graph.
using VertexSet = std::vector<VertexId>;

// reach[v][w] is true iff some path has range v and source w.
std::vector<std::vector<bool>> reachability(const KGraph& g);

struct TailCheck {
  bool ok = true;
  char condition = 0;  // 'a', 'b' or 'c' when !ok
  std::string witness;
};

// Conditions checked in order: common receivers (a), an edge of every color
// back into T (b), closure under reaching T (c).
TailCheck check_maximal_tail(const KGraph& g, const VertexSet& tail);
inline bool is_maximal_tail(const KGraph& g, const VertexSet& tail) {
  return check_maximal_tail(g, tail).ok;
}

// Every maximal tail, ordered by their sorted vertex-name lists.
std::vector<VertexSet> maximal_tails(const KGraph& g);

// s(vΛ) ⊆ H for every v in H.
bool is_hereditary(const KGraph& g, const VertexSet& set);
// The smallest hereditary set containing `seeds`.
VertexSet hereditary_closure(const KGraph& g, const VertexSet& seeds);

VertexSet vertex_set_from_names(const KGraph& g, const std::vector<std::string>& names);
std::vector<std::string> vertex_names(const KGraph& g, const VertexSet& set);

// The k-graph on T with every edge and square that stays inside T. Vertex and
// edge names are kept, so ids map back through the tables below.
struct TailSubgraph {
  KGraph graph;
  std::vector<VertexId> vertex_to_parent;
  std::vector<EdgeId> edge_to_parent;

  Path lift(const KGraph& parent, const Path& p) const;
  LassoPath lift(const KGraph& parent, const LassoPath& x) const;
  VertexSet lift(const VertexSet& set) const;
  // Inverse of lift; nullopt if p leaves T.
  std::optional<Path> lower(const KGraph& parent, const Path& p) const;
  VertexSet lower(const KGraph& parent, const VertexSet& set) const;
};

// Throws std::invalid_argument unless T is a maximal tail.
TailSubgraph tail_subgraph(const KGraph& g, const VertexSet& tail);

// A lasso in ΛT, expressed in g, such that every vertex of T reaches some
// vertex on it.
LassoPath cofinal_path(const KGraph& g, const VertexSet& tail);

}  // namespace kgprim
