#include "kgprim/kgraph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace kgprim {

std::string ValidationError::kind_name(Kind kind) {
  switch (kind) {
    case Kind::kMalformed:
      return "malformed presentation";
    case Kind::kNonBijectiveSquares:
      return "non-bijective squares";
    case Kind::kAssociativity:
      return "associativity failure";
    case Kind::kSource:
      return "source vertex";
  }
  return "validation error";
}

bool path_less(const Path& a, const Path& b) {
  if (a.degree != b.degree) return degree_less(a.degree, b.degree);
  if (a.range != b.range) return a.range < b.range;
  if (a.edges != b.edges) return a.edges < b.edges;
  return a.source < b.source;
}

std::size_t PathHash::operator()(const Path& p) const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}((std::uint64_t{p.range} << 32) | p.source);
  for (auto e : p.edges) h = h * 1000003u ^ std::hash<std::uint32_t>{}(e);
  for (auto d : p.degree.entries()) h = h * 31u ^ std::hash<std::int64_t>{}(d);
  return h;
}

std::optional<VertexId> KGraph::find_vertex(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> KGraph::find_edge(const std::string& name) const {
  auto it = edge_index_.find(name);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<EdgeId> KGraph::edges_at(VertexId v) const {
  std::vector<EdgeId> out;
  for (const auto& by_color : in_edges_.at(v)) out.insert(out.end(), by_color.begin(), by_color.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::pair<EdgeId, EdgeId>> KGraph::swap(EdgeId x, EdgeId y) const {
  auto it = squares_.find(pair_key(x, y));
  if (it == squares_.end()) return std::nullopt;
  return it->second;
}

Path KGraph::vertex_path(VertexId v) const {
  if (v >= vertex_count()) throw std::out_of_range("vertex id out of range");
  return Path{v, v, Degree(k_), {}};
}

Path KGraph::edge_path(EdgeId e) const {
  const Edge& ed = edges_.at(e);
  return Path{ed.range, ed.source, Degree::unit(k_, ed.color), {e}};
}

std::vector<EdgeId> KGraph::recolor(std::vector<EdgeId> edges,
                                    const std::vector<std::size_t>& target_colors) const {
  if (edges.size() != target_colors.size()) {
    throw std::invalid_argument("recolor: target word has the wrong length");
  }
  // The j-th occurrence of a color moves to the position of the j-th
  // occurrence of that color in the target word.
  std::vector<std::vector<std::size_t>> slots(k_);
  for (std::size_t i = 0; i < target_colors.size(); ++i) slots.at(target_colors[i]).push_back(i);
  std::vector<std::size_t> used(k_, 0);
  std::vector<std::size_t> index(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::size_t c = edges_[edges[i]].color;
    if (used[c] >= slots[c].size()) {
      throw std::invalid_argument("recolor: target word has the wrong color census");
    }
    index[i] = slots[c][used[c]++];
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (index[i] <= index[i + 1]) continue;
      auto other = swap(edges[i], edges[i + 1]);
      if (!other) {
        throw std::logic_error("no square for " + edges_[edges[i]].name + "." +
                               edges_[edges[i + 1]].name);
      }
      edges[i] = other->first;
      edges[i + 1] = other->second;
      std::swap(index[i], index[i + 1]);
      changed = true;
    }
  }
  return edges;
}

Path KGraph::normalize(const std::vector<EdgeId>& edges) const {
  if (edges.empty()) throw std::invalid_argument("normalize: empty edge list has no range");
  std::vector<std::int64_t> census(k_, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges_.at(edges[i]);
    if (i > 0 && edges_[edges[i - 1]].source != e.range) {
      throw std::invalid_argument("edges " + edges_[edges[i - 1]].name + " and " + e.name +
                                  " are not composable");
    }
    ++census[e.color];
  }
  std::vector<std::size_t> target;
  for (std::size_t c = 0; c < k_; ++c) target.insert(target.end(), census[c], c);
  Path p;
  p.range = edges_[edges.front()].range;
  p.source = edges_[edges.back()].source;
  p.degree = Degree(census);
  p.edges = recolor(edges, target);
  return p;
}

Path KGraph::parse_path(const std::string& text) const {
  if (auto v = find_vertex(text)) return vertex_path(*v);
  if (auto e = find_edge(text)) return edge_path(*e);
  std::vector<EdgeId> edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '.')) {
    auto e = find_edge(item);
    if (!e) throw std::invalid_argument("unknown vertex or edge '" + item + "'");
    edges.push_back(*e);
  }
  if (edges.empty()) throw std::invalid_argument("empty path text");
  return normalize(edges);
}

std::string KGraph::path_string(const Path& p) const {
  if (p.edges.empty()) return vertex_names_.at(p.range);
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i != 0) out += ".";
    out += edges_.at(p.edges[i]).name;
  }
  return out;
}

Path KGraph::compose(const Path& mu, const Path& nu) const {
  if (mu.source != nu.range) {
    throw std::invalid_argument("compose: source " + vertex_names_.at(mu.source) +
                                " does not match range " + vertex_names_.at(nu.range));
  }
  if (mu.edges.empty()) return nu;
  if (nu.edges.empty()) return mu;
  std::vector<EdgeId> edges = mu.edges;
  edges.insert(edges.end(), nu.edges.begin(), nu.edges.end());
  Degree degree = mu.degree + nu.degree;
  std::vector<std::size_t> target;
  for (std::size_t c = 0; c < k_; ++c) target.insert(target.end(), degree[c], c);
  return Path{mu.range, nu.source, degree, recolor(std::move(edges), target)};
}

std::pair<Path, Path> KGraph::factor(const Path& lambda, const Degree& p) const {
  if (!p.le(lambda.degree)) {
    throw std::invalid_argument("factor: " + p.to_string() + " is not below " +
                                lambda.degree.to_string());
  }
  Degree rest = lambda.degree - p;
  if (p.is_zero()) return {vertex_path(lambda.range), lambda};
  if (rest.is_zero()) return {lambda, vertex_path(lambda.source)};
  std::vector<std::size_t> target;
  for (std::size_t c = 0; c < k_; ++c) target.insert(target.end(), p[c], c);
  for (std::size_t c = 0; c < k_; ++c) target.insert(target.end(), rest[c], c);
  std::vector<EdgeId> word = recolor(lambda.edges, target);
  auto cut = word.begin() + p.total();
  Path head{lambda.range, edges_[*(cut - 1)].source, p, std::vector<EdgeId>(word.begin(), cut)};
  Path tail{head.source, lambda.source, rest, std::vector<EdgeId>(cut, word.end())};
  return {std::move(head), std::move(tail)};
}

Path KGraph::segment(const Path& lambda, const Degree& a, const Degree& b) const {
  if (!a.le(b)) throw std::invalid_argument("segment: bounds out of order");
  Path upto_b = factor(lambda, b).first;
  return factor(upto_b, a).second;
}

bool KGraph::for_each_path(VertexId v, const Degree& n,
                           const std::function<bool(const Path&)>& visit) const {
  std::vector<std::size_t> word;
  for (std::size_t c = 0; c < k_; ++c) word.insert(word.end(), n[c], c);
  Path cur{v, v, n, {}};
  std::function<bool(VertexId, std::size_t)> rec = [&](VertexId at, std::size_t pos) {
    if (pos == word.size()) {
      cur.source = at;
      return visit(cur);
    }
    for (EdgeId e : in_edges_[at][word[pos]]) {
      cur.edges.push_back(e);
      bool go_on = rec(edges_[e].source, pos + 1);
      cur.edges.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  return rec(v, 0);
}

std::vector<Path> KGraph::paths(VertexId v, const Degree& n) const {
  std::vector<Path> out;
  for_each_path(v, n, [&](const Path& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::vector<Path> KGraph::paths_into(VertexId v, const Degree& n) const {
  std::vector<Path> out;
  for (VertexId r = 0; r < vertex_count(); ++r) {
    for (auto& p : paths(r, n)) {
      if (p.source == v) out.push_back(std::move(p));
    }
  }
  return out;
}

Presentation KGraph::presentation() const {
  Presentation p;
  p.skeleton.k = static_cast<int>(k_);
  p.skeleton.vertices = vertex_names_;
  for (const auto& e : edges_) {
    p.skeleton.edges.push_back(
        {e.name, static_cast<int>(e.color) + 1, vertex_names_[e.range], vertex_names_[e.source]});
  }
  std::vector<std::pair<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>>> rows;
  for (const auto& [key, other] : squares_) {
    EdgeId x = static_cast<EdgeId>(key >> 32);
    EdgeId y = static_cast<EdgeId>(key & 0xffffffffu);
    if (edges_[x].color < edges_[y].color) rows.push_back({{x, y}, other});
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [a, b] : rows) {
    p.rules.squares.push_back({{edges_[a.first].name, edges_[a.second].name},
                               {edges_[b.first].name, edges_[b.second].name}});
  }
  return p;
}

namespace {

using Kind = ValidationError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& witness) { throw ValidationError(kind, witness); }

}  // namespace

KGraph validate(const ColoredSkeleton& skeleton, const FactorRules& rules) {
  if (skeleton.k < 1) fail(Kind::kMalformed, "k must be positive");
  KGraph g;
  g.k_ = static_cast<std::size_t>(skeleton.k);

  std::set<std::string> vnames(skeleton.vertices.begin(), skeleton.vertices.end());
  if (vnames.size() != skeleton.vertices.size()) fail(Kind::kMalformed, "duplicate vertex name");
  if (vnames.empty()) fail(Kind::kMalformed, "no vertices");
  g.vertex_names_.assign(vnames.begin(), vnames.end());
  for (VertexId v = 0; v < g.vertex_names_.size(); ++v) g.vertex_index_[g.vertex_names_[v]] = v;

  std::vector<EdgeSpec> sorted_edges = skeleton.edges;
  std::sort(sorted_edges.begin(), sorted_edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < sorted_edges.size(); ++i) {
    const EdgeSpec& e = sorted_edges[i];
    if (i > 0 && sorted_edges[i - 1].name == e.name) fail(Kind::kMalformed, "duplicate edge name " + e.name);
    if (e.color < 1 || e.color > skeleton.k) fail(Kind::kMalformed, "edge " + e.name + " has color out of range");
    auto r = g.vertex_index_.find(e.range);
    auto s = g.vertex_index_.find(e.source);
    if (r == g.vertex_index_.end() || s == g.vertex_index_.end()) {
      fail(Kind::kMalformed, "edge " + e.name + " references an unknown vertex");
    }
    g.edges_.push_back({e.name, static_cast<std::size_t>(e.color - 1), r->second, s->second});
    g.edge_index_[e.name] = static_cast<EdgeId>(i);
  }
  g.in_edges_.assign(g.vertex_count(), std::vector<std::vector<EdgeId>>(g.k_));
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    g.in_edges_[g.edges_[e].range][g.edges_[e].color].push_back(e);
  }

  // No sources.
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t c = 0; c < g.k_; ++c) {
      if (g.in_edges_[v][c].empty()) {
        fail(Kind::kSource, "vertex " + g.vertex_names_[v] + " receives no edge of color " +
                                std::to_string(c + 1));
      }
    }
  }

  auto lookup_edge = [&](const std::string& name, std::size_t sq) {
    auto it = g.edge_index_.find(name);
    if (it == g.edge_index_.end()) {
      fail(Kind::kMalformed, "square " + std::to_string(sq) + " references unknown edge " + name);
    }
    return it->second;
  };
  auto name_of = [&](EdgeId x, EdgeId y) { return g.edges_[x].name + "." + g.edges_[y].name; };

  for (std::size_t i = 0; i < rules.squares.size(); ++i) {
    const Square& sq = rules.squares[i];
    EdgeId a = lookup_edge(sq.first[0], i), b = lookup_edge(sq.first[1], i);
    EdgeId c = lookup_edge(sq.second[0], i), d = lookup_edge(sq.second[1], i);
    const auto &ea = g.edges_[a], &eb = g.edges_[b], &ec = g.edges_[c], &ed = g.edges_[d];
    if (ea.source != eb.range || ec.source != ed.range) {
      fail(Kind::kMalformed, "square " + std::to_string(i) + " has a non-composable side");
    }
    if (ea.color == eb.color || ea.color != ed.color || eb.color != ec.color) {
      fail(Kind::kMalformed, "square " + std::to_string(i) + " has inconsistent colors");
    }
    if (ea.range != ec.range || eb.source != ed.source) {
      fail(Kind::kMalformed, "square " + std::to_string(i) + " sides have different endpoints");
    }
    for (auto [from, to] : {std::pair{std::pair{a, b}, std::pair{c, d}}, std::pair{std::pair{c, d}, std::pair{a, b}}}) {
      auto [it, inserted] = g.squares_.emplace(KGraph::pair_key(from.first, from.second), to);
      if (!inserted) {
        fail(Kind::kNonBijectiveSquares,
             "colors {" + std::to_string(std::min(ea.color, eb.color) + 1) + "," +
                 std::to_string(std::max(ea.color, eb.color) + 1) + "}: path " +
                 name_of(from.first, from.second) + " lies in more than one square");
      }
    }
  }

  // Every bicolored two-edge path must lie in a square.
  for (EdgeId x = 0; x < g.edges_.size(); ++x) {
    for (std::size_t c = 0; c < g.k_; ++c) {
      if (c == g.edges_[x].color) continue;
      for (EdgeId y : g.in_edges_[g.edges_[x].source][c]) {
        if (!g.swap(x, y)) {
          fail(Kind::kNonBijectiveSquares,
               "colors {" + std::to_string(std::min(c, g.edges_[x].color) + 1) + "," +
                   std::to_string(std::max(c, g.edges_[x].color) + 1) + "}: path " + name_of(x, y) +
                   " lies in no square");
        }
      }
    }
  }

  if (g.k_ >= 3) {
    auto swap_at = [&](std::array<EdgeId, 3> w, std::size_t i) {
      auto other = *g.swap(w[i], w[i + 1]);
      w[i] = other.first;
      w[i + 1] = other.second;
      return w;
    };
    for (EdgeId x = 0; x < g.edges_.size(); ++x) {
      std::size_t cx = g.edges_[x].color;
      for (std::size_t cy = cx + 1; cy < g.k_; ++cy) {
        for (EdgeId y : g.in_edges_[g.edges_[x].source][cy]) {
          for (std::size_t cz = cy + 1; cz < g.k_; ++cz) {
            for (EdgeId z : g.in_edges_[g.edges_[y].source][cz]) {
              std::array<EdgeId, 3> w{x, y, z};
              auto left = swap_at(swap_at(swap_at(w, 0), 1), 0);
              auto right = swap_at(swap_at(swap_at(w, 1), 0), 1);
              if (left != right) {
                fail(Kind::kAssociativity,
                     "path " + g.edges_[x].name + "." + g.edges_[y].name + "." + g.edges_[z].name +
                         " rewrites to " + g.edges_[left[0]].name + "." + g.edges_[left[1]].name + "." +
                         g.edges_[left[2]].name + " and " + g.edges_[right[0]].name + "." +
                         g.edges_[right[1]].name + "." + g.edges_[right[2]].name);
              }
            }
          }
        }
      }
    }
  }
  return g;
}

}  // namespace kgprim
