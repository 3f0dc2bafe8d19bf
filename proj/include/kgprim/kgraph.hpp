// kgraph.hpp - finite k-graphs presented by a colored skeleton and
// factorisation squares, with path arithmetic in color-ordered normal form.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgprim/degree.hpp"

namespace kgprim {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct EdgeSpec {
  std::string name;
  int color = 1;  // 1-based, as written in graph-spec documents
  std::string range;
  std::string source;

  bool operator==(const EdgeSpec&) const = default;
};

struct ColoredSkeleton {
  int k = 1;
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;

  bool operator==(const ColoredSkeleton&) const = default;
};

// first[0]·first[1] = second[0]·second[1], where the two pairs have opposite
// color orders.
struct Square {
  std::array<std::string, 2> first;
  std::array<std::string, 2> second;

  bool operator==(const Square&) const = default;
};

struct FactorRules {
  std::vector<Square> squares;

  bool operator==(const FactorRules&) const = default;
};

struct Presentation {
  ColoredSkeleton skeleton;
  FactorRules rules;
};

// Malformed graph-spec document; `location` is a JSON pointer or byte offset.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

class ValidationError : public std::runtime_error {
 public:
  enum class Kind { kMalformed, kNonBijectiveSquares, kAssociativity, kSource };

  ValidationError(Kind kind, std::string witness)
      : std::runtime_error(kind_name(kind) + ": " + witness),
        kind_(kind),
        witness_(std::move(witness)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }
  static std::string kind_name(Kind kind);

 private:
  Kind kind_;
  std::string witness_;
};

// A morphism of a KGraph. `edges` is in color-ordered normal form: every
// color-1 edge (nearest the range) precedes every color-2 edge, and so on.
// Paths carry ids only; every operation takes the owning graph explicitly.
struct Path {
  VertexId range = 0;
  VertexId source = 0;
  Degree degree;
  std::vector<EdgeId> edges;

  bool is_vertex() const noexcept { return edges.empty(); }

  bool operator==(const Path&) const = default;
};

// Reporting order: degree_less on degrees, then range, then edge names.
bool path_less(const Path& a, const Path& b);

struct PathHash {
  std::size_t operator()(const Path& p) const noexcept;
};

class KGraph {
 public:
  struct Edge {
    std::string name;
    std::size_t color = 0;  // 0-based
    VertexId range = 0;
    VertexId source = 0;
  };

  std::size_t k() const noexcept { return k_; }
  std::size_t vertex_count() const noexcept { return vertex_names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Vertex and edge ids follow lexicographic name order.
  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<std::string>& vertex_names() const noexcept { return vertex_names_; }
  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& name) const;

  // Edges of the given 0-based color with range v.
  const std::vector<EdgeId>& edges_into(VertexId v, std::size_t color) const {
    return in_edges_.at(v).at(color);
  }
  // Every edge with range v, all colors, in id order.
  std::vector<EdgeId> edges_at(VertexId v) const;

  // The other side of the square containing the two-edge path x·y.
  std::optional<std::pair<EdgeId, EdgeId>> swap(EdgeId x, EdgeId y) const;

  Path vertex_path(VertexId v) const;
  Path edge_path(EdgeId e) const;
  // Normal form of an arbitrary composable edge sequence (composition order).
  Path normalize(const std::vector<EdgeId>& edges) const;
  // Parses "v" (a vertex) or "e1.f2.e3" (edges in composition order).
  Path parse_path(const std::string& text) const;
  std::string path_string(const Path& p) const;

  Path compose(const Path& mu, const Path& nu) const;
  // Unique (head, tail) with head·tail = lambda and d(head) = p.
  std::pair<Path, Path> factor(const Path& lambda, const Degree& p) const;
  // lambda(a, b) for a <= b <= d(lambda).
  Path segment(const Path& lambda, const Degree& a, const Degree& b) const;
  // Every path with range v and degree n, in lexicographic edge-name order.
  std::vector<Path> paths(VertexId v, const Degree& n) const;
  // Same enumeration, stopping as soon as `visit` returns false. Returns
  // false iff stopped early.
  bool for_each_path(VertexId v, const Degree& n,
                     const std::function<bool(const Path&)>& visit) const;
  // Paths with source v and degree n.
  std::vector<Path> paths_into(VertexId v, const Degree& n) const;

  // Rewrites a composable edge sequence to the given color word using squares.
  std::vector<EdgeId> recolor(std::vector<EdgeId> edges,
                              const std::vector<std::size_t>& target_colors) const;

  // The presentation in graph-spec form: edges by name, one square per
  // unordered pair, written with the lower color first.
  Presentation presentation() const;

  friend KGraph validate(const ColoredSkeleton& skeleton, const FactorRules& rules);

 private:
  KGraph() = default;
  static std::uint64_t pair_key(EdgeId x, EdgeId y) {
    return (static_cast<std::uint64_t>(x) << 32) | y;
  }

  std::size_t k_ = 0;
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::map<std::string, VertexId> vertex_index_;
  std::map<std::string, EdgeId> edge_index_;
  std::vector<std::vector<std::vector<EdgeId>>> in_edges_;
  std::unordered_map<std::uint64_t, std::pair<EdgeId, EdgeId>> squares_;
};

// Checks no sources, bijectivity of the squares for every color pair and,
// for k >= 3, the associativity (hexagon) condition on every tricolored path.
// Throws ValidationError with a witness on failure.
KGraph validate(const ColoredSkeleton& skeleton, const FactorRules& rules);
inline KGraph validate(const Presentation& p) { return validate(p.skeleton, p.rules); }

}  // namespace kgprim
