// quotient.hpp - the quotient monoid Z^k/Per, the quotient P-graph on a
// hereditary vertex set, and its pullback k-graph.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgprim/kgraph.hpp"
#include "kgprim/periodicity.hpp"

namespace kgprim {

// An element of G = Z^k/Per, stored as its canonical HNF representative.
struct Coset {
  DegreeDelta rep;
  auto operator<=>(const Coset&) const = default;
  bool operator==(const Coset&) const = default;
};

class QuotientMonoid {
 public:
  explicit QuotientMonoid(const PerGroup& per) : lattice_(per.lattice) {}
  explicit QuotientMonoid(IntLattice lattice) : lattice_(std::move(lattice)) {}

  std::size_t k() const noexcept { return lattice_.k(); }
  const IntLattice& lattice() const noexcept { return lattice_; }

  Coset image(const DegreeDelta& h) const { return {lattice_.reduce(h)}; }
  Coset image(const Degree& n) const { return image(n.delta()); }
  Coset add(const Coset& a, const Coset& b) const { return image(a.rep + b.rep); }
  Coset subtract(const Coset& a, const Coset& b) const { return image(a.rep - b.rep); }

  // Least n in N^k (by |n|_1, then lexicographically) with image(n) = g,
  // searching totals up to `max_total`.
  std::optional<Degree> least_preimage(const Coset& g, std::int64_t max_total) const;

 private:
  IntLattice lattice_;
};

// One morphism class of the quotient P-graph.
struct PClass {
  Path key;  // least representative: the unique member of least degree
  Coset degree;
  VertexId range = 0;
  VertexId source = 0;
};

class PGraph {
 public:
  const Periodicity& periodicity() const noexcept { return *per_; }
  const KGraph& graph() const noexcept { return per_->graph(); }
  const QuotientMonoid& monoid() const noexcept { return monoid_; }
  const VertexSet& objects() const noexcept { return objects_; }
  const std::vector<PClass>& classes() const noexcept { return classes_; }
  std::int64_t depth() const noexcept { return depth_; }

  // Least degree in N^k mapping to g; throws if none has total <= max_total.
  Degree least_degree(const Coset& g, std::int64_t max_total = 64) const;
  // The least representative of [lambda]; throws std::runtime_error if the
  // partner is missing (H is not inside H_Per).
  Path key(const Path& lambda) const;
  // Table lookup, then key lookup; nullopt if the class was never tabulated.
  std::optional<std::size_t> class_of(const Path& lambda) const;
  std::optional<std::size_t> class_of_key(const Path& key) const;

  // Path -> class id for every tabulated path. Exposed so tests can corrupt it.
  std::unordered_map<Path, std::size_t, PathHash> class_index;

  friend PGraph build_quotient_pgraph(const Periodicity& tail, const VertexSet& hereditary,
                                      const PerGroup& per, std::int64_t depth);

 private:
  PGraph(const Periodicity& tail, const PerGroup& per) : per_(&tail), monoid_(per) {}

  const Periodicity* per_;
  QuotientMonoid monoid_;
  VertexSet objects_;
  std::int64_t depth_ = 0;
  std::vector<PClass> classes_;
  std::unordered_map<Path, std::size_t, PathHash> key_index_;
  struct Cache {
    std::mutex mutex;
    std::map<Coset, std::optional<Degree>> least;  // nullopt: none up to total 64
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Tabulates the classes of every path with range in H and |d|_inf <= depth.
// Throws std::invalid_argument if H is empty or not hereditary and
// std::runtime_error if the degree map is not well defined on the table.
PGraph build_quotient_pgraph(const Periodicity& tail, const VertexSet& hereditary,
                             const PerGroup& per, std::int64_t depth);

struct PGraphCheck {
  bool ok = true;
  std::string witness;
  std::size_t factorisations = 0;
};

// Unique factorisation for every tabulated class with key degree in the box
// of size `depth` and every splitting of its degree, plus 0 < |vΓ^g| for
// the degrees of that box.
PGraphCheck validate_pgraph(const PGraph& pg, std::int64_t depth);

struct PullbackGraph {
  KGraph graph;
  // Key of the class behind each pullback edge, by pullback edge id.
  std::vector<Path> edge_keys;
};

// Edges are the classes of degree q(e_i), named "<key>@<i>".
PullbackGraph build_pullback(const PGraph& pg);

struct IsoCheck {
  bool ok = true;
  std::string witness;
  std::size_t paths_checked = 0;
  // (path in HΛ, image in the pullback) for paths of degree at most one in
  // each color, for reporting.
  std::vector<std::pair<std::string, std::string>> table;
};

// lambda -> ([lambda], d(lambda)) on every path of HΛ with |d|_inf <= depth.
IsoCheck verify_pullback_iso(const PGraph& pg, const PullbackGraph& pb, std::int64_t depth);

// Checks that `edge_map` (edge of a -> edge name in b) is a bijection of
// edges preserving colors, endpoints (through the induced vertex map) and
// squares.
IsoCheck check_edge_isomorphism(const KGraph& a, const KGraph& b,
                                const std::function<std::string(EdgeId)>& edge_map);

std::string coset_string(const Coset& g);

}  // namespace kgprim
