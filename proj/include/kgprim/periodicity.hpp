// periodicity.hpp - shift-tail equivalence, the periodicity group, Σ-pairs
// and the hereditary set H_Per.

#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgprim/kgraph.hpp"
#include "kgprim/lattice.hpp"
#include "kgprim/tails.hpp"

namespace kgprim {

struct EquivalenceResult {
  bool equivalent = false;
  // When not equivalent: an extension w in s(mu)Λ with
  // (mu w)(0, t) != (nu w)(0, t) for t = d(mu w) meet d(nu w).
  std::optional<Path> witness;
};

// Decides mu ~ nu (mu x = nu x for every infinite x) by computing the
// greatest bisimulation on pairs (alpha, beta) with disjoint degree supports.
// Results are cached per graph; safe to share between threads.
class EquivalenceEngine {
 public:
  explicit EquivalenceEngine(const KGraph& g) : g_(g) {}

  EquivalenceResult check(const Path& mu, const Path& nu) const;
  bool equivalent(const Path& mu, const Path& nu) const { return check(mu, nu).equivalent; }
  std::size_t cached_states() const;

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<Path, Path>& p) const noexcept {
      return PathHash{}(p.first) * 1000033u ^ PathHash{}(p.second);
    }
  };
  EquivalenceResult check_reduced(const Path& alpha, const Path& beta) const;

  const KGraph& g_;
  mutable std::mutex mutex_;
  // Good states map to nullopt; bad ones to their refuting extension.
  mutable std::unordered_map<std::pair<Path, Path>, std::optional<Path>, PairHash> cache_;
};

// One-shot convenience; throws std::invalid_argument if s(mu) != s(nu).
bool equivalent(const KGraph& g, const Path& mu, const Path& nu);

enum class OracleVerdict { kRefuted, kCompatible };
// Compares (mu nu')(0, t) with (nu nu')(0, t) over every nu' in s(mu)Λ with
// |d(nu')|_inf <= depth.
OracleVerdict oracle_equivalent_depth(const KGraph& g, const Path& mu, const Path& nu,
                                      std::int64_t depth);

struct SigmaPair {
  Degree p;
  Degree q;
  auto operator<=>(const SigmaPair&) const = default;
  bool operator==(const SigmaPair&) const = default;
};

struct PerGroup {
  IntLattice lattice;
  std::int64_t search_bound = 0;
  bool closure_verified = false;

  std::size_t k() const noexcept { return lattice.k(); }
  std::size_t rank() const noexcept { return lattice.rank(); }
  const std::vector<DegreeDelta>& basis() const noexcept { return lattice.basis(); }
  bool contains(const DegreeDelta& h) const { return lattice.contains(h); }
};

struct HperResult {
  VertexSet certified;
  VertexSet refuted;
  VertexSet undetermined;
  std::int64_t depth = 0;
  std::vector<SigmaPair> sigma_min;
  std::optional<VertexId> anchor;  // w with Σ_w ⊇ Σ^min
  std::optional<Degree> join;      // N
  struct Refutation {
    VertexId vertex;
    Path lambda;
    Degree m;
  };
  std::vector<Refutation> refutations;
};

// Periodicity data of a k-graph whose vertex set is a maximal tail (for
// example a tail subgraph). The constructor checks that precondition.
class Periodicity {
 public:
  explicit Periodicity(const KGraph& g);

  const KGraph& graph() const noexcept { return g_; }
  const EquivalenceEngine& engine() const noexcept { return *engine_; }
  bool equivalent(const Path& mu, const Path& nu) const { return engine_->equivalent(mu, nu); }

  // The unique mu in r(lambda)Λ^m with mu ~ lambda, if any.
  std::optional<Path> partner(const Path& lambda, const Degree& m) const;

  // Some (mu, nu) with mu ~ nu, d(mu) = h_+, d(nu) = h_-.
  std::optional<std::pair<Path, Path>> per_witness(const DegreeDelta& h) const;
  bool per_contains(const DegreeDelta& h) const { return per_witness(h).has_value(); }

  bool sigma_contains(VertexId v, const Degree& p, const Degree& q) const;
  bool sigma_contains_somewhere(const Degree& p, const Degree& q) const;

  PerGroup per_group(std::int64_t bound) const;
  std::vector<SigmaPair> sigma_min(std::int64_t bound) const;
  HperResult h_per(const PerGroup& per, std::int64_t depth) const;

 private:
  const KGraph& g_;
  std::unique_ptr<EquivalenceEngine> engine_;
  std::vector<LassoPath> lassos_;  // lasso_at(v) for every vertex
};

// Nonzero h with |h|_inf <= bound whose first nonzero entry is positive,
// ordered by |h|_inf then lexicographically.
std::vector<DegreeDelta> half_box(std::size_t k, std::int64_t bound);

}  // namespace kgprim
