#include "kgprim/periodicity.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace kgprim {

namespace {

// Box-walk over Z^k in [-bound, bound]^k.
void box_deltas(std::size_t k, std::int64_t bound, std::vector<DegreeDelta>& out) {
  std::vector<std::int64_t> cur(k, -bound);
  while (true) {
    out.emplace_back(cur);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (cur[i] < bound) {
        ++cur[i];
        for (std::size_t j = i + 1; j < k; ++j) cur[j] = -bound;
        break;
      }
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace

std::vector<DegreeDelta> half_box(std::size_t k, std::int64_t bound) {
  std::vector<DegreeDelta> all;
  box_deltas(k, bound, all);
  std::vector<DegreeDelta> out;
  for (auto& h : all) {
    auto it = std::find_if(h.entries().begin(), h.entries().end(), [](std::int64_t x) { return x != 0; });
    if (it != h.entries().end() && *it > 0) out.push_back(h);
  }
  std::stable_sort(out.begin(), out.end(), [](const DegreeDelta& a, const DegreeDelta& b) {
    if (a.max_abs() != b.max_abs()) return a.max_abs() < b.max_abs();
    return a.entries() < b.entries();
  });
  return out;
}

std::size_t EquivalenceEngine::cached_states() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

EquivalenceResult EquivalenceEngine::check(const Path& mu, const Path& nu) const {
  if (mu.source != nu.source) {
    throw std::invalid_argument("equivalence needs paths with a common source");
  }
  Path at_source = g_.vertex_path(mu.source);
  if (mu.range != nu.range) return {false, at_source};
  Degree common = meet(mu.degree, nu.degree);
  auto [head_mu, alpha] = g_.factor(mu, common);
  auto [head_nu, beta] = g_.factor(nu, common);
  if (head_mu != head_nu) return {false, at_source};
  return check_reduced(alpha, beta);
}

EquivalenceResult EquivalenceEngine::check_reduced(const Path& alpha, const Path& beta) const {
  if (alpha == beta) return {true, std::nullopt};
  std::lock_guard<std::mutex> lock(mutex_);
  using State = std::pair<Path, Path>;
  State seed{alpha, beta};
  if (auto it = cache_.find(seed); it != cache_.end()) {
    return {!it->second.has_value(), it->second};
  }

  std::vector<State> states{seed};
  std::vector<std::pair<std::size_t, EdgeId>> parent{{0, 0}};
  std::unordered_map<State, std::size_t, PairHash> index{{seed, 0}};

  auto refute = [&](std::size_t at, EdgeId last, const std::optional<Path>& tail) {
    std::vector<EdgeId> chain{last};
    for (std::size_t i = at; i != 0; i = parent[i].first) chain.push_back(parent[i].second);
    std::reverse(chain.begin(), chain.end());
    Path w = g_.normalize(chain);
    if (tail) w = g_.compose(w, *tail);
    cache_[seed] = w;
    return EquivalenceResult{false, w};
  };

  for (std::size_t at = 0; at < states.size(); ++at) {
    // Copy: `states` may reallocate below.
    State st = states[at];
    for (EdgeId e : g_.edges_at(st.first.source)) {
      Path step = g_.edge_path(e);
      auto [ha, ta] = g_.factor(g_.compose(st.first, step), step.degree);
      auto [hb, tb] = g_.factor(g_.compose(st.second, step), step.degree);
      if (ha != hb) return refute(at, e, std::nullopt);
      State next{std::move(ta), std::move(tb)};
      if (auto it = cache_.find(next); it != cache_.end()) {
        if (it->second) return refute(at, e, it->second);
        continue;
      }
      if (index.count(next)) continue;
      index.emplace(next, states.size());
      states.push_back(std::move(next));
      parent.emplace_back(at, e);
    }
  }
  for (auto& st : states) cache_[std::move(st)] = std::nullopt;
  return {true, std::nullopt};
}

bool equivalent(const KGraph& g, const Path& mu, const Path& nu) {
  return EquivalenceEngine(g).equivalent(mu, nu);
}

OracleVerdict oracle_equivalent_depth(const KGraph& g, const Path& mu, const Path& nu,
                                      std::int64_t depth) {
  if (mu.source != nu.source) throw std::invalid_argument("oracle needs paths with a common source");
  for (const Degree& n : degrees_in_box(g.k(), depth)) {
    bool compatible = g.for_each_path(mu.source, n, [&](const Path& ext) {
      Path a = g.compose(mu, ext);
      Path b = g.compose(nu, ext);
      Degree t = meet(a.degree, b.degree);
      if (a.range != b.range) return false;
      return g.factor(a, t).first == g.factor(b, t).first;
    });
    if (!compatible) return OracleVerdict::kRefuted;
  }
  return OracleVerdict::kCompatible;
}

Periodicity::Periodicity(const KGraph& g) : g_(g), engine_(std::make_unique<EquivalenceEngine>(g)) {
  VertexSet all;
  for (VertexId v = 0; v < g.vertex_count(); ++v) all.push_back(v);
  auto check = check_maximal_tail(g, all);
  if (!check.ok) {
    throw std::invalid_argument(std::string("vertex set is not a maximal tail: condition (") +
                                check.condition + ") " + check.witness);
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) lassos_.push_back(lasso_at(g, v));
}

std::optional<Path> Periodicity::partner(const Path& lambda, const Degree& m) const {
  // If mu ~ lambda then mu x = lambda x for every x, so mu = (lambda x)(0, m).
  const LassoPath& x = lassos_.at(lambda.source);
  Path candidate = infinite_segment(g_, prepend(g_, lambda, x), Degree(g_.k()), m);
  if (candidate.source != lambda.source) return std::nullopt;
  if (!engine_->equivalent(candidate, lambda)) return std::nullopt;
  return candidate;
}

std::optional<std::pair<Path, Path>> Periodicity::per_witness(const DegreeDelta& h) const {
  if (h.rank() != g_.k()) throw std::invalid_argument("per_contains: rank mismatch");
  Degree plus = h.plus();
  Degree minus = h.minus();
  std::optional<std::pair<Path, Path>> found;
  for (VertexId v = 0; v < g_.vertex_count() && !found; ++v) {
    g_.for_each_path(v, plus, [&](const Path& mu) {
      if (auto nu = partner(mu, minus)) {
        found.emplace(mu, *nu);
        return false;
      }
      return true;
    });
  }
  return found;
}

bool Periodicity::sigma_contains(VertexId v, const Degree& p, const Degree& q) const {
  Degree total = p + q;
  return g_.for_each_path(v, total, [&](const Path& lambda) {
    Path alpha = g_.segment(lambda, p, total);
    Path beta = g_.segment(lambda, q, total);
    return engine_->equivalent(alpha, beta);
  });
}

bool Periodicity::sigma_contains_somewhere(const Degree& p, const Degree& q) const {
  for (VertexId v = 0; v < g_.vertex_count(); ++v) {
    if (sigma_contains(v, p, q)) return true;
  }
  return false;
}

PerGroup Periodicity::per_group(std::int64_t bound) const {
  std::vector<DegreeDelta> generators;
  IntLattice lattice(g_.k());
  for (const DegreeDelta& h : half_box(g_.k(), bound)) {
    if (lattice.contains(h)) continue;
    if (per_contains(h)) {
      generators.push_back(h);
      lattice = IntLattice(g_.k(), generators);
    }
  }
  for (const auto& b : lattice.basis()) {
    if (!per_contains(b)) {
      throw std::logic_error("basis vector " + b.to_string() + " failed certification");
    }
  }
  PerGroup out{lattice, bound, true};
  const auto& basis = lattice.basis();
  for (std::size_t i = 0; i < basis.size() && out.closure_verified; ++i) {
    std::vector<DegreeDelta> probes{-basis[i]};
    for (std::size_t j = 0; j < basis.size(); ++j) {
      probes.push_back(basis[i] + basis[j]);
      probes.push_back(basis[i] - basis[j]);
    }
    for (const auto& h : probes) {
      if (h.max_abs() <= 2 * bound && !per_contains(h)) {
        out.closure_verified = false;
        break;
      }
    }
  }
  return out;
}

std::vector<SigmaPair> Periodicity::sigma_min(std::int64_t bound) const {
  std::vector<Degree> box = degrees_in_box(g_.k(), bound);
  std::vector<SigmaPair> candidates;
  for (const auto& p : box) {
    for (const auto& q : box) {
      if (p.is_zero() && q.is_zero()) continue;
      candidates.push_back({p, q});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const SigmaPair& a, const SigmaPair& b) {
    auto ta = a.p.total() + a.q.total();
    auto tb = b.p.total() + b.q.total();
    if (ta != tb) return ta < tb;
    return a < b;
  });
  std::vector<SigmaPair> found;
  for (const auto& c : candidates) {
    bool dominates = std::any_of(found.begin(), found.end(), [&](const SigmaPair& f) {
      return f.p.le(c.p) && f.q.le(c.q);
    });
    if (dominates) continue;
    if (sigma_contains_somewhere(c.p, c.q)) found.push_back(c);
  }
  std::sort(found.begin(), found.end());
  return found;
}

HperResult Periodicity::h_per(const PerGroup& per, std::int64_t depth) const {
  HperResult out;
  out.depth = depth;
  std::size_t n = g_.vertex_count();
  if (per.rank() == 0) {
    for (VertexId v = 0; v < n; ++v) out.certified.push_back(v);
  } else {
    out.sigma_min = sigma_min(per.search_bound);
    for (VertexId w = 0; w < n && !out.anchor; ++w) {
      bool all = std::all_of(out.sigma_min.begin(), out.sigma_min.end(),
                             [&](const SigmaPair& s) { return sigma_contains(w, s.p, s.q); });
      if (all) out.anchor = w;
    }
    if (out.anchor) {
      Degree big(g_.k());
      for (const auto& s : out.sigma_min) big = join(big, join(s.p, s.q));
      out.join = big;
      VertexSet seeds;
      for (const Path& eta : g_.paths(*out.anchor, big)) seeds.push_back(eta.source);
      out.certified = hereditary_closure(g_, seeds);
    }
  }

  std::vector<Degree> box = degrees_in_box(g_.k(), depth);
  for (VertexId v = 0; v < n; ++v) {
    bool refuted = false;
    for (const Degree& d : box) {
      if (refuted) break;
      g_.for_each_path(v, d, [&](const Path& lambda) {
        for (const Degree& m : box) {
          if (!per.contains(d.delta() - m.delta())) continue;
          if (!partner(lambda, m)) {
            out.refutations.push_back({v, lambda, m});
            refuted = true;
            return false;
          }
        }
        return true;
      });
    }
    if (refuted) out.refuted.push_back(v);
  }

  for (VertexId v = 0; v < n; ++v) {
    bool c = std::binary_search(out.certified.begin(), out.certified.end(), v);
    bool r = std::binary_search(out.refuted.begin(), out.refuted.end(), v);
    if (c && r) {
      throw std::logic_error("vertex " + g_.vertex_name(v) + " is both certified and refuted in H_Per");
    }
    if (!c && !r) out.undetermined.push_back(v);
  }
  return out;
}

}  // namespace kgprim
