#include "kgprim/rep_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kgprim {

std::complex<double> phase_value(const Phase& p) {
  Phase w = wrap_phase(p);
  if (w == Phase(0)) return {1.0, 0.0};
  double turns = static_cast<double>(w.numerator()) / static_cast<double>(w.denominator());
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

double norm(const SparseVector& v) {
  double s = 0;
  for (const auto& [i, c] : v) s += std::norm(c);
  return std::sqrt(s);
}

SparseVector subtract(const SparseVector& a, const SparseVector& b) {
  SparseVector out = a;
  for (const auto& [i, c] : b) out[i] -= c;
  return out;
}

SparseVector scaled(const SparseVector& a, std::complex<double> c) {
  SparseVector out;
  for (const auto& [i, x] : a) out[i] = x * c;
  return out;
}

namespace {

Phase degree_phase(const CharacterLift& z, const Degree& d) { return lift_value(z, d.delta()); }

}  // namespace

RepEvaluator::RepEvaluator(const KGraph& g, LassoPath x, CharacterLift z, std::int64_t L, std::int64_t M)
    : g_(g), x_(std::move(x)), z_(std::move(z)) {
  if (z_.z.size() != g.k()) throw std::invalid_argument("lift has the wrong number of phases");
  if (L < 0 || M < 0) throw std::invalid_argument("truncation limits must be non-negative");
  if (x_.prefix.degree.max_entry() > L) {
    throw std::invalid_argument("truncation L=" + std::to_string(L) + " does not cover the prefix degree " +
                                x_.prefix.degree.to_string() + " of the base path");
  }
  // Every basis point is periodic with the period of x from this degree on.
  key_degree_ = Degree::diagonal(g.k(), L) + x_.prefix.degree + x_.period();

  for (const Degree& m : degrees_in_box(g.k(), M)) {
    LassoPath tail = shift(g, x_, m);
    for (const Degree& n : degrees_in_box(g.k(), L)) {
      for (const Path& lambda : g.paths_into(tail.range(), n)) {
        LassoPath y = prepend(g, lambda, tail);
        Path k = key(y);
        if (by_key_.count(k)) continue;
        by_key_.emplace(std::move(k), points_.size());
        addresses_.push_back({lambda, m});
        points_.push_back(std::move(y));
      }
    }
  }

  for (VertexId v = 0; v < g.vertex_count(); ++v) generators.push_back(g.vertex_path(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e) generators.push_back(g.edge_path(e));
  for (std::size_t i = 0; i < g.k(); ++i) {
    for (std::size_t j = i; j < g.k(); ++j) {
      Degree d = Degree::unit(g.k(), i) + Degree::unit(g.k(), j);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (const Path& p : g.paths(v, d)) generators.push_back(p);
      }
    }
  }
  for (std::size_t i = 0; i < generators.size(); ++i) generator_index.emplace(generators[i], i);
  action.assign(generators.size(), {});
  adjoint.assign(generators.size(), {});
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t b = 0; b < points_.size(); ++b) {
      action[i].push_back(act(generators[i], b));
      adjoint[i].push_back(act_adjoint(generators[i], b));
    }
  }
}

Path RepEvaluator::key(const LassoPath& y) const {
  return infinite_segment(g_, y, Degree(g_.k()), key_degree_);
}

std::optional<std::size_t> RepEvaluator::find(const LassoPath& y) const {
  auto it = by_key_.find(key(y));
  if (it == by_key_.end()) return std::nullopt;
  // The key decides equality only for points periodic early enough.
  if (!lasso_equal(g_, y, points_[it->second])) return std::nullopt;
  return it->second;
}

Image RepEvaluator::act(const Path& mu, std::size_t b) const {
  const LassoPath& y = points_.at(b);
  if (mu.source != y.range()) return {};
  auto idx = find(prepend(g_, mu, y));
  if (!idx) return {Image::Kind::kOutside, 0, Phase(0)};
  return {Image::Kind::kBasis, *idx, degree_phase(z_, mu.degree)};
}

Image RepEvaluator::act_adjoint(const Path& mu, std::size_t b) const {
  const LassoPath& y = points_.at(b);
  if (mu.range != y.range()) return {};
  if (infinite_segment(g_, y, Degree(g_.k()), mu.degree) != mu) return {};
  auto idx = find(shift(g_, y, mu.degree));
  if (!idx) return {Image::Kind::kOutside, 0, Phase(0)};
  return {Image::Kind::kBasis, *idx, wrap_phase(-degree_phase(z_, mu.degree))};
}

namespace {

std::optional<SparseVector> apply_table(const std::vector<Image>& row, const SparseVector& v) {
  SparseVector out;
  for (const auto& [b, c] : v) {
    const Image& im = row.at(b);
    if (im.kind == Image::Kind::kOutside) return std::nullopt;
    if (im.kind == Image::Kind::kBasis) out[im.index] += c * phase_value(im.phase);
  }
  return out;
}

}  // namespace

std::optional<SparseVector> RepEvaluator::apply(std::size_t gen, const SparseVector& v) const {
  return apply_table(action.at(gen), v);
}

std::optional<SparseVector> RepEvaluator::apply_adjoint(std::size_t gen, const SparseVector& v) const {
  return apply_table(adjoint.at(gen), v);
}

std::optional<SparseVector> RepEvaluator::apply_path(const Path& mu, const SparseVector& v) const {
  SparseVector out;
  for (const auto& [b, c] : v) {
    Image im = act(mu, b);
    if (im.kind == Image::Kind::kOutside) return std::nullopt;
    if (im.kind == Image::Kind::kBasis) out[im.index] += c * phase_value(im.phase);
  }
  return out;
}

namespace {

// Vector arithmetic used by the CK checks. Complex: doubles. Exact: formal
// integer combinations of roots of unity, so a relation that holds
// combinatorially shows deviation exactly 0.
struct ComplexOps {
  using Vec = SparseVector;
  static Vec unit(std::size_t b) { return Vec{{b, 1.0}}; }
  static std::optional<Vec> apply(const std::vector<Image>& row, const Vec& v) { return apply_table(row, v); }
  static void add_into(Vec& acc, const Vec& x) {
    for (const auto& [i, c] : x) acc[i] += c;
  }
  static double distance(const Vec& a, const Vec& b) { return norm(subtract(a, b)); }
};

struct ExactOps {
  using Vec = std::map<std::size_t, std::map<Phase, long long>>;
  static Vec unit(std::size_t b) { return Vec{{b, {{Phase(0), 1}}}}; }
  static std::optional<Vec> apply(const std::vector<Image>& row, const Vec& v) {
    Vec out;
    for (const auto& [b, terms] : v) {
      const Image& im = row.at(b);
      if (im.kind == Image::Kind::kOutside) return std::nullopt;
      if (im.kind != Image::Kind::kBasis) continue;
      for (const auto& [phase, mult] : terms) out[im.index][wrap_phase(phase + im.phase)] += mult;
    }
    return clean(std::move(out));
  }
  static void add_into(Vec& acc, const Vec& x) {
    for (const auto& [i, terms] : x) {
      for (const auto& [phase, mult] : terms) acc[i][phase] += mult;
    }
    acc = clean(std::move(acc));
  }
  static double distance(const Vec& a, const Vec& b) {
    if (a == b) return 0.0;
    auto numeric = [](const Vec& v) {
      SparseVector out;
      for (const auto& [i, terms] : v) {
        for (const auto& [phase, mult] : terms) out[i] += static_cast<double>(mult) * phase_value(phase);
      }
      return out;
    };
    // Formally different but numerically equal combinations are not expected
    // here; report the numeric distance either way.
    return norm(subtract(numeric(a), numeric(b)));
  }
  static Vec clean(Vec v) {
    for (auto it = v.begin(); it != v.end();) {
      std::erase_if(it->second, [](const auto& t) { return t.second == 0; });
      it = it->second.empty() ? v.erase(it) : std::next(it);
    }
    return v;
  }
};

template <typename Ops>
CkReport run_ck(const RepEvaluator& rep) {
  using Vec = typename Ops::Vec;
  const KGraph& g = rep.graph();
  CkReport r;
  auto act = [&](std::size_t gen, const std::optional<Vec>& v) -> std::optional<Vec> {
    if (!v) return std::nullopt;
    return Ops::apply(rep.action.at(gen), *v);
  };
  auto act_adj = [&](std::size_t gen, const std::optional<Vec>& v) -> std::optional<Vec> {
    if (!v) return std::nullopt;
    return Ops::apply(rep.adjoint.at(gen), *v);
  };
  auto record = [&](double& slot, const std::optional<Vec>& lhs, const std::optional<Vec>& rhs) {
    if (!lhs || !rhs) {
      ++r.skipped;
      return;
    }
    ++r.checks;
    slot = std::max(slot, Ops::distance(*lhs, *rhs));
  };
  auto vertex_gen = [&](VertexId v) { return rep.generator(g.vertex_path(v)); };

  for (std::size_t b = 0; b < rep.dimension(); ++b) {
    std::optional<Vec> e = Ops::unit(b);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      auto tv = act(vertex_gen(v), e);
      for (VertexId w = 0; w < g.vertex_count(); ++w) {
        auto lhs = act(vertex_gen(v), act(vertex_gen(w), e));
        record(r.ck1, lhs, v == w ? tv : std::optional<Vec>(Vec{}));
      }
    }
    for (EdgeId x = 0; x < g.edge_count(); ++x) {
      Path xi = g.edge_path(x);
      std::size_t gx = rep.generator(xi);
      // CK3 on edges and on the tabulated two-edge paths below.
      record(r.ck3, act_adj(gx, act(gx, e)), act(vertex_gen(xi.source), e));
      for (EdgeId y : g.edges_at(xi.source)) {
        Path eta = g.edge_path(y);
        record(r.ck2, act(gx, act(rep.generator(eta), e)), act(rep.generator(g.compose(xi, eta)), e));
      }
    }
    for (std::size_t gi = g.vertex_count() + g.edge_count(); gi < rep.generators.size(); ++gi) {
      const Path& lam = rep.generators[gi];
      record(r.ck3, act_adj(gi, act(gi, e)), act(vertex_gen(lam.source), e));
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      auto tv = act(vertex_gen(v), e);
      for (std::size_t c = 0; c < g.k(); ++c) {
        std::optional<Vec> sum = Vec{};
        for (EdgeId x : g.edges_into(v, c)) {
          std::size_t gx = rep.generator(g.edge_path(x));
          auto up = act(gx, act_adj(gx, e));
          if (!up) {
            sum.reset();
            break;
          }
          Ops::add_into(*sum, *up);
        }
        record(r.ck4, sum, tv);
      }
    }
  }
  return r;
}

}  // namespace

CkReport check_ck_relations(const RepEvaluator& rep, CkMode mode) {
  return mode == CkMode::kExact ? run_ck<ExactOps>(rep) : run_ck<ComplexOps>(rep);
}

IdealActionReport check_ideal_action(const RepEvaluator& rep, const IdealPresentation& presentation,
                                     const VertexSet& tail) {
  const KGraph& g = rep.graph();
  const LassoPath& x = rep.base();
  for (const Degree& n : degrees_below(x.prefix.degree + x.period())) {
    VertexId v = lasso_vertex(g, x, n);
    if (!std::binary_search(tail.begin(), tail.end(), v)) {
      throw std::invalid_argument("base path visits " + g.vertex_name(v) + ", which is outside the tail");
    }
  }
  IdealActionReport out;
  out.relations = presentation.relations.size();
  for (std::size_t b = 0; b < rep.dimension(); ++b) {
    SparseVector e = rep.unit(b);
    for (VertexId v : presentation.vertex_generators) {
      auto tv = rep.apply(rep.generator(g.vertex_path(v)), e);
      if (tv) out.vertex_generator_max = std::max(out.vertex_generator_max, norm(*tv));
    }
    for (const IdealRelation& rel : presentation.relations) {
      auto a = rep.apply_path(rel.mu, e);
      auto c = rep.apply_path(rel.nu, e);
      if (!a || !c) continue;
      ++out.vectors_checked;
      out.relation_norm_max = std::max(out.relation_norm_max, norm(subtract(*a, scaled(*c, phase_value(rel.phase)))));
    }
  }
  return out;
}

}  // namespace kgprim
