#include "kgprim/quotient.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace kgprim {

std::string coset_string(const Coset& g) { return "[" + g.rep.to_string() + "]"; }

std::optional<Degree> QuotientMonoid::least_preimage(const Coset& g, std::int64_t max_total) const {
  std::size_t k = lattice_.k();
  std::vector<std::int64_t> cur(k, 0);
  std::optional<Degree> found;
  // Compositions of `total` in lexicographic order.
  std::function<bool(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == k) {
      cur[i] = left;
      if (image(DegreeDelta(cur)) == g) {
        found = Degree(cur);
        return true;
      }
      return false;
    }
    for (std::int64_t x = 0; x <= left; ++x) {
      cur[i] = x;
      if (rec(i + 1, left - x)) return true;
    }
    return false;
  };
  for (std::int64_t total = 0; total <= max_total; ++total) {
    if (k == 0) break;
    if (rec(0, total)) return found;
  }
  return std::nullopt;
}

Degree PGraph::least_degree(const Coset& g, std::int64_t max_total) const {
  constexpr std::int64_t kNegativeCap = 64;
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->least.find(g);
    if (it != cache_->least.end()) {
      if (it->second) return *it->second;
      if (max_total <= kNegativeCap) throw std::runtime_error("no degree in N^k maps to " + coset_string(g));
    }
  }
  auto n = monoid_.least_preimage(g, max_total);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (n || max_total >= kNegativeCap) cache_->least[g] = n;
  if (!n) throw std::runtime_error("no degree in N^k maps to " + coset_string(g));
  return *n;
}

Path PGraph::key(const Path& lambda) const {
  Degree target = least_degree(monoid_.image(lambda.degree), lambda.degree.total());
  if (target == lambda.degree) return lambda;
  auto mu = per_->partner(lambda, target);
  if (!mu) {
    throw std::runtime_error("path " + graph().path_string(lambda) + " has no partner of degree " +
                             target.to_string() + "; the vertex set is not inside H_Per");
  }
  return *mu;
}

std::optional<std::size_t> PGraph::class_of_key(const Path& k) const {
  auto it = key_index_.find(k);
  if (it == key_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PGraph::class_of(const Path& lambda) const {
  auto it = class_index.find(lambda);
  if (it != class_index.end()) return it->second;
  return class_of_key(key(lambda));
}

PGraph build_quotient_pgraph(const Periodicity& tail, const VertexSet& hereditary,
                             const PerGroup& per, std::int64_t depth) {
  const KGraph& g = tail.graph();
  if (hereditary.empty()) throw std::invalid_argument("quotient P-graph needs a nonempty vertex set");
  if (!is_hereditary(g, hereditary)) throw std::invalid_argument("quotient P-graph vertex set is not hereditary");
  PGraph pg(tail, per);
  pg.objects_ = hereditary;
  pg.depth_ = depth;

  std::vector<std::pair<Path, Path>> tabulated;  // (path, key)
  std::set<Path, decltype(&path_less)> keys(&path_less);
  for (VertexId v : hereditary) {
    for (const Degree& n : degrees_in_box(g.k(), depth)) {
      for (const Path& lambda : g.paths(v, n)) {
        Path k = pg.key(lambda);
        keys.insert(k);
        tabulated.emplace_back(lambda, std::move(k));
      }
    }
  }
  for (const Path& k : keys) {
    pg.key_index_.emplace(k, pg.classes_.size());
    pg.classes_.push_back({k, pg.monoid_.image(k.degree), k.range, k.source});
  }
  for (auto& [lambda, k] : tabulated) pg.class_index.emplace(lambda, pg.key_index_.at(k));

  // Equivalent keys in different cosets would mean Per is larger than the
  // lattice we were given.
  for (std::size_t i = 0; i < pg.classes_.size(); ++i) {
    for (std::size_t j = i + 1; j < pg.classes_.size(); ++j) {
      const PClass& x = pg.classes_[i];
      const PClass& y = pg.classes_[j];
      if (x.range != y.range || x.source != y.source || x.degree == y.degree) continue;
      if (tail.equivalent(x.key, y.key)) {
        throw std::runtime_error("degree map not well defined (bound too small): " + g.path_string(x.key) +
                                 " ~ " + g.path_string(y.key));
      }
    }
  }
  return pg;
}

PGraphCheck validate_pgraph(const PGraph& pg, std::int64_t depth) {
  const KGraph& g = pg.graph();
  const QuotientMonoid& mon = pg.monoid();
  PGraphCheck out;
  std::set<Coset> box_cosets;
  for (const Degree& n : degrees_in_box(g.k(), depth)) box_cosets.insert(mon.image(n));

  auto least = [&](const Coset& c) -> std::optional<Degree> {
    try {
      return pg.least_degree(c);
    } catch (const std::runtime_error&) {
      return std::nullopt;
    }
  };

  for (VertexId v : pg.objects()) {
    for (const Coset& c : box_cosets) {
      auto n = least(c);
      if (!n || g.paths(v, *n).empty()) {
        out.ok = false;
        out.witness = "vertex " + g.vertex_name(v) + " receives no morphism of degree " + coset_string(c);
        return out;
      }
    }
  }

  for (std::size_t x = 0; x < pg.classes().size(); ++x) {
    const PClass& cls = pg.classes()[x];
    if (cls.key.degree.max_entry() > depth) continue;
    for (const Coset& a : box_cosets) {
      Coset b = mon.subtract(cls.degree, a);
      auto na = least(a);
      auto nb = least(b);
      if (!na || !nb) continue;
      std::set<std::size_t> ys;
      for (const Path& lambda : g.paths(cls.range, *na)) {
        if (auto y = pg.class_of(lambda)) ys.insert(*y);
      }
      std::size_t count = 0;
      for (std::size_t y : ys) {
        const Path& key_y = pg.classes()[y].key;
        std::set<std::size_t> zs;
        for (const Path& zeta : g.paths(key_y.source, *nb)) {
          if (auto z = pg.class_of(zeta)) zs.insert(*z);
        }
        for (std::size_t z : zs) {
          const Path& key_z = pg.classes()[z].key;
          if (key_z.range != key_y.source || key_z.source != cls.source) continue;
          auto xz = pg.class_of(g.compose(key_y, key_z));
          if (xz && *xz == x) ++count;
        }
      }
      ++out.factorisations;
      if (count != 1) {
        out.ok = false;
        out.witness = "class [" + g.path_string(cls.key) + "] has " + std::to_string(count) +
                      " factorisations of degree " + coset_string(a) + " + " + coset_string(b);
        return out;
      }
    }
  }
  return out;
}

namespace {

std::string pullback_edge_name(const KGraph& g, const Path& key, std::size_t color) {
  return g.path_string(key) + "@" + std::to_string(color + 1);
}

}  // namespace

PullbackGraph build_pullback(const PGraph& pg) {
  const KGraph& g = pg.graph();
  const QuotientMonoid& mon = pg.monoid();
  std::size_t k = g.k();
  std::vector<Degree> unit_least;
  for (std::size_t i = 0; i < k; ++i) unit_least.push_back(pg.least_degree(mon.image(Degree::unit(k, i))));

  Presentation p;
  p.skeleton.k = static_cast<int>(k);
  for (VertexId v : pg.objects()) p.skeleton.vertices.push_back(g.vertex_name(v));
  // keys_by_color[i]: classes of degree q(e_i), one key each.
  std::vector<std::vector<Path>> keys_by_color(k);
  std::map<std::string, Path> key_of_name;
  for (std::size_t i = 0; i < k; ++i) {
    for (VertexId v : pg.objects()) {
      for (const Path& key : g.paths(v, unit_least[i])) {
        std::string name = pullback_edge_name(g, key, i);
        if (key_of_name.count(name)) throw std::logic_error("pullback edge name collision: " + name);
        key_of_name.emplace(name, key);
        keys_by_color[i].push_back(key);
        p.skeleton.edges.push_back(
            {name, static_cast<int>(i) + 1, g.vertex_name(key.range), g.vertex_name(key.source)});
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (const Path& x : keys_by_color[i]) {
        for (const Path& y : keys_by_color[j]) {
          if (x.source != y.range) continue;
          // q(e_i) + q(e_j) = q(e_j) + q(e_i), and x·y already has a
          // degree of the form n_j + n_i, so it factors directly.
          Path lambda = g.compose(x, y);
          auto [z, w] = g.factor(lambda, unit_least[j]);
          p.rules.squares.push_back({{pullback_edge_name(g, x, i), pullback_edge_name(g, y, j)},
                                     {pullback_edge_name(g, pg.key(z), j), pullback_edge_name(g, pg.key(w), i)}});
        }
      }
    }
  }
  PullbackGraph out{validate(p), {}};
  for (EdgeId e = 0; e < out.graph.edge_count(); ++e) out.edge_keys.push_back(key_of_name.at(out.graph.edge(e).name));
  return out;
}

IsoCheck verify_pullback_iso(const PGraph& pg, const PullbackGraph& pb, std::int64_t depth) {
  const KGraph& g = pg.graph();
  const KGraph& h = pb.graph;
  IsoCheck out;
  auto fail = [&](const std::string& w) {
    out.ok = false;
    out.witness = w;
    return out;
  };
  std::map<EdgeId, EdgeId> edge_image;
  auto map_edge = [&](EdgeId e) -> std::optional<EdgeId> {
    auto it = edge_image.find(e);
    if (it != edge_image.end()) return it->second;
    Path key = pg.key(g.edge_path(e));
    auto image = h.find_edge(pullback_edge_name(g, key, g.edge(e).color));
    if (image) edge_image.emplace(e, *image);
    return image;
  };

  for (const Degree& n : degrees_in_box(g.k(), depth)) {
    for (VertexId v : pg.objects()) {
      auto hv = h.find_vertex(g.vertex_name(v));
      if (!hv) return fail("vertex " + g.vertex_name(v) + " is missing from the pullback");
      std::vector<Path> source_paths = g.paths(v, n);
      std::set<std::vector<EdgeId>> images;
      for (const Path& lambda : source_paths) {
        ++out.paths_checked;
        Path phi = h.vertex_path(*hv);
        if (!lambda.is_vertex()) {
          std::vector<EdgeId> mapped;
          for (EdgeId e : lambda.edges) {
            auto m = map_edge(e);
            if (!m) return fail("edge " + g.edge(e).name + " has no image");
            mapped.push_back(*m);
          }
          try {
            phi = h.normalize(mapped);
          } catch (const std::invalid_argument& ex) {
            return fail("image of " + g.path_string(lambda) + " is not a path: " + ex.what());
          }
        }
        if (phi.degree != lambda.degree || phi.range != *hv ||
            h.vertex_name(phi.source) != g.vertex_name(lambda.source)) {
          return fail("image of " + g.path_string(lambda) + " has the wrong degree or endpoints");
        }
        Path composite = g.vertex_path(lambda.range);
        for (EdgeId pe : phi.edges) composite = g.compose(composite, pb.edge_keys.at(pe));
        if (pg.key(composite) != pg.key(lambda)) {
          return fail("image of " + g.path_string(lambda) + " lies over the class of " +
                      g.path_string(composite));
        }
        if (!images.insert(phi.edges).second) {
          return fail("two paths of degree " + n.to_string() + " at " + g.vertex_name(v) + " share an image");
        }
        if (n.max_entry() <= 1) out.table.emplace_back(g.path_string(lambda), h.path_string(phi));
      }
      std::size_t target = h.paths(*hv, n).size();
      if (target != source_paths.size()) {
        return fail("pullback has " + std::to_string(target) + " paths of degree " + n.to_string() + " at " +
                    g.vertex_name(v) + ", expected " + std::to_string(source_paths.size()));
      }
    }
  }
  return out;
}

IsoCheck check_edge_isomorphism(const KGraph& a, const KGraph& b,
                                const std::function<std::string(EdgeId)>& edge_map) {
  IsoCheck out;
  auto fail = [&](const std::string& w) {
    out.ok = false;
    out.witness = w;
    return out;
  };
  if (a.k() != b.k() || a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) {
    return fail("graphs have different sizes");
  }
  std::vector<std::optional<VertexId>> vmap(a.vertex_count());
  std::vector<EdgeId> emap;
  std::set<EdgeId> used;
  auto bind = [&](VertexId x, VertexId y) {
    if (vmap[x] && *vmap[x] != y) return false;
    vmap[x] = y;
    return true;
  };
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    auto f = b.find_edge(edge_map(e));
    if (!f) return fail("edge " + a.edge(e).name + " maps to a missing edge");
    if (!used.insert(*f).second) return fail("edge map is not injective at " + a.edge(e).name);
    if (a.edge(e).color != b.edge(*f).color) return fail("edge " + a.edge(e).name + " changes color");
    if (!bind(a.edge(e).range, b.edge(*f).range) || !bind(a.edge(e).source, b.edge(*f).source)) {
      return fail("edge " + a.edge(e).name + " breaks the vertex map");
    }
    emap.push_back(*f);
  }
  std::set<VertexId> vimage;
  for (const auto& v : vmap) {
    if (!v || !vimage.insert(*v).second) return fail("vertex map is not a bijection");
  }
  for (EdgeId x = 0; x < a.edge_count(); ++x) {
    for (EdgeId y : a.edges_at(a.edge(x).source)) {
      auto sa = a.swap(x, y);
      if (!sa) continue;
      auto sb = b.swap(emap[x], emap[y]);
      if (!sb || sb->first != emap[sa->first] || sb->second != emap[sa->second]) {
        return fail("square at " + a.edge(x).name + "." + a.edge(y).name + " is not preserved");
      }
    }
    ++out.paths_checked;
  }
  return out;
}

}  // namespace kgprim
