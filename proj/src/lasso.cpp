#include "kgprim/lasso.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace kgprim {

namespace {

Path power(const KGraph& g, const Path& cycle, std::int64_t times) {
  Path out = g.vertex_path(cycle.source);
  for (std::int64_t i = 0; i < times; ++i) out = g.compose(out, cycle);
  return out;
}

// Smallest j with b <= d(prefix) + j * period.
std::int64_t cycles_needed(const LassoPath& x, const Degree& b) {
  std::int64_t j = 0;
  for (std::size_t i = 0; i < b.rank(); ++i) {
    std::int64_t gap = b[i] - x.prefix.degree[i];
    if (gap > 0) j = std::max(j, (gap + x.period()[i] - 1) / x.period()[i]);
  }
  return j;
}

Path unrolled(const KGraph& g, const LassoPath& x, const Degree& b) {
  return g.compose(x.prefix, power(g, x.cycle, cycles_needed(x, b)));
}

}  // namespace

LassoPath make_lasso(const KGraph& g, Path prefix, Path cycle) {
  if (cycle.range != cycle.source) throw std::invalid_argument("lasso cycle is not a cycle");
  if (prefix.source != cycle.range) throw std::invalid_argument("lasso prefix does not end at the cycle");
  if (cycle.degree.rank() != g.k()) throw std::invalid_argument("lasso cycle has the wrong rank");
  for (std::size_t i = 0; i < g.k(); ++i) {
    if (cycle.degree[i] <= 0) throw std::invalid_argument("lasso cycle degree must be positive in every color");
  }
  return LassoPath{std::move(prefix), std::move(cycle)};
}

Path infinite_segment(const KGraph& g, const LassoPath& x, const Degree& a, const Degree& b) {
  return g.segment(unrolled(g, x, b), a, b);
}

VertexId lasso_vertex(const KGraph& g, const LassoPath& x, const Degree& n) {
  return infinite_segment(g, x, n, n).range;
}

bool lasso_equal(const KGraph& g, const LassoPath& x, const LassoPath& y) {
  if (x.range() != y.range()) return false;
  Degree bound = join(x.prefix.degree, y.prefix.degree) + x.period();
  if (x.period() != y.period()) bound = bound + y.period();
  Degree zero(g.k());
  return infinite_segment(g, x, zero, bound) == infinite_segment(g, y, zero, bound);
}

LassoPath canonical(const KGraph& g, const LassoPath& x) {
  LassoPath out = x;
  std::int64_t common = 0;
  for (auto e : out.period().entries()) common = std::gcd(common, e);
  for (std::int64_t d = common; d > 1; --d) {
    if (common % d != 0) continue;
    std::vector<std::int64_t> entries = out.period().entries();
    for (auto& e : entries) e /= d;
    Path candidate = g.factor(out.cycle, Degree(entries)).first;
    if (candidate.source == candidate.range && power(g, candidate, d) == out.cycle) {
      out.cycle = candidate;
      break;
    }
  }
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i < g.k(); ++i) {
      if (out.prefix.degree[i] == 0) continue;
      Degree m = out.prefix.degree - Degree::unit(g.k(), i);
      LassoPath candidate{infinite_segment(g, out, Degree(g.k()), m),
                          infinite_segment(g, out, m, m + out.period())};
      if (candidate.cycle.source != candidate.cycle.range) continue;
      if (lasso_equal(g, candidate, out)) {
        out = std::move(candidate);
        moved = true;
      }
    }
  }
  return out;
}

LassoPath shift(const KGraph& g, const LassoPath& x, const Degree& p) {
  Path full = unrolled(g, x, p);
  LassoPath out{g.factor(full, p).second, x.cycle};
  return canonical(g, out);
}

LassoPath prepend(const KGraph& g, const Path& lambda, const LassoPath& x) {
  return LassoPath{g.compose(lambda, x.prefix), x.cycle};
}

LassoPath lasso_at(const KGraph& g, VertexId v) {
  Degree step = Degree::diagonal(g.k(), 1);
  std::map<VertexId, std::size_t> seen;
  std::vector<Path> steps;
  VertexId cur = v;
  while (!seen.count(cur)) {
    seen[cur] = steps.size();
    steps.push_back(g.paths(cur, step).front());
    cur = steps.back().source;
  }
  Path prefix = g.vertex_path(v);
  for (std::size_t i = 0; i < seen[cur]; ++i) prefix = g.compose(prefix, steps[i]);
  Path cycle = g.vertex_path(cur);
  for (std::size_t i = seen[cur]; i < steps.size(); ++i) cycle = g.compose(cycle, steps[i]);
  return canonical(g, make_lasso(g, std::move(prefix), std::move(cycle)));
}

std::string lasso_string(const KGraph& g, const LassoPath& x) {
  return g.path_string(x.prefix) + "(" + g.path_string(x.cycle) + ")^inf";
}

}  // namespace kgprim
