#include "kgprim/catalogue.hpp"

#include <algorithm>
#include <stdexcept>

#include "kgprim/lattice.hpp"

namespace kgprim {

Phase wrap_phase(const Phase& x) {
  long long whole = x.numerator() / x.denominator();
  if (x.numerator() < 0 && x.numerator() % x.denominator() != 0) --whole;
  return x - Phase(whole);
}

Phase parse_phase(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      long long n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return wrap_phase(Phase(n));
    }
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    long long n = std::stoll(num, &used);
    if (used != num.size()) throw std::invalid_argument(text);
    long long d = std::stoll(den, &used);
    if (used != den.size() || d == 0) throw std::invalid_argument(text);
    return wrap_phase(Phase(n, d));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad phase '" + text + "': expected an integer or p/q");
  }
}

std::string phase_string(const Phase& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

Phase character_value(const PerGroup& per, const Character& gamma, const DegreeDelta& h) {
  if (gamma.phases.size() != per.rank()) throw std::invalid_argument("character has the wrong number of phases");
  auto coeffs = per.lattice.coordinates(h);
  if (!coeffs) throw std::invalid_argument(h.to_string() + " is not in Per");
  Phase out(0);
  for (std::size_t i = 0; i < coeffs->size(); ++i) out += Phase((*coeffs)[i]) * gamma.phases[i];
  return wrap_phase(out);
}

Phase lift_value(const CharacterLift& z, const DegreeDelta& h) {
  if (z.z.size() != h.rank()) throw std::invalid_argument("lift and vector have different ranks");
  Phase out(0);
  for (std::size_t i = 0; i < h.rank(); ++i) out += Phase(h[i]) * z.z[i];
  return wrap_phase(out);
}

CharacterLift character_lift(const PerGroup& per, const Character& gamma) {
  std::size_t k = per.k();
  std::size_t r = per.rank();
  if (gamma.phases.size() != r) throw std::invalid_argument("character has the wrong number of phases");
  CharacterLift out{std::vector<Phase>(k, Phase(0))};
  if (r == 0) return out;
  IntMatrix basis;
  for (const auto& b : per.basis()) basis.push_back(b.entries());
  SmithForm f = smith_normal_form(basis);
  // B z = t with B = U^-1 S V^-1: put z = V y and solve S y = U t.
  std::vector<Phase> y(k, Phase(0));
  for (std::size_t i = 0; i < r; ++i) {
    Phase ut(0);
    for (std::size_t j = 0; j < r; ++j) ut += Phase(f.U[i][j]) * gamma.phases[j];
    if (f.S[i][i] == 0) throw std::logic_error("Per basis is not independent");
    y[i] = ut / Phase(f.S[i][i]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    Phase zi(0);
    for (std::size_t j = 0; j < k; ++j) zi += Phase(f.V[i][j]) * y[j];
    out.z[i] = wrap_phase(zi);
  }
  return out;
}

std::vector<Character> sample_characters(const PerGroup& per, std::size_t count) {
  static const std::vector<Phase> kPool = {Phase(0),    Phase(1, 3), Phase(1, 2), Phase(1, 4), Phase(2, 5),
                                           Phase(3, 7), Phase(5, 8), Phase(1, 6), Phase(4, 9), Phase(7, 11)};
  std::size_t r = per.rank();
  if (r == 0) return {Character{}};
  count = std::min(count, kPool.size());
  std::vector<Character> out;
  for (std::size_t s = 0; s < count; ++s) {
    Character c;
    for (std::size_t i = 0; i < r; ++i) c.phases.push_back(kPool[(s + i) % kPool.size()]);
    out.push_back(std::move(c));
  }
  return out;
}

std::string dual_description(std::size_t rank) {
  if (rank == 0) return "point";
  if (rank == 1) return "circle";
  return "torus T^" + std::to_string(rank);
}

TailAnalysis::TailAnalysis(const KGraph& g, VertexSet tail, std::int64_t bound)
    : parent_(g),
      tail_(std::move(tail)),
      sub_(tail_subgraph(g, tail_)),
      periodicity_(std::make_unique<Periodicity>(sub_.graph)),
      per_(periodicity_->per_group(bound)) {}

std::vector<CatalogueEntry> catalogue(const KGraph& g, std::int64_t bound) {
  std::vector<CatalogueEntry> out;
  for (const VertexSet& t : maximal_tails(g)) {
    TailAnalysis a(g, t, bound);
    out.push_back({t, a.per(), dual_description(a.per().rank())});
  }
  return out;
}

IdealPresentation ideal_presentation(const TailAnalysis& tail, const Character& gamma,
                                     const VertexSet& hereditary) {
  const KGraph& parent = tail.parent();
  const KGraph& g = tail.graph();
  const PerGroup& per = tail.per();
  if (gamma.phases.size() != per.rank()) throw std::invalid_argument("character has the wrong number of phases");
  IdealPresentation out;
  for (VertexId v = 0; v < parent.vertex_count(); ++v) {
    if (!std::binary_search(tail.tail().begin(), tail.tail().end(), v)) out.vertex_generators.push_back(v);
  }
  for (VertexId v : hereditary) {
    for (std::size_t i = 0; i < per.rank(); ++i) {
      const DegreeDelta& h = per.basis()[i];
      for (const Path& lambda : g.paths(v, h.plus())) {
        auto nu = tail.periodicity().partner(lambda, h.minus());
        if (!nu) {
          throw std::runtime_error("no partner for " + g.path_string(lambda) + " in degree " +
                                   h.minus().to_string() + " although its range is certified");
        }
        out.relations.push_back(
            {tail.sub().lift(parent, lambda), tail.sub().lift(parent, *nu), h, gamma.phases[i]});
      }
    }
  }
  return out;
}

bool is_aperiodic_tail(const KGraph& tail_graph, std::int64_t bound) {
  return Periodicity(tail_graph).per_group(bound).rank() == 0;
}

PrimitivityVerdict is_primitive(const KGraph& g, std::int64_t bound) {
  PrimitivityVerdict out;
  VertexSet all;
  for (VertexId v = 0; v < g.vertex_count(); ++v) all.push_back(v);
  auto check = check_maximal_tail(g, all);
  out.maximal_tail = check.ok;
  if (!check.ok) {
    out.reason = std::string("vertex set is not a maximal tail: condition (") + check.condition + ") " + check.witness;
    return out;
  }
  PerGroup per = Periodicity(g).per_group(bound);
  out.per_rank = per.rank();
  out.aperiodic = per.rank() == 0;
  out.primitive = *out.aperiodic;
  if (out.primitive) {
    out.reason = "vertex set is a maximal tail and Per is trivial up to bound " + std::to_string(bound);
  } else {
    out.reason = "periodic: Per has rank " + std::to_string(per.rank()) + ", generated by";
    for (const auto& b : per.basis()) out.reason += " " + b.to_string();
  }
  return out;
}

}  // namespace kgprim
