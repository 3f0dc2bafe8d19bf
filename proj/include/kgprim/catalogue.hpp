// catalogue.hpp - primitive-ideal labels (maximal tail, character of Per),
// character lifts, ideal presentations and the primitivity test.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "kgprim/kgraph.hpp"
#include "kgprim/periodicity.hpp"
#include "kgprim/tails.hpp"

namespace kgprim {

// A point of the circle written in turns: exp(2*pi*i*phase), phase in [0, 1).
using Phase = boost::rational<long long>;

Phase wrap_phase(const Phase& x);
Phase parse_phase(const std::string& text);  // "1/3", "0", "0.25" is rejected
std::string phase_string(const Phase& x);

struct Character {
  std::vector<Phase> phases;  // gamma(b_i) for the HNF basis b_i of Per
  bool operator==(const Character&) const = default;
};

struct CharacterLift {
  std::vector<Phase> z;  // one phase per color
  bool operator==(const CharacterLift&) const = default;
};

// gamma(h) for h in Per; throws std::invalid_argument if h is not in Per.
Phase character_value(const PerGroup& per, const Character& gamma, const DegreeDelta& h);
// z^h written as a phase: sum_i z_i h_i mod 1.
Phase lift_value(const CharacterLift& z, const DegreeDelta& h);

// Solves z^h = gamma(h) through the Smith form U B V = S of the basis.
CharacterLift character_lift(const PerGroup& per, const Character& gamma);

// `count` distinct characters (one if Per is trivial), deterministic.
std::vector<Character> sample_characters(const PerGroup& per, std::size_t count);

std::string dual_description(std::size_t rank);

// Everything computed for one maximal tail. Not copyable: the periodicity
// engine keeps a reference to the tail subgraph.
class TailAnalysis {
 public:
  TailAnalysis(const KGraph& g, VertexSet tail, std::int64_t bound);
  TailAnalysis(const TailAnalysis&) = delete;
  TailAnalysis& operator=(const TailAnalysis&) = delete;

  const KGraph& parent() const noexcept { return parent_; }
  const VertexSet& tail() const noexcept { return tail_; }
  const TailSubgraph& sub() const noexcept { return sub_; }
  const KGraph& graph() const noexcept { return sub_.graph; }
  const Periodicity& periodicity() const noexcept { return *periodicity_; }
  const PerGroup& per() const noexcept { return per_; }

 private:
  const KGraph& parent_;
  VertexSet tail_;
  TailSubgraph sub_;
  std::unique_ptr<Periodicity> periodicity_;
  PerGroup per_;
};

struct CatalogueEntry {
  VertexSet tail;
  PerGroup per;
  std::string dual;
};

std::vector<CatalogueEntry> catalogue(const KGraph& g, std::int64_t bound);

struct IdealLabel {
  VertexSet tail;
  Character character;
};

struct IdealRelation {
  Path mu;  // paths of the full graph
  Path nu;
  DegreeDelta h;  // d(mu) - d(nu), a basis vector of Per
  Phase phase;    // gamma(h)
};

struct IdealPresentation {
  VertexSet vertex_generators;  // complement of T
  std::vector<IdealRelation> relations;
};

// Relations (lambda, partner(lambda, h_-), gamma(h)) for v in H (ids of the
// tail subgraph), each basis vector h and lambda in vΛ^{h_+}. Throws
// std::runtime_error if a partner is missing.
IdealPresentation ideal_presentation(const TailAnalysis& tail, const Character& gamma,
                                     const VertexSet& hereditary);

bool is_aperiodic_tail(const KGraph& tail_graph, std::int64_t bound);

struct PrimitivityVerdict {
  bool primitive = false;
  bool maximal_tail = false;
  std::optional<bool> aperiodic;  // decided only when maximal_tail holds
  std::size_t per_rank = 0;
  std::string reason;
};

PrimitivityVerdict is_primitive(const KGraph& g, std::int64_t bound);

}  // namespace kgprim
