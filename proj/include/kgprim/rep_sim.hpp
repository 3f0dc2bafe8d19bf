// rep_sim.hpp - finite truncation of the representation on the shift-tail
// class of a lasso, twisted by a point z of the k-torus.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgprim/catalogue.hpp"
#include "kgprim/kgraph.hpp"
#include "kgprim/lasso.hpp"

namespace kgprim {

// The infinite path lambda·sigma^m(x) for the evaluator's base lasso x.
struct TailClassAddress {
  Path lambda;
  Degree m;
};

struct Image {
  enum class Kind { kZero, kBasis, kOutside };
  Kind kind = Kind::kZero;
  std::size_t index = 0;
  Phase phase{0};  // coefficient exp(2*pi*i*phase)
};

using SparseVector = std::map<std::size_t, std::complex<double>>;

class RepEvaluator {
 public:
  // Basis: distinct points lambda·sigma^m(x) with |m|_inf <= M and
  // |d(lambda)|_inf <= L. Throws std::invalid_argument if L does not cover
  // the prefix degree of x.
  RepEvaluator(const KGraph& g, LassoPath x, CharacterLift z, std::int64_t L, std::int64_t M);

  const KGraph& graph() const noexcept { return g_; }
  const LassoPath& base() const noexcept { return x_; }
  const CharacterLift& lift() const noexcept { return z_; }
  std::size_t dimension() const noexcept { return points_.size(); }
  const std::vector<TailClassAddress>& addresses() const noexcept { return addresses_; }
  const std::vector<LassoPath>& points() const noexcept { return points_; }

  // t_mu and t_mu^* on a basis vector, computed directly.
  Image act(const Path& mu, std::size_t b) const;
  Image act_adjoint(const Path& mu, std::size_t b) const;

  // Tabulated generators: vertices, edges, and every path of degree e_i + e_j.
  std::vector<Path> generators;
  std::unordered_map<Path, std::size_t, PathHash> generator_index;
  std::vector<std::vector<Image>> action;   // [generator][basis]
  std::vector<std::vector<Image>> adjoint;  // [generator][basis]

  std::size_t generator(const Path& mu) const { return generator_index.at(mu); }
  // nullopt when some image leaves the truncation.
  std::optional<SparseVector> apply(std::size_t gen, const SparseVector& v) const;
  std::optional<SparseVector> apply_adjoint(std::size_t gen, const SparseVector& v) const;
  std::optional<SparseVector> apply_path(const Path& mu, const SparseVector& v) const;

  SparseVector unit(std::size_t b) const { return SparseVector{{b, 1.0}}; }

 private:
  std::optional<std::size_t> find(const LassoPath& y) const;
  Path key(const LassoPath& y) const;

  const KGraph& g_;
  LassoPath x_;
  CharacterLift z_;
  Degree key_degree_;
  std::vector<TailClassAddress> addresses_;
  std::vector<LassoPath> points_;
  std::unordered_map<Path, std::size_t, PathHash> by_key_;
};

std::complex<double> phase_value(const Phase& p);
double norm(const SparseVector& v);
SparseVector subtract(const SparseVector& a, const SparseVector& b);
SparseVector scaled(const SparseVector& a, std::complex<double> c);

struct CkReport {
  double ck1 = 0;  // vertex projections: t_v t_w = delta_vw t_v
  double ck2 = 0;  // t_xi t_eta = t_{xi eta}
  double ck3 = 0;  // t_xi^* t_xi = t_{s(xi)}
  double ck4 = 0;  // t_v = sum_{xi in vΛ^{e_i}} t_xi t_xi^*
  std::size_t checks = 0;
  std::size_t skipped = 0;  // boundary cases with an image outside the truncation
  double max_deviation() const { return std::max(std::max(ck1, ck2), std::max(ck3, ck4)); }
};

// kComplex evaluates in complex doubles; kExact keeps coefficients as
// formal sums of rational phases, so exact relations give deviation 0.
enum class CkMode { kComplex, kExact };

CkReport check_ck_relations(const RepEvaluator& rep, CkMode mode = CkMode::kComplex);

struct IdealActionReport {
  double relation_norm_max = 0;  // max |(t_mu - gamma t_nu) xi_b|
  double vertex_generator_max = 0;
  std::size_t relations = 0;
  std::size_t vectors_checked = 0;
};

// Throws std::invalid_argument if the base lasso leaves `tail` (ids of the
// evaluator's graph).
IdealActionReport check_ideal_action(const RepEvaluator& rep, const IdealPresentation& presentation,
                                     const VertexSet& tail);

}  // namespace kgprim
