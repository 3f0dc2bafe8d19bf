// lattice.hpp - subgroups of Z^k in Hermite normal form, Smith normal form.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgprim/degree.hpp"

namespace kgprim {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Row-style HNF of the row span of `rows`: nonzero rows only, strictly
// increasing pivot columns, positive pivots, entries above each pivot reduced
// into [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& rows, std::size_t columns);

// U * A * V = S with U, V unimodular, S diagonal and s_i | s_{i+1}.
struct SmithForm {
  IntMatrix U;
  IntMatrix V;
  IntMatrix S;
  std::vector<std::int64_t> diagonal() const;
};
SmithForm smith_normal_form(const IntMatrix& a);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(std::size_t k) : k_(k) {}
  IntLattice(std::size_t k, const std::vector<DegreeDelta>& generators);

  std::size_t k() const noexcept { return k_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<DegreeDelta>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const DegreeDelta& h) const;
  // Integer coefficients of h in the basis; nullopt if h is not a member.
  std::optional<std::vector<std::int64_t>> coordinates(const DegreeDelta& h) const;
  // Canonical coset representative: each pivot coordinate lands in [0, pivot).
  DegreeDelta reduce(const DegreeDelta& h) const;
  bool same_coset(const DegreeDelta& a, const DegreeDelta& b) const {
    return reduce(a) == reduce(b);
  }

  bool operator==(const IntLattice&) const = default;

 private:
  std::size_t k_ = 0;
  std::vector<DegreeDelta> basis_;
  std::vector<std::size_t> pivots_;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b);

}  // namespace kgprim
