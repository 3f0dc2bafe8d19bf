#include "kgprim/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace kgprim {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  if (b == 0) throw std::domain_error("division by zero");
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

namespace {

// a - q * b, throwing on int64 overflow.
std::int64_t sub_mul(std::int64_t a, std::int64_t q, std::int64_t b) {
  std::int64_t prod;
  std::int64_t out;
  if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out)) {
    throw std::overflow_error("lattice arithmetic overflow");
  }
  return out;
}

void axpy_row(std::vector<std::int64_t>& dst, const std::vector<std::int64_t>& src, std::int64_t q) {
  for (std::size_t j = 0; j < dst.size(); ++j) dst[j] = sub_mul(dst[j], q, src[j]);
}

void axpy_col(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t q) {
  for (auto& row : m) row[dst] = sub_mul(row[dst], q, row[src]);
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

IntMatrix identity(std::size_t n) {
  IntMatrix id(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace

IntMatrix hermite_normal_form(const IntMatrix& rows, std::size_t columns) {
  IntMatrix m;
  for (const auto& r : rows) {
    if (r.size() != columns) throw std::invalid_argument("hermite_normal_form: ragged input");
    m.push_back(r);
  }
  std::size_t top = 0;
  for (std::size_t c = 0; c < columns && top < m.size(); ++c) {
    while (true) {
      std::size_t best = m.size();
      for (std::size_t i = top; i < m.size(); ++i) {
        if (m[i][c] != 0 && (best == m.size() || std::llabs(m[i][c]) < std::llabs(m[best][c]))) best = i;
      }
      if (best == m.size()) break;
      std::swap(m[top], m[best]);
      bool cleared = true;
      for (std::size_t i = top + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        axpy_row(m[i], m[top], floor_div(m[i][c], m[top][c]));
        if (m[i][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (m[top][c] == 0) continue;
    if (m[top][c] < 0) {
      for (auto& x : m[top]) x = -x;
    }
    for (std::size_t i = 0; i < top; ++i) axpy_row(m[i], m[top], floor_div(m[i][c], m[top][c]));
    ++top;
  }
  m.resize(top);
  return m;
}

std::vector<std::int64_t> SmithForm::diagonal() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < S.size() && i < (S.empty() ? 0 : S[0].size()); ++i) out.push_back(S[i][i]);
  return out;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  std::size_t m = a.size();
  std::size_t n = m == 0 ? 0 : a[0].size();
  SmithForm f{identity(m), identity(n), a};
  IntMatrix& s = f.S;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (s[i][j] != 0 && (pi == m || std::llabs(s[i][j]) < std::llabs(s[pi][pj]))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == m) break;
    std::swap(s[t], s[pi]);
    std::swap(f.U[t], f.U[pi]);
    swap_cols(s, t, pj);
    swap_cols(f.V, t, pj);
    while (true) {
      bool done = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s[i][t] == 0) continue;
        std::int64_t q = floor_div(s[i][t], s[t][t]);
        axpy_row(s[i], s[t], q);
        axpy_row(f.U[i], f.U[t], q);
        if (s[i][t] != 0) done = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s[t][j] == 0) continue;
        std::int64_t q = floor_div(s[t][j], s[t][t]);
        axpy_col(s, j, t, q);
        axpy_col(f.V, j, t, q);
        if (s[t][j] != 0) done = false;
      }
      if (!done) {
        // Move the smallest remainder in row/column t onto the pivot.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (s[i][t] != 0 && std::llabs(s[i][t]) < std::llabs(s[bi][bj])) { bi = i; bj = t; }
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (s[t][j] != 0 && std::llabs(s[t][j]) < std::llabs(s[bi][bj])) { bi = t; bj = j; }
        }
        if (bi != t) {
          std::swap(s[t], s[bi]);
          std::swap(f.U[t], f.U[bi]);
        }
        if (bj != t) {
          swap_cols(s, t, bj);
          swap_cols(f.V, t, bj);
        }
        continue;
      }
      // Divisibility: fold an offending row into row t and go again.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (s[i][j] % s[t][t] != 0) {
            axpy_row(s[t], s[i], -1);
            axpy_row(f.U[t], f.U[i], -1);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (s[t][t] < 0) {
      for (auto& x : s[t]) x = -x;
      for (auto& x : f.U[t]) x = -x;
    }
  }
  return f;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  std::size_t inner = b.size();
  std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix out(a.size(), std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("multiply: dimension mismatch");
    for (std::size_t l = 0; l < inner; ++l) {
      for (std::size_t j = 0; j < cols; ++j) out[i][j] = sub_mul(out[i][j], -a[i][l], b[l][j]);
    }
  }
  return out;
}

IntLattice::IntLattice(std::size_t k, const std::vector<DegreeDelta>& generators) : k_(k) {
  IntMatrix rows;
  for (const auto& g : generators) {
    if (g.rank() != k) throw std::invalid_argument("lattice generator has the wrong rank");
    rows.push_back(g.entries());
  }
  for (auto& row : hermite_normal_form(rows, k)) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    pivots_.push_back(p);
    basis_.emplace_back(std::move(row));
  }
}

std::optional<std::vector<std::int64_t>> IntLattice::coordinates(const DegreeDelta& h) const {
  if (h.rank() != k_) throw std::invalid_argument("coordinates: rank mismatch");
  std::vector<std::int64_t> v = h.entries();
  std::vector<std::int64_t> coeffs;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    std::size_t p = pivots_[i];
    for (std::size_t c = (i == 0 ? 0 : pivots_[i - 1] + 1); c < p; ++c) {
      if (v[c] != 0) return std::nullopt;
    }
    std::int64_t pivot = basis_[i][p];
    if (v[p] % pivot != 0) return std::nullopt;
    coeffs.push_back(v[p] / pivot);
    axpy_row(v, basis_[i].entries(), coeffs.back());
  }
  if (!std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; })) return std::nullopt;
  return coeffs;
}

bool IntLattice::contains(const DegreeDelta& h) const { return coordinates(h).has_value(); }

DegreeDelta IntLattice::reduce(const DegreeDelta& h) const {
  if (h.rank() != k_) throw std::invalid_argument("reduce: rank mismatch");
  std::vector<std::int64_t> v = h.entries();
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    axpy_row(v, basis_[i].entries(), floor_div(v[pivots_[i]], basis_[i][pivots_[i]]));
  }
  return DegreeDelta(std::move(v));
}

}  // namespace kgprim
