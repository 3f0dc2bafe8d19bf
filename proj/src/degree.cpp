#include "kgprim/degree.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kgprim {

namespace {

void require_same_rank(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("degree rank mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
  }
}

std::string join_entries(const std::vector<std::int64_t>& entries) {
  std::string out = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(entries[i]);
  }
  return out + ")";
}

}  // namespace

Degree::Degree(std::initializer_list<std::int64_t> entries)
    : Degree(std::vector<std::int64_t>(entries)) {}

Degree::Degree(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
  for (auto e : entries_) {
    if (e < 0) throw std::domain_error("negative entry in degree");
  }
}

Degree Degree::unit(std::size_t k, std::size_t color) {
  Degree d(k);
  d.entries_.at(color) = 1;
  return d;
}

Degree Degree::diagonal(std::size_t k, std::int64_t n) {
  return Degree(std::vector<std::int64_t>(k, n));
}

bool Degree::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](std::int64_t e) { return e == 0; });
}

std::int64_t Degree::total() const noexcept {
  std::int64_t sum = 0;
  for (auto e : entries_) sum += e;
  return sum;
}

std::int64_t Degree::max_entry() const noexcept {
  std::int64_t m = 0;
  for (auto e : entries_) m = std::max(m, e);
  return m;
}

bool Degree::le(const Degree& other) const {
  require_same_rank(rank(), other.rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    if (entries_[i] > other.entries_[i]) return false;
  }
  return true;
}

Degree Degree::operator+(const Degree& other) const {
  require_same_rank(rank(), other.rank());
  Degree out(*this);
  for (std::size_t i = 0; i < rank(); ++i) out.entries_[i] += other.entries_[i];
  return out;
}

Degree Degree::operator-(const Degree& other) const {
  if (!other.le(*this)) {
    throw std::domain_error("degree subtraction leaves N^k: " + to_string() +
                            " - " + other.to_string());
  }
  Degree out(*this);
  for (std::size_t i = 0; i < rank(); ++i) out.entries_[i] -= other.entries_[i];
  return out;
}

Degree Degree::scaled(std::int64_t factor) const {
  if (factor < 0) throw std::domain_error("negative scale factor");
  Degree out(*this);
  for (auto& e : out.entries_) e *= factor;
  return out;
}

DegreeDelta Degree::delta() const { return DegreeDelta(entries_); }

std::string Degree::to_string() const { return join_entries(entries_); }

Degree join(const Degree& a, const Degree& b) {
  require_same_rank(a.rank(), b.rank());
  Degree out(a);
  for (std::size_t i = 0; i < a.rank(); ++i) {
    out.entries_[i] = std::max(a.entries_[i], b.entries_[i]);
  }
  return out;
}

Degree meet(const Degree& a, const Degree& b) {
  require_same_rank(a.rank(), b.rank());
  Degree out(a);
  for (std::size_t i = 0; i < a.rank(); ++i) {
    out.entries_[i] = std::min(a.entries_[i], b.entries_[i]);
  }
  return out;
}

bool degree_less(const Degree& a, const Degree& b) {
  if (a.total() != b.total()) return a.total() < b.total();
  return a.entries() < b.entries();
}

std::vector<Degree> degrees_below(const Degree& top) {
  std::vector<Degree> out;
  std::vector<std::int64_t> cur(top.rank(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == top.rank()) {
      out.emplace_back(cur);
      return;
    }
    for (std::int64_t v = 0; v <= top[i]; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::stable_sort(out.begin(), out.end(), degree_less);
  return out;
}

std::vector<Degree> degrees_in_box(std::size_t k, std::int64_t bound) {
  return degrees_below(Degree::diagonal(k, bound));
}

DegreeDelta::DegreeDelta(std::initializer_list<std::int64_t> entries)
    : entries_(entries) {}

DegreeDelta::DegreeDelta(std::vector<std::int64_t> entries)
    : entries_(std::move(entries)) {}

bool DegreeDelta::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](std::int64_t e) { return e == 0; });
}

std::int64_t DegreeDelta::max_abs() const noexcept {
  std::int64_t m = 0;
  for (auto e : entries_) m = std::max(m, e < 0 ? -e : e);
  return m;
}

Degree DegreeDelta::plus() const {
  std::vector<std::int64_t> out(entries_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max<std::int64_t>(entries_[i], 0);
  return Degree(std::move(out));
}

Degree DegreeDelta::minus() const {
  std::vector<std::int64_t> out(entries_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max<std::int64_t>(-entries_[i], 0);
  return Degree(std::move(out));
}

DegreeDelta DegreeDelta::operator+(const DegreeDelta& other) const {
  require_same_rank(rank(), other.rank());
  DegreeDelta out(*this);
  for (std::size_t i = 0; i < rank(); ++i) out.entries_[i] += other.entries_[i];
  return out;
}

DegreeDelta DegreeDelta::operator-(const DegreeDelta& other) const {
  require_same_rank(rank(), other.rank());
  DegreeDelta out(*this);
  for (std::size_t i = 0; i < rank(); ++i) out.entries_[i] -= other.entries_[i];
  return out;
}

DegreeDelta DegreeDelta::operator-() const {
  DegreeDelta out(*this);
  for (auto& e : out.entries_) e = -e;
  return out;
}

std::string DegreeDelta::to_string() const { return join_entries(entries_); }

}  // namespace kgprim
