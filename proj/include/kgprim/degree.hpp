// degree.hpp - multidegrees in N^k and their differences in Z^k.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace kgprim {

class DegreeDelta;

// An element of N^k. Arithmetic that would leave N^k throws std::domain_error.
class Degree {
 public:
  Degree() = default;
  explicit Degree(std::size_t k) : entries_(k, 0) {}
  Degree(std::initializer_list<std::int64_t> entries);
  explicit Degree(std::vector<std::int64_t> entries);

  static Degree unit(std::size_t k, std::size_t color);
  static Degree diagonal(std::size_t k, std::int64_t n);

  std::size_t rank() const noexcept { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<std::int64_t>& entries() const noexcept { return entries_; }

  bool is_zero() const noexcept;
  std::int64_t total() const noexcept;     // |n|_1
  std::int64_t max_entry() const noexcept;  // |n|_inf

  // Coordinatewise order.
  bool le(const Degree& other) const;

  Degree operator+(const Degree& other) const;
  // Requires other.le(*this).
  Degree operator-(const Degree& other) const;
  Degree scaled(std::int64_t factor) const;

  DegreeDelta delta() const;

  friend Degree join(const Degree& a, const Degree& b);
  friend Degree meet(const Degree& a, const Degree& b);

  // Lexicographic on entries; used for containers only.
  auto operator<=>(const Degree&) const = default;
  bool operator==(const Degree&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> entries_;
};

Degree join(const Degree& a, const Degree& b);
Degree meet(const Degree& a, const Degree& b);

// The reporting order on degrees: total degree first, then lexicographic.
bool degree_less(const Degree& a, const Degree& b);

// All n in N^k with |n|_inf <= bound, in degree_less order.
std::vector<Degree> degrees_in_box(std::size_t k, std::int64_t bound);
// All n in N^k with n <= top, in degree_less order.
std::vector<Degree> degrees_below(const Degree& top);

// An element of Z^k.
class DegreeDelta {
 public:
  DegreeDelta() = default;
  explicit DegreeDelta(std::size_t k) : entries_(k, 0) {}
  DegreeDelta(std::initializer_list<std::int64_t> entries);
  explicit DegreeDelta(std::vector<std::int64_t> entries);

  std::size_t rank() const noexcept { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<std::int64_t>& entries() const noexcept { return entries_; }

  bool is_zero() const noexcept;
  std::int64_t max_abs() const noexcept;

  // h = plus() - minus() with plus() meet minus() = 0.
  Degree plus() const;
  Degree minus() const;

  DegreeDelta operator+(const DegreeDelta& other) const;
  DegreeDelta operator-(const DegreeDelta& other) const;
  DegreeDelta operator-() const;

  auto operator<=>(const DegreeDelta&) const = default;
  bool operator==(const DegreeDelta&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> entries_;
};

}  // namespace kgprim
