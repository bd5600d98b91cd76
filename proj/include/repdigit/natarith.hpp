#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace repdigit {

class Natural;

// Signed arbitrary-precision integer. Arithmetic is exact; division truncates
// toward zero like the built-in types, `floor_mod` gives the nonnegative residue.
class Integer {
 public:
  Integer() = default;
  Integer(long long v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  explicit Integer(mpz_class v) : v_(std::move(v)) {}
  static Integer parse(std::string_view decimal);

  const mpz_class& mpz() const { return v_; }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  Integer abs() const { return Integer(mpz_class(::abs(v_))); }
  std::string str() const { return v_.get_str(10); }
  std::optional<std::int64_t> to_i64() const;
  std::uint64_t floor_mod(std::uint64_t m) const;

  Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
  Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
  Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }

  friend Integer operator+(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ + b.v_)); }
  friend Integer operator-(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ - b.v_)); }
  friend Integer operator*(const Integer& a, const Integer& b) { return Integer(mpz_class(a.v_ * b.v_)); }
  friend Integer operator/(const Integer& a, const Integer& b);
  friend Integer operator%(const Integer& a, const Integer& b);
  friend Integer operator-(const Integer& a) { return Integer(mpz_class(-a.v_)); }
  friend bool operator==(const Integer& a, const Integer& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }
  friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.str(); }

 private:
  mpz_class v_;
};

// Nonnegative arbitrary-precision integer. Construction from a negative value
// and subtraction that would go below zero throw std::domain_error.
class Natural {
 public:
  Natural() = default;
  Natural(long long v);  // NOLINT(google-explicit-constructor)
  explicit Natural(const Integer& v);
  explicit Natural(mpz_class v);
  static Natural parse(std::string_view decimal);
  static Natural pow10(unsigned long e);

  operator Integer() const { return Integer(v_); }  // NOLINT(google-explicit-constructor)
  const mpz_class& mpz() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  std::string str() const { return v_.get_str(10); }
  std::size_t digit_count() const;
  std::optional<std::uint64_t> to_u64() const;
  std::uint64_t mod(std::uint64_t m) const;

  Natural& operator+=(const Natural& o) { v_ += o.v_; return *this; }
  Natural& operator*=(const Natural& o) { v_ *= o.v_; return *this; }

  friend Natural operator+(const Natural& a, const Natural& b) { return Natural(mpz_class(a.v_ + b.v_)); }
  friend Natural operator-(const Natural& a, const Natural& b);
  friend Natural operator*(const Natural& a, const Natural& b) { return Natural(mpz_class(a.v_ * b.v_)); }
  friend Natural operator/(const Natural& a, const Natural& b);
  friend Natural operator%(const Natural& a, const Natural& b);
  friend bool operator==(const Natural& a, const Natural& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }
  friend std::ostream& operator<<(std::ostream& os, const Natural& a) { return os << a.str(); }

 private:
  mpz_class v_;
};

class Digit {
 public:
  explicit Digit(int value);
  int value() const { return value_; }
  friend bool operator==(Digit, Digit) = default;

 private:
  int value_;
};

class Block {
 public:
  explicit Block(int value);
  int value() const { return value_; }
  friend bool operator==(Block, Block) = default;

 private:
  int value_;
};

Natural triangular(const Natural& k);
Natural repdigit_value(Digit d, unsigned i);
Natural repblock_value(Block c, unsigned i);
// 1 + 8 * repdigit_value(d, i); a perfect square exactly when the repdigit is triangular.
Natural discriminant(Digit d, unsigned i);
Natural block_discriminant(Block c, unsigned i);

// floor(sqrt(n)) by integer Newton iteration.
Natural isqrt(const Natural& n);
std::optional<Natural> is_perfect_square(const Natural& n);
Natural mod_pow(const Natural& base, const Natural& exp, const Natural& m);

}  // namespace repdigit
