#include "repdigit/natarith.hpp"

#include <stdexcept>

namespace repdigit {
namespace {

mpz_class parse_decimal(std::string_view s, bool allow_sign) {
  std::string_view digits = s;
  if (allow_sign && !digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (digits.empty()) throw std::invalid_argument("empty integer literal");
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("non-decimal integer literal: " + std::string(s));
  }
  return mpz_class(std::string(s), 10);
}

}  // namespace

Integer Integer::parse(std::string_view decimal) { return Integer(parse_decimal(decimal, true)); }

std::optional<std::int64_t> Integer::to_i64() const {
  if (!v_.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(v_.get_si());
}

std::uint64_t Integer::floor_mod(std::uint64_t m) const {
  if (m == 0) throw std::domain_error("modulus zero");
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v_.get_mpz_t(), mpz_class(static_cast<unsigned long>(m)).get_mpz_t());
  return r.get_ui();
}

Integer operator/(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return Integer(q);
}

Integer operator%(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return Integer(r);
}

Natural::Natural(long long v) : v_(static_cast<long>(v)) {
  if (v < 0) throw std::domain_error("negative value for Natural");
}

Natural::Natural(const Integer& v) : v_(v.mpz()) {
  if (sgn(v_) < 0) throw std::domain_error("negative value for Natural");
}

Natural::Natural(mpz_class v) : v_(std::move(v)) {
  if (sgn(v_) < 0) throw std::domain_error("negative value for Natural");
}

Natural Natural::parse(std::string_view decimal) { return Natural(parse_decimal(decimal, false)); }

Natural Natural::pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return Natural(r);
}

std::size_t Natural::digit_count() const { return is_zero() ? 1 : str().size(); }

std::optional<std::uint64_t> Natural::to_u64() const {
  if (!v_.fits_ulong_p()) return std::nullopt;
  return v_.get_ui();
}

std::uint64_t Natural::mod(std::uint64_t m) const {
  if (m == 0) throw std::domain_error("modulus zero");
  return mpz_fdiv_ui(v_.get_mpz_t(), m);
}

Natural operator-(const Natural& a, const Natural& b) {
  if (a < b) throw std::domain_error("Natural subtraction underflow");
  return Natural(mpz_class(a.v_ - b.v_));
}

Natural operator/(const Natural& a, const Natural& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  return Natural(mpz_class(a.v_ / b.v_));
}

Natural operator%(const Natural& a, const Natural& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  return Natural(mpz_class(a.v_ % b.v_));
}

Digit::Digit(int value) : value_(value) {
  if (value < 1 || value > 9) throw std::domain_error("digit must be in 1..9");
}

Block::Block(int value) : value_(value) {
  if (value < 10 || value > 99) throw std::domain_error("block must be in 10..99");
}

Natural triangular(const Natural& k) {
  if (k.is_zero()) throw std::domain_error("triangular: k must be positive");
  return k * (k + 1) / 2;
}

Natural repdigit_value(Digit d, unsigned i) {
  if (i == 0) throw std::domain_error("repdigit_value: i must be positive");
  const Natural numerator = Natural(d.value()) * (Natural::pow10(i) - 1);
  if (numerator.mod(9) != 0) throw std::logic_error("repdigit_value: inexact division by 9");
  return numerator / 9;
}

Natural repblock_value(Block c, unsigned i) {
  if (i == 0) throw std::domain_error("repblock_value: i must be positive");
  const Natural numerator = Natural(c.value()) * (Natural::pow10(2UL * i) - 1);
  if (numerator.mod(99) != 0) throw std::logic_error("repblock_value: inexact division by 99");
  return numerator / 99;
}

Natural discriminant(Digit d, unsigned i) { return repdigit_value(d, i) * 8 + 1; }

Natural block_discriminant(Block c, unsigned i) { return repblock_value(c, i) * 8 + 1; }

Natural isqrt(const Natural& n) {
  if (n.is_zero()) return Natural(0);
  // Start above the root; the Newton step then decreases strictly until it
  // reaches floor(sqrt(n)).
  const std::size_t bits = mpz_sizeinbase(n.mpz().get_mpz_t(), 2);
  mpz_class x = mpz_class(1) << static_cast<mp_bitcnt_t>((bits + 1) / 2);
  for (;;) {
    mpz_class y = (x + n.mpz() / x) >> 1;
    if (y >= x) break;
    x = std::move(y);
  }
  return Natural(x);
}

std::optional<Natural> is_perfect_square(const Natural& n) {
  Natural r = isqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

Natural mod_pow(const Natural& base, const Natural& exp, const Natural& m) {
  if (m < Natural(2)) throw std::domain_error("mod_pow: modulus below 2");
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.mpz().get_mpz_t(), exp.mpz().get_mpz_t(), m.mpz().get_mpz_t());
  return Natural(r);
}

}  // namespace repdigit
