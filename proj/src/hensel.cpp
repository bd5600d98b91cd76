#include "repdigit/hensel.hpp"

#include <algorithm>
#include <stdexcept>

namespace repdigit {
namespace {

Natural power(unsigned p, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return Natural(r);
}

Natural inverse_mod(const Natural& a, const Natural& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.mpz().get_mpz_t(), m.mpz().get_mpz_t()) == 0)
    throw std::domain_error("no inverse of " + a.str() + " modulo " + m.str());
  return Natural(r);
}

Natural sub_mod(const Natural& a, const Natural& b, const Natural& m) { return (a + m - b % m) % m; }

// One root modulo 5^e by Newton lifting: z <- z - (z^2 - a) / (2z).
Natural lift_odd(const Natural& a, unsigned p, unsigned e, Natural z) {
  for (unsigned k = 2; k <= e; ++k) {
    const Natural m = power(p, k);
    const Natural residual = sub_mod(z * z % m, a % m, m);
    const Natural correction = residual * inverse_mod(z * 2 % m, m) % m;
    z = sub_mod(z, correction, m);
  }
  return z;
}

// One root modulo 2^e (e >= 3). If z^2 = a mod 2^k but not mod 2^(k+1),
// then (z + 2^(k-1))^2 = a mod 2^(k+1).
Natural lift_two(const Natural& a, unsigned e, Natural z) {
  for (unsigned k = 3; k < e; ++k) {
    const Natural next = power(2, k + 1);
    if ((z * z) % next != a % next) z = (z + power(2, k - 1)) % next;
  }
  return z;
}

}  // namespace

std::vector<LiftedRoot> sqrt_mod_prime_power(const Natural& a, unsigned p, unsigned e) {
  if (e == 0) throw std::domain_error("sqrt_mod_prime_power: exponent must be positive");
  const Natural m = power(p, e);
  std::vector<Natural> roots;
  if (p == 5) {
    const std::uint64_t base = a.mod(5);
    if (base != 1 && base != 4)
      throw std::domain_error("no square root: z^2 = " + std::to_string(base) + " (mod 5) has no nonzero solution");
    const Natural z1 = lift_odd(a, 5, e, Natural(base == 1 ? 1 : 2));
    roots = {z1, (m - z1) % m};
  } else if (p == 2) {
    if (e == 1) {
      if (a.mod(2) != 1) throw std::domain_error("no square root: z^2 = " + std::to_string(a.mod(2)) + " (mod 2) with z odd");
      roots = {Natural(1)};
    } else if (e == 2) {
      if (a.mod(4) != 1) throw std::domain_error("no square root: z^2 = " + std::to_string(a.mod(4)) + " (mod 4) with z odd");
      roots = {Natural(1), Natural(3)};
    } else {
      if (a.mod(8) != 1) throw std::domain_error("no square root: z^2 = " + std::to_string(a.mod(8)) + " (mod 8) with z odd");
      const Natural z = lift_two(a, e, Natural(1));
      const Natural half = power(2, e - 1);
      const Natural neg = (m - z) % m;
      roots = {z, neg, (z + half) % m, (neg + half) % m};
    }
  } else {
    throw std::domain_error("sqrt_mod_prime_power: only p = 2 and p = 5 are supported");
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::vector<LiftedRoot> out;
  for (Natural& z : roots) {
    if ((z * z) % m != a % m) throw std::logic_error("lifted root failed verification");
    out.push_back({p, e, m, a % m, std::move(z)});
  }
  return out;
}

Natural eights_then_nine(unsigned e) { return inverse_mod(Natural(9), Natural::pow10(e)); }

std::vector<Natural> roots_ending_eights(unsigned e) {
  if (e < 2) throw std::domain_error("roots_ending_eights: need at least two digits");
  const Natural m2 = power(2, e), m5 = power(5, e), m = m2 * m5;
  const Natural target = eights_then_nine(e);
  // CRT: z = r2 + m2 * ((r5 - r2) * m2^-1 mod m5)
  const Natural m2_inv = inverse_mod(m2 % m5, m5);
  std::vector<Natural> out;
  for (const LiftedRoot& r2 : sqrt_mod_prime_power(target % m2, 2, e)) {
    for (const LiftedRoot& r5 : sqrt_mod_prime_power(target % m5, 5, e)) {
      const Natural t = sub_mod(r5.root, r2.root % m5, m5) * m2_inv % m5;
      out.push_back((r2.root + m2 * t) % m);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Natural square_ending_eights(unsigned e) { return roots_ending_eights(e).front(); }

Refutation refute_ballew_weger(unsigned eights) {
  Refutation r;
  r.eights = eights;
  r.z = square_ending_eights(eights + 1);
  r.square = r.z * r.z;
  const std::string digits = r.square.str();
  const std::size_t want = eights + 1;
  r.trailing = digits.size() >= want ? digits.substr(digits.size() - want) : digits;
  r.verified = r.trailing == std::string(eights, '8') + "9";
  return r;
}

}  // namespace repdigit
