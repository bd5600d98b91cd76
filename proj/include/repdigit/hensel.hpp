#pragma once

#include <string>
#include <vector>

#include "repdigit/natarith.hpp"

namespace repdigit {

struct LiftedRoot {
  unsigned prime = 0;
  unsigned exponent = 0;
  Natural modulus;  // prime^exponent
  Natural target;   // a mod modulus
  Natural root;     // root^2 = target (mod modulus)
};

// All square roots of a modulo p^e for p in {2, 5}, lifted one exponent at a
// time from the base congruence. Sorted ascending. Throws std::domain_error
// when the base congruence has no solution.
std::vector<LiftedRoot> sqrt_mod_prime_power(const Natural& a, unsigned p, unsigned e);

// The residue 88...89 (e-1 eights, then 9) modulo 10^e, i.e. the inverse of 9.
Natural eights_then_nine(unsigned e);

// Every z < 10^e with z^2 = 88...89 (mod 10^e), via CRT of the 2^e and 5^e
// roots. Sorted ascending.
std::vector<Natural> roots_ending_eights(unsigned e);

// Smallest positive root from roots_ending_eights(e); e >= 2.
Natural square_ending_eights(unsigned e);

struct Refutation {
  unsigned eights = 0;
  Natural z;
  Natural square;
  std::string trailing;  // last eights+1 digits of z^2
  bool verified = false;
};

// A number whose square ends in at least `eights` digits 8 followed by a 9.
Refutation refute_ballew_weger(unsigned eights);

}  // namespace repdigit
