#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "repdigit/natarith.hpp"

namespace repdigit {

struct SearchHit {
  Natural k;
  Natural triangular;  // T_k
  int repeated = 0;    // the digit d or the block c
  unsigned length = 0; // number of repetitions i
  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

struct SearchReport {
  std::uint64_t bound = 0;  // k_max or i_max
  std::vector<SearchHit> hits;
  std::chrono::duration<double> elapsed{};
};

// T_k for k = 1..k_max whose decimal digits are all equal.
SearchReport brute_force_digits(std::uint64_t k_max);
// T_k for k = 1..k_max with an even digit count made of one repeated
// two-digit block (leading digit nonzero).
SearchReport brute_force_blocks(std::uint64_t k_max);
// Squareness of the discriminant for i = 1..i_max, one digit or all nine.
// Hits are ordered by triangular value.
SearchReport square_test_scan(std::optional<Digit> d, unsigned i_max);

}  // namespace repdigit
