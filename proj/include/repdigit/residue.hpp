#pragma once

#include <cstdint>
#include <vector>

#include "repdigit/natarith.hpp"
#include "repdigit/pell.hpp"

namespace repdigit {

enum class Coord { x, y };

const char* coord_name(Coord c);

// Upper limit for any period or lcm of periods this module will expand.
inline constexpr std::uint64_t kPeriodCap = 1'000'000'000;

struct ResiduePair {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  friend bool operator==(const ResiduePair&, const ResiduePair&) = default;
};

// (x_n mod m, y_n mod m) for n = 0..period-1. The step matrix has
// determinant 1, so the sequence is purely periodic.
class ResidueOrbit {
 public:
  ResidueOrbit(std::uint64_t modulus, std::vector<ResiduePair> cycle)
      : modulus_(modulus), cycle_(std::move(cycle)) {}

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t period() const { return cycle_.size(); }
  const std::vector<ResiduePair>& cycle() const { return cycle_; }
  std::uint64_t value(std::uint64_t n, Coord c) const {
    const ResiduePair& p = cycle_[n % cycle_.size()];
    return c == Coord::x ? p.x : p.y;
  }

 private:
  std::uint64_t modulus_;
  std::vector<ResiduePair> cycle_;
};

// {n >= 0 : n mod period in members}; members sorted ascending.
struct IndexSet {
  std::uint64_t period = 1;
  std::vector<std::uint64_t> members;

  bool contains(std::uint64_t n) const;
  bool empty() const { return members.empty(); }
  friend bool operator==(const IndexSet&, const IndexSet&) = default;
};

struct TenPowerOrbit {
  std::uint64_t modulus = 0;
  std::uint64_t multiplier = 0;
  unsigned r_min = 0;
  std::uint64_t period = 0;        // cycle length of c*10^r mod m
  std::uint64_t preperiod = 0;     // steps from r_min before entering the cycle
  std::vector<std::uint64_t> attained;  // sorted

  bool contains(std::uint64_t residue) const;
};

std::uint64_t lcm_capped(std::uint64_t a, std::uint64_t b);

ResidueOrbit orbit(const SolutionFamily& fam, std::uint64_t m);
IndexSet index_set(const ResidueOrbit& orb, Coord coord, std::uint64_t target);
IndexSet index_set(const SolutionFamily& fam, std::uint64_t m, Coord coord, std::uint64_t target);
bool sets_equal(const IndexSet& a, const IndexSet& b);
IndexSet intersect(const IndexSet& a, const IndexSet& b);

// {coord_n mod m2 : n in idx}, sorted.
std::vector<std::uint64_t> values_at(const ResidueOrbit& orb2, Coord coord, const IndexSet& idx);
std::vector<std::uint64_t> values_at(const SolutionFamily& fam, std::uint64_t m2, Coord coord, const IndexSet& idx);

TenPowerOrbit ten_power_orbit(std::uint64_t c, std::uint64_t m, unsigned r_min);

// 1 + mult * (base^i - 1) / divisor: the discriminant of a repeated digit
// (base 10, divisor 9, mult 8d) or a repeated block (base 100, divisor 99, mult 8c).
struct RepPattern {
  std::uint64_t base;
  std::uint64_t divisor;
  std::uint64_t mult;

  static RepPattern digit(Digit d) { return {10, 9, 8 * static_cast<std::uint64_t>(d.value())}; }
  static RepPattern block(Block c) { return {100, 99, 8 * static_cast<std::uint64_t>(c.value())}; }
};

std::uint64_t pattern_residue(const RepPattern& pat, unsigned i, std::uint64_t m);

// discriminant(d, i) mod m, by exact evaluation.
std::uint64_t residue_of_repdigit(Digit d, unsigned i, std::uint64_t m);

// Every value of pattern_residue(pat, i, m) over i = i_first, i_first + stride, ...
// computed to closure. Sorted.
std::vector<std::uint64_t> pattern_residue_closure(const RepPattern& pat, std::uint64_t m, unsigned i_first,
                                                   unsigned stride);

std::vector<std::uint64_t> quadratic_residues(std::uint64_t m);

}  // namespace repdigit
