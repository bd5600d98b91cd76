#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "repdigit/natarith.hpp"
#include "repdigit/pell.hpp"
#include "repdigit/residue.hpp"

namespace repdigit {

// A single repeated digit (d in 1..9) or a repeated two-digit block (c in 10..99).
struct Problem {
  enum class Kind { digit, block };
  Kind kind = Kind::digit;
  int value = 1;

  static Problem of_digit(Digit d) { return {Kind::digit, d.value()}; }
  static Problem of_block(Block c) { return {Kind::block, c.value()}; }

  RepPattern pattern() const;
  // 1 + 8 * (the repeated number with i repetitions)
  Natural discriminant(unsigned i) const;
  Natural repeated_value(unsigned i) const;
  std::string label() const;  // "digit 6", "block 50"
  friend bool operator==(const Problem&, const Problem&) = default;
};

// Which indices i = stride*r + offset a step speaks about.
struct CaseSpec {
  std::string label;  // "even", "odd" or "all"
  PellEquation equation;
  Coord coord = Coord::y;        // this coordinate equals multiplier * 10^r
  std::uint64_t multiplier = 2;
  std::uint64_t scale = 1;       // the other coordinate is scale * sqrt(discriminant)
  unsigned stride = 2;
  unsigned offset = 0;
  unsigned r_first = 1;          // smallest r the case must settle
  unsigned r_min = 1;            // obstruction search starts here
  std::optional<std::pair<std::uint64_t, std::uint64_t>> historical;

  unsigned i_of(unsigned r) const { return stride * r + offset; }
};

struct WitnessStep {
  unsigned i = 0;
  Natural D;
  Natural root;
  Natural k;
  friend bool operator==(const WitnessStep&, const WitnessStep&) = default;
};

// Direct squareness test of the discriminant for every i in [i_first, i_last].
struct WitnessScanStep {
  unsigned i_first = 1;
  unsigned i_last = 1;
  std::vector<std::uint64_t> square_at;
  friend bool operator==(const WitnessScanStep&, const WitnessScanStep&) = default;
};

// The discriminant mod `modulus` over i = i_first, i_first + stride, ...
// only takes values in `residues`, none of which is a square mod `modulus`.
struct ScreenStep {
  bool quadratic_residue_argument = false;  // serialized as kind qr-screen
  std::uint64_t modulus = 10;
  unsigned i_first = 1;
  unsigned stride = 1;
  std::vector<std::uint64_t> residues;
  friend bool operator==(const ScreenStep&, const ScreenStep&) = default;
};

struct CaseHeader {
  std::string label;
  Natural D;
  Integer N;
  Coord coord = Coord::y;
  std::uint64_t multiplier = 2;
  std::uint64_t scale = 1;
  unsigned stride = 2;
  unsigned offset = 0;
  friend bool operator==(const CaseHeader&, const CaseHeader&) = default;
};

struct SieveFamilyRecord {
  std::uint64_t period_m1 = 1;
  std::uint64_t period_m2 = 1;
  std::vector<std::uint64_t> zero_indices;  // n mod period_m1 with coord = 0 (mod m1)
  std::vector<std::uint64_t> values_m2;     // coord mod m2 at those indices
  std::uint64_t admissible_period = 1;      // lcm(period_m1, period_m2)
  std::vector<std::uint64_t> admissible;    // indices whose residues match some c*10^r
  friend bool operator==(const SieveFamilyRecord&, const SieveFamilyRecord&) = default;
};

struct Sieve {
  std::uint64_t m1 = 2;
  std::uint64_t m2 = 3;
  unsigned r_cert = 1;
  std::uint64_t ten_power_period = 1;
  std::uint64_t ten_power_preperiod = 0;
  std::vector<std::uint64_t> ten_power_attained;
  std::vector<SieveFamilyRecord> families;
  friend bool operator==(const Sieve&, const Sieve&) = default;
};

// No family member has coord = multiplier * 10^r for r >= r_cert: for every
// family the admissible index sets of all sieves have empty intersection.
struct ObstructionCertificate {
  CaseHeader header;
  FundamentalUnit unit;
  std::vector<Point> bases;
  Natural rep_bound;
  std::uint64_t brute_force_limit = 10'000;
  unsigned r_cert = 1;
  bool historical_match = false;
  std::vector<Sieve> sieves;
  friend bool operator==(const ObstructionCertificate&, const ObstructionCertificate&) = default;
};

struct ObstructionStep {
  ObstructionCertificate certificate;
  friend bool operator==(const ObstructionStep&, const ObstructionStep&) = default;
};

// Exact check of every r in [r_first, r_last] for the case.
struct SmallCaseStep {
  CaseHeader header;
  unsigned r_first = 1;
  unsigned r_last = 0;
  Natural coordinate_limit;                 // multiplier * 10^r_last
  std::vector<Natural> family_coordinates;  // coordinate values of family members <= limit
  std::vector<std::uint64_t> hits;          // r values where coord = multiplier * 10^r
  friend bool operator==(const SmallCaseStep&, const SmallCaseStep&) = default;
};

// x^2 - s^2 y^2 = N has finitely many solutions; all are listed.
struct FiniteStep {
  CaseHeader header;
  unsigned r_first = 1;
  std::vector<Point> solutions;     // every nonnegative solution
  std::vector<std::uint64_t> hits;  // r >= r_first with coord = multiplier * 10^r
  friend bool operator==(const FiniteStep&, const FiniteStep&) = default;
};

using ProofStep =
    std::variant<WitnessScanStep, WitnessStep, ScreenStep, ObstructionStep, SmallCaseStep, FiniteStep>;

enum class ProofStatus { proven, unresolved };

struct UnresolvedNote {
  std::string case_label;
  std::uint64_t budget = 0;
  std::uint64_t moduli_tried = 0;
  std::uint64_t largest_m2 = 0;
  unsigned clearance_i = 0;  // no square discriminant for any i <= clearance_i
  std::string reason;
  friend bool operator==(const UnresolvedNote&, const UnresolvedNote&) = default;
};

struct ProofDocument {
  Problem problem;
  ProofStatus status = ProofStatus::proven;
  std::vector<Natural> solutions;  // triangular numbers, ascending
  std::vector<ProofStep> steps;
  std::vector<UnresolvedNote> unresolved;
  friend bool operator==(const ProofDocument&, const ProofDocument&) = default;
};

// Index range a step settles: i = stride*r + offset for r in [r_lo, r_hi]
// (r_hi absent = unbounded). Witness steps carry no scope.
struct StepScope {
  unsigned stride = 1;
  unsigned offset = 0;
  unsigned r_lo = 0;
  std::optional<unsigned> r_hi;
};

std::optional<StepScope> scope_of(const ProofStep& step);

// Every i >= 1 is inside some scope; returns a description of the first gap.
std::optional<std::string> coverage_gap(const std::vector<ProofStep>& steps);
// Every i >= 1 is inside at most one scope.
std::optional<std::string> coverage_overlap(const std::vector<ProofStep>& steps);

}  // namespace repdigit
