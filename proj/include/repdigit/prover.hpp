#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "repdigit/natarith.hpp"
#include "repdigit/pell.hpp"
#include "repdigit/proof.hpp"

namespace repdigit {

struct ScreenResult {
  bool keep = true;
  std::uint64_t residue = 0;  // the offending residue when rejected
  unsigned i_from = 1;        // first i the rejection applies to
};

// Reject when (1 + 8d) mod 10 is not a square mod 10.
ScreenResult screen_mod10(Digit d);
// Reject when the stable last two digits of the discriminant are not a square ending.
ScreenResult screen_last_two(Digit d);

std::vector<WitnessStep> small_i_witnesses(const Problem& problem, unsigned i_first, unsigned i_max);
std::vector<WitnessStep> small_i_witnesses(Digit d, unsigned i_max);

// Parity cases of the Pell reduction; d must be 1, 5 or 6. d = 5 has no odd
// case (settled by the mod-11 screen).
std::vector<CaseSpec> case_split(Digit d);

// x^2 - 22c y^2 = 1089 - 88c with y = 2*10^i and x = 33(2k+1). Empty when 22c
// is a perfect square.
std::optional<CaseSpec> block_case(Block c);

struct SearchOptions {
  std::uint64_t budget = 10'000;  // largest m2 tried
  std::uint64_t m1_cap = 10'000;
  unsigned extra_r = 6;           // m1 may need c*10^r for r up to r_min + extra_r
  bool prefer_historical = true;
  bool allow_conjunction = false;
};

struct SearchOutcome {
  std::optional<ObstructionCertificate> certificate;
  std::uint64_t moduli_tried = 0;
  std::uint64_t largest_m2 = 0;
};

CaseHeader header_of(const CaseSpec& c);

// Smallest r >= r_min with m1 | multiplier * 10^r, if any r <= r_min + extra works.
std::optional<unsigned> threshold_for(std::uint64_t m1, std::uint64_t multiplier, unsigned r_min, unsigned extra);

// Certificate for one (m1, m2) pair, or empty when the pair does not obstruct.
std::optional<ObstructionCertificate> certify_pair(const CaseSpec& spec, const std::vector<SolutionFamily>& fams,
                                                   std::uint64_t m1, std::uint64_t m2, unsigned extra_r = 10);

SearchOutcome obstruction_search(const CaseSpec& spec, const std::vector<SolutionFamily>& fams,
                                 const SearchOptions& options = {});

SmallCaseStep small_case_check(const CaseSpec& spec, const std::vector<SolutionFamily>& fams, unsigned r_first,
                               unsigned r_last);

// Smallest modulus (`preferred` first) whose residue closure over the scope
// avoids all squares.
std::optional<ScreenStep> quadratic_residue_screen(const Problem& problem, unsigned i_first, unsigned stride,
                                                   std::uint64_t preferred, std::uint64_t max_modulus = 1000);

ProofDocument prove_digit(Digit d, const SearchOptions& options = {});
ProofDocument prove_block(Block c, const SearchOptions& options = {});

std::optional<std::pair<std::uint64_t, std::uint64_t>> historical_pair(const Problem& problem,
                                                                       const std::string& case_label);

}  // namespace repdigit
