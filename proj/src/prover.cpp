#include "repdigit/prover.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace repdigit {
namespace {

constexpr unsigned kBlockScanEnd = 2;
constexpr unsigned kClearanceBound = 1000;
constexpr std::uint64_t kAdmissibleCap = 10'000'000;

bool is_qr(std::uint64_t residue, std::uint64_t m) {
  const auto qr = quadratic_residues(m);
  return std::binary_search(qr.begin(), qr.end(), residue);
}

std::uint64_t mod_of_power(std::uint64_t multiplier, unsigned r, std::uint64_t m) {
  unsigned __int128 acc = multiplier % m;
  for (unsigned k = 0; k < r; ++k) acc = acc * 10 % m;
  return static_cast<std::uint64_t>(acc);
}

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

Natural coordinate_of(const Point& p, Coord c) { return Natural(c == Coord::x ? p.x : p.y); }

Natural power_value(std::uint64_t multiplier, unsigned r) {
  return Natural(static_cast<long long>(multiplier)) * Natural::pow10(r);
}

struct FamilyResidues {
  ResidueOrbit orbit;
  std::vector<std::uint64_t> zeros;
};

SieveFamilyRecord family_record(const SolutionFamily& fam, Coord coord, std::uint64_t m1, std::uint64_t m2,
                                const TenPowerOrbit& ten, bool& usable) {
  const ResidueOrbit o1 = orbit(fam, m1);
  const ResidueOrbit o2 = orbit(fam, m2);
  const IndexSet zeros = index_set(o1, coord, 0);
  SieveFamilyRecord rec;
  rec.period_m1 = o1.period();
  rec.period_m2 = o2.period();
  rec.zero_indices = zeros.members;
  rec.values_m2 = values_at(o2, coord, zeros);
  const std::uint64_t g = std::gcd(rec.period_m1, rec.period_m2);
  rec.admissible_period = rec.period_m1 / g * rec.period_m2;
  std::vector<bool> zero_phase(g, false);
  for (std::uint64_t a : zeros.members) zero_phase[a % g] = true;
  bool any = false;
  for (std::uint64_t b = 0; b < o2.period() && !any; ++b)
    any = zero_phase[b % g] && ten.contains(o2.value(b, coord));
  if (any) {
    if (rec.admissible_period > kAdmissibleCap) {
      usable = false;
      return rec;
    }
    for (std::uint64_t n = 0; n < rec.admissible_period; ++n)
      if (zeros.contains(n) && ten.contains(o2.value(n, coord))) rec.admissible.push_back(n);
  }
  return rec;
}

std::optional<Sieve> build_sieve(const CaseSpec& spec, const std::vector<SolutionFamily>& fams, std::uint64_t m1,
                                 std::uint64_t m2, unsigned r) {
  Sieve s;
  s.m1 = m1;
  s.m2 = m2;
  s.r_cert = r;
  const TenPowerOrbit ten = ten_power_orbit(spec.multiplier, m2, r);
  s.ten_power_period = ten.period;
  s.ten_power_preperiod = ten.preperiod;
  s.ten_power_attained = ten.attained;
  bool usable = true;
  for (const SolutionFamily& fam : fams) s.families.push_back(family_record(fam, spec.coord, m1, m2, ten, usable));
  if (!usable) return std::nullopt;
  return s;
}

ObstructionCertificate make_certificate(const CaseSpec& spec, const std::vector<SolutionFamily>& fams,
                                        std::vector<Sieve> sieves) {
  ObstructionCertificate cert;
  cert.header = header_of(spec);
  cert.unit = fams.empty() ? fundamental_unit(spec.equation.D()) : fams.front().unit();
  for (const SolutionFamily& f : fams) cert.bases.push_back(f.base());
  cert.rep_bound = class_representative_bound(spec.equation, cert.unit);
  cert.r_cert = 0;
  for (const Sieve& s : sieves) cert.r_cert = std::max(cert.r_cert, s.r_cert);
  cert.historical_match = sieves.size() == 1 && spec.historical &&
                        *spec.historical == std::pair{sieves.front().m1, sieves.front().m2};
  cert.sieves = std::move(sieves);
  return cert;
}

bool sieve_obstructs(const Sieve& s) {
  return std::all_of(s.families.begin(), s.families.end(),
                     [](const SieveFamilyRecord& f) { return f.admissible.empty(); });
}

// Both sieves hold for some n in some family.
bool conjunction_obstructs(const Sieve& a, const Sieve& b) {
  for (std::size_t f = 0; f < a.families.size(); ++f) {
    const IndexSet ia{a.families[f].admissible_period, a.families[f].admissible};
    const IndexSet ib{b.families[f].admissible_period, b.families[f].admissible};
    if (ia.empty() || ib.empty()) continue;
    if (lcm_capped(ia.period, ib.period) > kAdmissibleCap) return false;
    if (!intersect(ia, ib).empty()) return false;
  }
  return true;
}

std::vector<std::uint64_t> two_five_smooth(std::uint64_t cap) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p2 = 1; p2 <= cap; p2 *= 2)
    for (std::uint64_t q = p2; q <= cap; q *= 5)
      if (q >= 2) out.push_back(q);
  std::sort(out.begin(), out.end());
  return out;
}

WitnessStep witness_for(const Problem& problem, unsigned i, const Natural& D, const Natural& root) {
  const Natural k = (root - 1) / 2;
  if (triangular(k) != problem.repeated_value(i)) throw std::logic_error("witness does not map to a triangular number");
  return {i, D, root, k};
}

unsigned clearance(const Problem& problem, unsigned i_first, unsigned i_last) {
  for (unsigned i = i_first; i <= i_last; ++i)
    if (is_perfect_square(problem.discriminant(i))) return i - 1;
  return i_last;
}

}  // namespace

ScreenResult screen_mod10(Digit d) {
  const auto closure = pattern_residue_closure(RepPattern::digit(d), 10, 1, 1);
  for (std::uint64_t r : closure)
    if (!is_qr(r, 10)) return {false, r, 1};
  return {true, closure.front(), 1};
}

ScreenResult screen_last_two(Digit d) {
  const RepPattern pat = RepPattern::digit(d);
  for (unsigned i0 = 1; i0 <= 8; ++i0) {
    const auto closure = pattern_residue_closure(pat, 100, i0, 1);
    if (closure.size() == 1) return {is_qr(closure.front(), 100), closure.front(), i0};
  }
  return {true, 0, 1};
}

std::vector<WitnessStep> small_i_witnesses(const Problem& problem, unsigned i_first, unsigned i_max) {
  std::vector<WitnessStep> out;
  for (unsigned i = i_first; i <= i_max; ++i) {
    const Natural D = problem.discriminant(i);
    if (auto root = is_perfect_square(D)) out.push_back(witness_for(problem, i, D, *root));
  }
  return out;
}

std::vector<WitnessStep> small_i_witnesses(Digit d, unsigned i_max) {
  if (i_max < 1) throw std::domain_error("small_i_witnesses: i_max must be positive");
  return small_i_witnesses(Problem::of_digit(d), 1, i_max);
}

std::vector<CaseSpec> case_split(Digit d) {
  const auto eq = [](long long D, long long N) { return PellEquation(Natural(D), Integer(N)); };
  switch (d.value()) {
    case 1:
      return {{"even", eq(2, 1), Coord::y, 2, 3, 2, 0, 1, 1, std::pair<std::uint64_t, std::uint64_t>{5, 7}},
              {"odd", eq(20, 1), Coord::y, 2, 3, 2, 1, 1, 1, std::pair<std::uint64_t, std::uint64_t>{5, 11}}};
    case 5:
      return {{"even", eq(10, -31), Coord::y, 2, 3, 2, 0, 1, 2, std::pair<std::uint64_t, std::uint64_t>{8, 7}}};
    case 6:
      return {{"even", eq(3, 13), Coord::x, 4, 1, 2, 0, 2, 2, std::pair<std::uint64_t, std::uint64_t>{50, 241}},
              {"odd", eq(30, -39), Coord::y, 4, 3, 2, 1, 2, 2, std::pair<std::uint64_t, std::uint64_t>{64, 31}}};
    default:
      throw std::domain_error("case_split: digit " + std::to_string(d.value()) + " is settled by a residue screen");
  }
}

std::optional<CaseSpec> block_case(Block c) {
  const Natural D(22LL * c.value());
  if (is_perfect_square(D)) return std::nullopt;
  const Integer N(1089LL - 88LL * c.value());
  return CaseSpec{"all", PellEquation(D, N), Coord::y, 2, 33, 1, 0, kBlockScanEnd + 1, kBlockScanEnd + 1,
                  std::nullopt};
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> historical_pair(const Problem& problem,
                                                                       const std::string& case_label) {
  if (problem.kind != Problem::Kind::digit) return std::nullopt;
  try {
    for (const CaseSpec& c : case_split(Digit(problem.value)))
      if (c.label == case_label) return c.historical;
  } catch (const std::domain_error&) {
  }
  return std::nullopt;
}

CaseHeader header_of(const CaseSpec& c) {
  return {c.label, c.equation.D(), c.equation.N(), c.coord, c.multiplier, c.scale, c.stride, c.offset};
}

std::optional<unsigned> threshold_for(std::uint64_t m1, std::uint64_t multiplier, unsigned r_min, unsigned extra) {
  if (m1 < 2) return std::nullopt;
  for (unsigned r = r_min; r <= r_min + extra; ++r)
    if (mod_of_power(multiplier, r, m1) == 0) return r;
  return std::nullopt;
}

std::optional<ObstructionCertificate> certify_pair(const CaseSpec& spec, const std::vector<SolutionFamily>& fams,
                                                   std::uint64_t m1, std::uint64_t m2, unsigned extra_r) {
  if (m2 < 2) return std::nullopt;
  const auto r = threshold_for(m1, spec.multiplier, spec.r_min, extra_r);
  if (!r) return std::nullopt;
  auto sieve = build_sieve(spec, fams, m1, m2, *r);
  if (!sieve || !sieve_obstructs(*sieve)) return std::nullopt;
  return make_certificate(spec, fams, {std::move(*sieve)});
}

SearchOutcome obstruction_search(const CaseSpec& spec, const std::vector<SolutionFamily>& fams,
                                 const SearchOptions& options) {
  SearchOutcome outcome;
  if (options.prefer_historical && spec.historical) {
    ++outcome.moduli_tried;
    if (auto cert = certify_pair(spec, fams, spec.historical->first, spec.historical->second)) {
      outcome.certificate = std::move(cert);
      return outcome;
    }
  }

  struct M1Candidate {
    std::uint64_t m1;
    unsigned r;
    std::vector<FamilyResidues> per_family;
  };
  std::vector<M1Candidate> candidates;
  for (std::uint64_t m1 : two_five_smooth(options.m1_cap)) {
    const auto r = threshold_for(m1, spec.multiplier, spec.r_min, options.extra_r);
    if (!r) continue;
    M1Candidate cand{m1, *r, {}};
    for (const SolutionFamily& fam : fams) {
      ResidueOrbit o = orbit(fam, m1);
      auto zeros = index_set(o, spec.coord, 0).members;
      cand.per_family.push_back({std::move(o), std::move(zeros)});
    }
    candidates.push_back(std::move(cand));
  }

  // Single pairs first; the best near-misses are kept for the conjunction fallback.
  std::vector<Sieve> near_misses;
  for (std::uint64_t m2 = 2; m2 <= options.budget; ++m2) {
    if (!is_prime_power(m2)) continue;
    outcome.largest_m2 = m2;
    std::vector<ResidueOrbit> o2;
    for (const SolutionFamily& fam : fams) o2.push_back(orbit(fam, m2));
    std::map<unsigned, std::vector<bool>> ten_by_r;
    for (const M1Candidate& cand : candidates) {
      ++outcome.moduli_tried;
      auto [it, inserted] = ten_by_r.try_emplace(cand.r);
      if (inserted) {
        it->second.assign(m2, false);
        for (std::uint64_t t : ten_power_orbit(spec.multiplier, m2, cand.r).attained) it->second[t] = true;
      }
      const std::vector<bool>& ten = it->second;
      bool obstructs = true;
      for (std::size_t f = 0; f < fams.size() && obstructs; ++f) {
        const FamilyResidues& fr = cand.per_family[f];
        if (fr.zeros.empty()) continue;
        const std::uint64_t g = std::gcd(fr.orbit.period(), o2[f].period());
        std::vector<bool> zero_phase(g, false);
        for (std::uint64_t a : fr.zeros) zero_phase[a % g] = true;
        for (std::uint64_t b = 0; b < o2[f].period(); ++b) {
          if (zero_phase[b % g] && ten[o2[f].value(b, spec.coord)]) {
            obstructs = false;
            break;
          }
        }
      }
      if (obstructs) {
        if (auto cert = certify_pair(spec, fams, cand.m1, m2, options.extra_r)) {
          outcome.certificate = std::move(cert);
          return outcome;
        }
      } else if (options.allow_conjunction && near_misses.size() < 64) {
        if (auto s = build_sieve(spec, fams, cand.m1, m2, cand.r)) near_misses.push_back(std::move(*s));
      }
    }
  }

  if (options.allow_conjunction) {
    for (std::size_t a = 0; a < near_misses.size(); ++a) {
      for (std::size_t b = a + 1; b < near_misses.size(); ++b) {
        ++outcome.moduli_tried;
        if (conjunction_obstructs(near_misses[a], near_misses[b])) {
          outcome.certificate = make_certificate(spec, fams, {near_misses[a], near_misses[b]});
          return outcome;
        }
      }
    }
  }
  return outcome;
}

SmallCaseStep small_case_check(const CaseSpec& spec, const std::vector<SolutionFamily>& fams, unsigned r_first,
                               unsigned r_last) {
  SmallCaseStep step;
  step.header = header_of(spec);
  step.r_first = r_first;
  step.r_last = r_last;
  step.coordinate_limit = power_value(spec.multiplier, r_last);
  std::set<Natural> seen;
  for (const SolutionFamily& fam : fams) {
    Point p = fam.base();
    // Along a nonnegative tail both coordinates increase strictly.
    while (p.x.sign() >= 0 && p.y.sign() >= 0) {
      const Natural w = coordinate_of(p, spec.coord);
      if (w > step.coordinate_limit) break;
      seen.insert(w);
      p = unit_step(p, spec.equation.D(), fam.unit());
    }
  }
  step.family_coordinates.assign(seen.begin(), seen.end());
  for (unsigned r = r_first; r <= r_last; ++r)
    if (seen.contains(power_value(spec.multiplier, r))) step.hits.push_back(r);
  return step;
}

std::optional<ScreenStep> quadratic_residue_screen(const Problem& problem, unsigned i_first, unsigned stride,
                                                   std::uint64_t preferred, std::uint64_t max_modulus) {
  const RepPattern pat = problem.pattern();
  auto attempt = [&](std::uint64_t m) -> std::optional<ScreenStep> {
    auto closure = pattern_residue_closure(pat, m, i_first, stride);
    const auto qr = quadratic_residues(m);
    for (std::uint64_t v : closure)
      if (std::binary_search(qr.begin(), qr.end(), v)) return std::nullopt;
    return ScreenStep{true, m, i_first, stride, std::move(closure)};
  };
  if (preferred >= 2)
    if (auto s = attempt(preferred)) return s;
  for (std::uint64_t m = 3; m <= max_modulus; ++m)
    if (auto s = attempt(m)) return s;
  return std::nullopt;
}

namespace {

void finish(ProofDocument& doc) {
  std::set<Natural> sols;
  for (const ProofStep& s : doc.steps)
    if (const auto* w = std::get_if<WitnessStep>(&s)) sols.insert(doc.problem.repeated_value(w->i));
  doc.solutions.assign(sols.begin(), sols.end());
  doc.status = doc.unresolved.empty() ? ProofStatus::proven : ProofStatus::unresolved;
}

void add_scan(ProofDocument& doc, unsigned i_first, unsigned i_last) {
  if (i_last < i_first) return;
  WitnessScanStep scan{i_first, i_last, {}};
  const auto witnesses = small_i_witnesses(doc.problem, i_first, i_last);
  for (const WitnessStep& w : witnesses) scan.square_at.push_back(w.i);
  doc.steps.emplace_back(std::move(scan));
  for (const WitnessStep& w : witnesses) doc.steps.emplace_back(w);
}

// Small-case check, witnesses for its hits, then the obstruction. Returns
// false when no certificate was found.
bool add_case(ProofDocument& doc, const CaseSpec& spec, const SearchOptions& options) {
  std::vector<SolutionFamily> fams;
  try {
    fams = families(spec.equation);
  } catch (const std::length_error& e) {
    doc.unresolved.push_back({spec.label, options.budget, 0, 0, 0, e.what()});
    return false;
  }
  SearchOutcome outcome = obstruction_search(spec, fams, options);
  if (!outcome.certificate) {
    const unsigned first_i = spec.i_of(spec.r_first);
    doc.unresolved.push_back({spec.label, options.budget, outcome.moduli_tried, outcome.largest_m2,
                              clearance(doc.problem, first_i, kClearanceBound),
                              "no obstructing modulus pair within budget"});
    return false;
  }
  const ObstructionCertificate& cert = *outcome.certificate;
  if (cert.r_cert > spec.r_first) {
    SmallCaseStep small = small_case_check(spec, fams, spec.r_first, cert.r_cert - 1);
    const auto hits = small.hits;
    doc.steps.emplace_back(std::move(small));
    for (std::uint64_t r : hits) {
      const unsigned i = spec.i_of(static_cast<unsigned>(r));
      const Natural D = doc.problem.discriminant(i);
      const auto root = is_perfect_square(D);
      if (!root) throw std::logic_error("small-case hit without a square discriminant");
      doc.steps.emplace_back(witness_for(doc.problem, i, D, *root));
    }
  }
  doc.steps.emplace_back(ObstructionStep{cert});
  return true;
}

}  // namespace

ProofDocument prove_digit(Digit d, const SearchOptions& options) {
  ProofDocument doc;
  doc.problem = Problem::of_digit(d);
  const RepPattern pat = RepPattern::digit(d);

  if (const ScreenResult m10 = screen_mod10(d); !m10.keep) {
    doc.steps.emplace_back(ScreenStep{false, 10, 1, 1, pattern_residue_closure(pat, 10, 1, 1)});
    finish(doc);
    return doc;
  }
  if (const ScreenResult last = screen_last_two(d); !last.keep) {
    add_scan(doc, 1, last.i_from - 1);
    doc.steps.emplace_back(ScreenStep{false, 100, last.i_from, 1, pattern_residue_closure(pat, 100, last.i_from, 1)});
    finish(doc);
    return doc;
  }

  const std::vector<CaseSpec> cases = case_split(d);
  unsigned first_i = ~0U;
  std::set<unsigned> parities{0, 1};
  for (const CaseSpec& c : cases) {
    first_i = std::min(first_i, c.i_of(c.r_first));
    parities.erase(c.offset);
  }
  add_scan(doc, 1, first_i - 1);
  for (unsigned parity : parities) {
    unsigned i0 = first_i;
    if (i0 % 2 != parity) ++i0;
    if (auto screen = quadratic_residue_screen(doc.problem, i0, 2, 11)) {
      doc.steps.emplace_back(std::move(*screen));
    } else {
      doc.unresolved.push_back({parity ? "odd" : "even", 0, 0, 0, clearance(doc.problem, i0, kClearanceBound),
                                "no quadratic-residue screen found"});
    }
  }
  for (const CaseSpec& c : cases) add_case(doc, c, options);
  finish(doc);
  return doc;
}

ProofDocument prove_block(Block c, const SearchOptions& options) {
  ProofDocument doc;
  doc.problem = Problem::of_block(c);
  add_scan(doc, 1, kBlockScanEnd);

  const auto spec = block_case(c);
  if (!spec) {
    // 22c = s^2: (x - s y)(x + s y) = N, so every solution has y <= |N|.
    const long long s = static_cast<long long>(*isqrt(Natural(22LL * c.value())).to_u64());
    const long long N = 1089LL - 88LL * c.value();
    FiniteStep step;
    step.header = {"all", Natural(22LL * c.value()), Integer(N), Coord::y, 2, 33, 1, 0};
    step.r_first = kBlockScanEnd + 1;
    for (long long y = 0; y <= (N < 0 ? -N : N); ++y) {
      const Integer t = Integer(N) + Integer(s * s) * Integer(y) * Integer(y);
      if (t.sign() < 0) continue;
      if (auto root = is_perfect_square(Natural(t))) {
        step.solutions.push_back({Integer(*root), Integer(y)});
        for (unsigned r = step.r_first; power_value(2, r) <= Natural(y); ++r)
          if (power_value(2, r) == Natural(y)) step.hits.push_back(r);
      }
    }
    const auto hits = step.hits;
    doc.steps.emplace_back(std::move(step));
    for (std::uint64_t r : hits) {
      const unsigned i = static_cast<unsigned>(r);
      const Natural D = doc.problem.discriminant(i);
      doc.steps.emplace_back(witness_for(doc.problem, i, D, *is_perfect_square(D)));
    }
    finish(doc);
    return doc;
  }

  SearchOptions opts = options;
  opts.allow_conjunction = true;
  add_case(doc, *spec, opts);
  finish(doc);
  return doc;
}

}  // namespace repdigit
