#include "repdigit/residue.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace repdigit {
namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

const char* coord_name(Coord c) { return c == Coord::x ? "x" : "y"; }

bool IndexSet::contains(std::uint64_t n) const {
  return std::binary_search(members.begin(), members.end(), n % period);
}

bool TenPowerOrbit::contains(std::uint64_t residue) const {
  return std::binary_search(attained.begin(), attained.end(), residue);
}

std::uint64_t lcm_capped(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t g = std::gcd(a, b);
  const unsigned __int128 l = static_cast<unsigned __int128>(a / g) * b;
  if (l > kPeriodCap) throw std::length_error("combined period exceeds cap of 10^9");
  return static_cast<std::uint64_t>(l);
}

ResidueOrbit orbit(const SolutionFamily& fam, std::uint64_t m) {
  if (m < 2) throw std::domain_error("orbit: modulus below 2");
  const std::uint64_t u = fam.unit().u.mod(m);
  const std::uint64_t v = fam.unit().v.mod(m);
  const std::uint64_t dv = mulmod(fam.equation().D().mod(m), v, m);
  const ResiduePair start{fam.base().x.floor_mod(m), fam.base().y.floor_mod(m)};
  std::vector<ResiduePair> cycle{start};
  ResiduePair p = start;
  for (;;) {
    p = {(mulmod(u, p.x, m) + mulmod(dv, p.y, m)) % m, (mulmod(v, p.x, m) + mulmod(u, p.y, m)) % m};
    if (p == start) break;
    if (cycle.size() >= kPeriodCap) throw std::length_error("orbit period exceeds cap of 10^9");
    cycle.push_back(p);
  }
  return ResidueOrbit(m, std::move(cycle));
}

IndexSet index_set(const ResidueOrbit& orb, Coord coord, std::uint64_t target) {
  if (target >= orb.modulus()) throw std::domain_error("index_set: target residue not below modulus");
  IndexSet s{orb.period(), {}};
  for (std::uint64_t n = 0; n < orb.period(); ++n)
    if (orb.value(n, coord) == target) s.members.push_back(n);
  return s;
}

IndexSet index_set(const SolutionFamily& fam, std::uint64_t m, Coord coord, std::uint64_t target) {
  return index_set(orbit(fam, m), coord, target);
}

bool sets_equal(const IndexSet& a, const IndexSet& b) {
  const std::uint64_t l = lcm_capped(a.period, b.period);
  for (std::uint64_t n = 0; n < l; ++n)
    if (a.contains(n) != b.contains(n)) return false;
  return true;
}

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  const std::uint64_t l = lcm_capped(a.period, b.period);
  IndexSet s{l, {}};
  for (std::uint64_t n = 0; n < l; ++n)
    if (a.contains(n) && b.contains(n)) s.members.push_back(n);
  return s;
}

std::vector<std::uint64_t> values_at(const ResidueOrbit& orb2, Coord coord, const IndexSet& idx) {
  // n = a (mod P_idx) and n = b (mod P_orbit) are simultaneously solvable
  // iff a = b (mod gcd), so the lcm-long walk is never expanded.
  const std::uint64_t g = std::gcd(orb2.period(), idx.period);
  std::vector<bool> phase(g, false);
  for (std::uint64_t a : idx.members) phase[a % g] = true;
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 0; b < orb2.period(); ++b)
    if (phase[b % g]) out.push_back(orb2.value(b, coord));
  return sorted_unique(std::move(out));
}

std::vector<std::uint64_t> values_at(const SolutionFamily& fam, std::uint64_t m2, Coord coord,
                                     const IndexSet& idx) {
  return values_at(orbit(fam, m2), coord, idx);
}

TenPowerOrbit ten_power_orbit(std::uint64_t c, std::uint64_t m, unsigned r_min) {
  if (m < 2) throw std::domain_error("ten_power_orbit: modulus below 2");
  if (c < 1) throw std::domain_error("ten_power_orbit: multiplier must be positive");
  TenPowerOrbit t{m, c, r_min, 0, 0, {}};
  std::unordered_map<std::uint64_t, std::uint64_t> first_seen;
  std::uint64_t s = mulmod(c % m, powmod(10, r_min, m), m);
  std::vector<std::uint64_t> seq;
  while (!first_seen.contains(s)) {
    first_seen.emplace(s, seq.size());
    seq.push_back(s);
    s = mulmod(s, 10, m);
  }
  t.preperiod = first_seen.at(s);
  t.period = seq.size() - t.preperiod;
  t.attained = sorted_unique(std::move(seq));
  return t;
}

std::uint64_t pattern_residue(const RepPattern& pat, unsigned i, std::uint64_t m) {
  if (m == 0) throw std::domain_error("pattern_residue: modulus zero");
  const std::uint64_t big = pat.divisor * m;
  const std::uint64_t power = powmod(pat.base, i, big);
  // base^i - 1 is divisible by the divisor, and so is its residue mod divisor*m.
  const std::uint64_t unit_count = ((power + big - 1) % big) / pat.divisor;
  return (1 + mulmod(pat.mult % m, unit_count % m, m)) % m;
}

std::uint64_t residue_of_repdigit(Digit d, unsigned i, std::uint64_t m) {
  if (i == 0) throw std::domain_error("residue_of_repdigit: i must be positive");
  return pattern_residue(RepPattern::digit(d), i, m);
}

std::vector<std::uint64_t> pattern_residue_closure(const RepPattern& pat, std::uint64_t m, unsigned i_first,
                                                   unsigned stride) {
  if (m == 0 || stride == 0) throw std::domain_error("pattern_residue_closure: bad modulus or stride");
  const std::uint64_t big = pat.divisor * m;
  const std::uint64_t step = powmod(pat.base, stride, big);
  std::uint64_t state = powmod(pat.base, i_first, big);
  std::set<std::uint64_t> seen_states;
  std::vector<std::uint64_t> out;
  while (seen_states.insert(state).second) {
    const std::uint64_t unit_count = ((state + big - 1) % big) / pat.divisor;
    out.push_back((1 + mulmod(pat.mult % m, unit_count % m, m)) % m);
    state = mulmod(state, step, big);
  }
  return sorted_unique(std::move(out));
}

std::vector<std::uint64_t> quadratic_residues(std::uint64_t m) {
  if (m < 2) throw std::domain_error("quadratic_residues: modulus below 2");
  std::vector<std::uint64_t> out;
  out.reserve(m);
  for (std::uint64_t z = 0; z < m; ++z) out.push_back(mulmod(z, z, m));
  return sorted_unique(std::move(out));
}

}  // namespace repdigit
