#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "repdigit/residue.hpp"

using namespace repdigit;

namespace {

SolutionFamily case_a_family() { return SolutionFamily(PellEquation(2, 1), {3, 2}, fundamental_unit(2)); }

std::vector<SolutionFamily> fams(long long D, long long N) { return families(PellEquation(D, N)); }

// Rows n = 0..5 of one table column.
std::vector<std::uint64_t> column(const ResidueOrbit& o, Coord c) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n < 6; ++n) out.push_back(o.value(n, c));
  return out;
}

std::vector<std::uint64_t> union_values(const std::vector<SolutionFamily>& fs, std::uint64_t m1, std::uint64_t m2,
                                        Coord c) {
  std::set<std::uint64_t> out;
  for (const SolutionFamily& f : fs) {
    const auto v = values_at(f, m2, c, index_set(f, m1, c, 0));
    out.insert(v.begin(), v.end());
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST(Residue, OrbitMatchesTableColumns) {
  const auto fam = case_a_family();
  const auto o5 = orbit(fam, 5), o7 = orbit(fam, 7);
  EXPECT_EQ(o5.period(), 6U);
  EXPECT_EQ(o7.period(), 3U);
  EXPECT_EQ(column(o5, Coord::y), (std::vector<std::uint64_t>{2, 2, 0, 3, 3, 0}));
  EXPECT_EQ(column(o7, Coord::y), (std::vector<std::uint64_t>{2, 5, 0, 2, 5, 0}));
  EXPECT_EQ(column(o5, Coord::x), (std::vector<std::uint64_t>{3, 2, 4, 2, 3, 1}));
  EXPECT_EQ(column(o7, Coord::x), (std::vector<std::uint64_t>{3, 3, 1, 3, 3, 1}));
}

TEST(Residue, OrbitIsPurelyPeriodicAndMatchesExactValues) {
  for (const auto& f : fams(30, -39))
    for (std::uint64_t m : {2U, 31U, 64U, 97U, 1000U}) {
      const auto o = orbit(f, m);
      for (std::size_t n = 0; n < 3 * o.period() && n < 200; ++n) {
        const Point p = f.at(n);
        ASSERT_EQ(o.value(n, Coord::x), p.x.floor_mod(m));
        ASSERT_EQ(o.value(n, Coord::y), p.y.floor_mod(m));
      }
    }
  const SolutionFamily trivial(PellEquation(3, 1), {1, 0}, fundamental_unit(3));
  EXPECT_LE(orbit(trivial, 2).period(), 2U);
  EXPECT_EQ(2U % orbit(trivial, 2).period(), 0U);
  EXPECT_THROW(orbit(trivial, 1), std::domain_error);
}

TEST(Residue, IndexSets) {
  const auto fam = case_a_family();
  EXPECT_EQ(index_set(fam, 5, Coord::y, 0), (IndexSet{6, {2, 5}}));
  EXPECT_EQ(index_set(fam, 7, Coord::y, 0), (IndexSet{3, {2}}));
  EXPECT_TRUE(sets_equal(index_set(fam, 5, Coord::y, 0), index_set(fam, 7, Coord::y, 0)));
  bool any = false;
  for (const auto& f : fams(3, 13)) any = any || !index_set(f, 50, Coord::x, 0).empty();
  EXPECT_TRUE(any);
  EXPECT_THROW(index_set(fam, 5, Coord::y, 5), std::domain_error);
}

TEST(Residue, SetEquality) {
  EXPECT_TRUE(sets_equal({6, {2, 5}}, {6, {2, 5}}));
  EXPECT_FALSE(sets_equal({2, {0}}, {4, {0}}));
  EXPECT_TRUE(sets_equal({3, {}}, {5, {}}));
  EXPECT_TRUE(sets_equal({2, {1}}, {4, {1, 3}}));
  EXPECT_EQ(intersect({2, {0}}, {3, {1}}), (IndexSet{6, {4}}));
}

TEST(Residue, ValuesAt) {
  EXPECT_EQ(union_values(fams(3, 13), 50, 241, Coord::x), (std::vector<std::uint64_t>{94}));
  EXPECT_EQ(union_values(fams(30, -39), 64, 31, Coord::y), (std::vector<std::uint64_t>{3}));
  EXPECT_EQ(values_at(case_a_family(), 7, Coord::y, index_set(case_a_family(), 5, Coord::y, 0)),
            (std::vector<std::uint64_t>{0}));
}

// values_at against an explicit walk over the lcm of both periods.
TEST(Residue, ValuesAtMatchesExplicitWalk) {
  for (const auto& f : fams(10, -31))
    for (std::uint64_t m1 : {4U, 8U, 25U, 40U})
      for (std::uint64_t m2 : {3U, 7U, 11U, 13U, 49U}) {
        const auto o1 = orbit(f, m1), o2 = orbit(f, m2);
        const auto idx = index_set(o1, Coord::y, 0);
        const std::uint64_t l = std::lcm(o1.period(), o2.period());
        std::set<std::uint64_t> walk;
        for (std::uint64_t n = 0; n < l; ++n)
          if (o1.value(n, Coord::y) == 0) walk.insert(o2.value(n, Coord::y));
        ASSERT_EQ(values_at(o2, Coord::y, idx), std::vector<std::uint64_t>(walk.begin(), walk.end()));
      }
}

TEST(Residue, TenPowerOrbit) {
  const auto t31 = ten_power_orbit(1, 31, 1);
  EXPECT_EQ(t31.period, 15U);
  EXPECT_EQ(t31.attained, (std::vector<std::uint64_t>{1, 2, 4, 5, 7, 8, 9, 10, 14, 16, 18, 19, 20, 25, 28}));
  EXPECT_FALSE(t31.contains(24));
  const auto t7 = ten_power_orbit(2, 7, 1);
  EXPECT_EQ(t7.attained, (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6}));
  EXPECT_FALSE(t7.contains(0));
  EXPECT_FALSE(ten_power_orbit(1, 241, 2).contains(144));
  EXPECT_FALSE(ten_power_orbit(1, 241, 1).contains(144));
  const auto t8 = ten_power_orbit(1, 8, 1);
  EXPECT_EQ(t8.preperiod, 2U);
  EXPECT_EQ(t8.period, 1U);
  EXPECT_EQ(t8.attained, (std::vector<std::uint64_t>{0, 2, 4}));
}

TEST(Residue, RepdigitResidues) {
  EXPECT_EQ(residue_of_repdigit(Digit(6), 3, 1000), 329U);
  EXPECT_EQ(residue_of_repdigit(Digit(5), 2, 1000), 441U);
  for (unsigned i = 1; i <= 21; i += 2) EXPECT_EQ(residue_of_repdigit(Digit(5), i, 11), 8U) << i;
  EXPECT_EQ(residue_of_repdigit(Digit(5), 4, 1), 0U);
  EXPECT_EQ(pattern_residue(RepPattern::block(Block(50)), 2, 100000), 40401U);
  for (int d = 1; d <= 9; ++d)
    for (unsigned i = 1; i <= 40; ++i)
      ASSERT_EQ(residue_of_repdigit(Digit(d), i, 9973), discriminant(Digit(d), i).mod(9973));
}

TEST(Residue, Closure) {
  EXPECT_EQ(pattern_residue_closure(RepPattern::digit(Digit(5)), 11, 3, 2), (std::vector<std::uint64_t>{8}));
  EXPECT_EQ(pattern_residue_closure(RepPattern::digit(Digit(8)), 100, 2, 1), (std::vector<std::uint64_t>{5}));
  EXPECT_EQ(pattern_residue_closure(RepPattern::digit(Digit(2)), 10, 1, 1), (std::vector<std::uint64_t>{7}));
}

TEST(Residue, QuadraticResidues) {
  EXPECT_EQ(quadratic_residues(11), (std::vector<std::uint64_t>{0, 1, 3, 4, 5, 9}));
  EXPECT_EQ(quadratic_residues(10), (std::vector<std::uint64_t>{0, 1, 4, 5, 6, 9}));
  const auto q100 = quadratic_residues(100);
  EXPECT_FALSE(std::binary_search(q100.begin(), q100.end(), 5));
  EXPECT_FALSE(std::binary_search(q100.begin(), q100.end(), 65));
  EXPECT_EQ(q100.size(), 22U);
}

TEST(Residue, LcmCap) {
  EXPECT_EQ(lcm_capped(6, 15), 30U);
  EXPECT_THROW(lcm_capped(1'000'000'007, 2), std::length_error);
}
