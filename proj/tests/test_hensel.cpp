#include <gtest/gtest.h>

#include "repdigit/hensel.hpp"

using namespace repdigit;

namespace {

std::vector<Natural> roots_of(const std::vector<LiftedRoot>& rs) {
  std::vector<Natural> out;
  for (const auto& r : rs) out.push_back(r.root);
  return out;
}

std::vector<Natural> brute_roots(std::uint64_t e) {
  std::uint64_t m = 1;
  for (std::uint64_t j = 0; j < e; ++j) m *= 10;
  const std::uint64_t target = eights_then_nine(static_cast<unsigned>(e)).to_u64().value();
  std::vector<Natural> out;
  for (std::uint64_t z = 0; z < m; ++z)
    if (static_cast<unsigned __int128>(z) * z % m == target) out.push_back(Natural(static_cast<long long>(z)));
  return out;
}

}  // namespace

TEST(Hensel, PrimePowerRoots) {
  EXPECT_EQ(roots_of(sqrt_mod_prime_power(4, 5, 1)), (std::vector<Natural>{2, 3}));
  EXPECT_EQ(roots_of(sqrt_mod_prime_power(1, 2, 3)), (std::vector<Natural>{1, 3, 5, 7}));
  const auto r625 = sqrt_mod_prime_power(556, 5, 4);
  ASSERT_EQ(r625.size(), 2U);
  for (const auto& r : r625) EXPECT_EQ((r.root * r.root).mod(625), 556U);
  EXPECT_EQ(eights_then_nine(4), Natural(8889));
  EXPECT_EQ((Natural(9) * eights_then_nine(4)).mod(10000), 1U);
  EXPECT_THROW(sqrt_mod_prime_power(2, 5, 3), std::domain_error);
  EXPECT_THROW(sqrt_mod_prime_power(3, 2, 3), std::domain_error);
  EXPECT_THROW(sqrt_mod_prime_power(1, 3, 3), std::domain_error);
}

TEST(Hensel, TwoPowerRootsAgreeWithBruteForce) {
  for (unsigned e = 1; e <= 14; ++e) {
    const std::uint64_t m = std::uint64_t{1} << e;
    for (std::uint64_t a = 1; a < 64; a += 8) {
      std::vector<Natural> brute;
      for (std::uint64_t z = 0; z < m; ++z)
        if (z % 2 == 1 && z * z % m == a % m) brute.push_back(Natural(static_cast<long long>(z)));
      ASSERT_EQ(roots_of(sqrt_mod_prime_power(a, 2, e)), brute) << "a=" << a << " e=" << e;
    }
  }
}

TEST(Hensel, EndingEightsAgreeWithBruteForce) {
  for (unsigned e = 2; e <= 7; ++e) {
    const auto brute = brute_roots(e);
    EXPECT_EQ(roots_ending_eights(e), brute) << e;
    EXPECT_EQ(square_ending_eights(e), brute.front());
    if (e >= 3) EXPECT_EQ(brute.size(), 8U);
  }
  EXPECT_EQ(square_ending_eights(2), Natural(17));
  EXPECT_EQ((Natural(17) * Natural(17)).mod(100), 89U);
}

TEST(Hensel, HistoricalWitness) {
  const Natural w(8072917);
  EXPECT_EQ((w * w).mod(100'000'000), 88'888'889U);
  const auto roots = roots_ending_eights(8);
  EXPECT_NE(std::find(roots.begin(), roots.end(), w), roots.end());
  const Natural z = square_ending_eights(8);
  EXPECT_EQ((z * z).mod(100'000'000), 88'888'889U);
}

TEST(Hensel, Refutation) {
  const Refutation r7 = refute_ballew_weger(7);
  EXPECT_TRUE(r7.verified);
  EXPECT_EQ(r7.trailing, "88888889");
  const Refutation r5 = refute_ballew_weger(5);
  EXPECT_EQ(r5.z, square_ending_eights(6));
  EXPECT_EQ(r5.square.mod(1'000'000), 888'889U);
  const Refutation r100 = refute_ballew_weger(100);
  EXPECT_TRUE(r100.verified);
  EXPECT_EQ(r100.trailing, std::string(100, '8') + "9");
  const std::string sq = (r100.z * r100.z).str();
  EXPECT_EQ(sq.substr(sq.size() - 101), std::string(100, '8') + "9");
}
