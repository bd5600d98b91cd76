#include <gtest/gtest.h>

#include <random>

#include "repdigit/natarith.hpp"

using namespace repdigit;

TEST(Natarith, Triangular) {
  EXPECT_EQ(triangular(1), Natural(1));
  EXPECT_EQ(triangular(36), Natural(666));
  EXPECT_EQ(triangular(10), Natural(55));
  EXPECT_THROW(triangular(0), std::domain_error);
}

TEST(Natarith, RepeatedValues) {
  EXPECT_EQ(repdigit_value(Digit(1), 1), Natural(1));
  EXPECT_EQ(repdigit_value(Digit(6), 3), Natural(666));
  EXPECT_EQ(repdigit_value(Digit(5), 4), Natural(5555));
  EXPECT_EQ(repblock_value(Block(50), 2), Natural(5050));
  EXPECT_EQ(repblock_value(Block(10), 1), Natural(10));
  EXPECT_EQ(repblock_value(Block(99), 3), Natural(999999));
  EXPECT_EQ(repdigit_value(Digit(7), 40).str(), std::string(40, '7'));
}

TEST(Natarith, Discriminant) {
  EXPECT_EQ(discriminant(Digit(6), 3), Natural(5329));
  EXPECT_EQ(discriminant(Digit(5), 1), Natural(41));
  EXPECT_EQ(discriminant(Digit(8), 2), Natural(705));
  EXPECT_EQ(block_discriminant(Block(50), 2), Natural(8 * 5050 + 1));
}

TEST(Natarith, DomainChecks) {
  EXPECT_THROW(Digit(0), std::domain_error);
  EXPECT_THROW(Digit(10), std::domain_error);
  EXPECT_THROW(Block(9), std::domain_error);
  EXPECT_THROW(Block(100), std::domain_error);
  EXPECT_THROW(Natural(-1), std::domain_error);
  EXPECT_THROW(Natural(3) - Natural(4), std::domain_error);
  EXPECT_THROW(Natural::parse("12a"), std::invalid_argument);
  EXPECT_THROW(mod_pow(2, 3, 1), std::domain_error);
}

TEST(Natarith, Isqrt) {
  EXPECT_EQ(isqrt(0), Natural(0));
  EXPECT_EQ(isqrt(441), Natural(21));
  EXPECT_EQ(isqrt(705), Natural(26));
  EXPECT_EQ(*is_perfect_square(5329), Natural(73));
  EXPECT_FALSE(is_perfect_square(41).has_value());
  EXPECT_EQ(*is_perfect_square(1), Natural(1));
}

TEST(Natarith, IsqrtMatchesGmpOnRandomInputs) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    std::string digits = std::to_string(rng() % 9 + 1);
    const int len = static_cast<int>(rng() % 300);
    for (int j = 0; j < len; ++j) digits += static_cast<char>('0' + rng() % 10);
    const Natural n = Natural::parse(digits);
    mpz_class ref;
    mpz_sqrt(ref.get_mpz_t(), n.mpz().get_mpz_t());
    ASSERT_EQ(isqrt(n).mpz(), ref) << digits;
    const Natural sq = isqrt(n) * isqrt(n);
    ASSERT_EQ(is_perfect_square(sq).value(), isqrt(n));
    if (!isqrt(n).is_zero()) ASSERT_FALSE(is_perfect_square(sq + Natural(1)).has_value());
  }
}

TEST(Natarith, ModPow) {
  EXPECT_EQ(mod_pow(10, 1, 31), Natural(10));
  EXPECT_EQ(mod_pow(10, 15, 31), Natural(1));
  EXPECT_EQ(mod_pow(10, 2, 241), Natural(100));
}

TEST(Natarith, DiscriminantIdentity) {
  for (int d = 1; d <= 9; ++d)
    for (unsigned i = 1; i <= 30; ++i) {
      const Natural disc = discriminant(Digit(d), i);
      EXPECT_EQ(disc, Natural(8) * repdigit_value(Digit(d), i) + Natural(1));
      if (auto root = is_perfect_square(disc)) {
        const Natural k = (*root - Natural(1)) / Natural(2);
        EXPECT_EQ(triangular(k), repdigit_value(Digit(d), i));
      }
    }
}

TEST(Natarith, ParseAndPrint) {
  EXPECT_EQ(Integer::parse("-39").str(), "-39");
  EXPECT_EQ(Natural::pow10(20).str(), "1" + std::string(20, '0'));
  EXPECT_EQ(Natural::pow10(20).digit_count(), 21U);
  EXPECT_EQ(Integer(-7).floor_mod(5), 3U);
  EXPECT_EQ(Natural(1234).mod(100), 34U);
}
