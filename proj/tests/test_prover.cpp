#include <gtest/gtest.h>

#include <set>

#include "repdigit/certcheck.hpp"
#include "repdigit/prover.hpp"
#include "repdigit/search.hpp"

using namespace repdigit;

namespace {

std::vector<SolutionFamily> fams_of(const CaseSpec& c) { return families(c.equation); }

CaseSpec case_named(const std::vector<CaseSpec>& cases, const std::string& label) {
  for (const CaseSpec& c : cases)
    if (c.label == label) return c;
  throw std::out_of_range(label);
}

std::vector<Natural> solutions(const ProofDocument& doc) { return doc.solutions; }

}  // namespace

TEST(Prover, Screens) {
  const auto s2 = screen_mod10(Digit(2));
  EXPECT_FALSE(s2.keep);
  EXPECT_EQ(s2.residue, 7U);
  const auto s9 = screen_mod10(Digit(9));
  EXPECT_FALSE(s9.keep);
  EXPECT_EQ(s9.residue, 3U);
  EXPECT_TRUE(screen_mod10(Digit(1)).keep);
  const auto s8 = screen_last_two(Digit(8));
  EXPECT_FALSE(s8.keep);
  EXPECT_EQ(s8.residue, 5U);
  EXPECT_EQ(s8.i_from, 2U);
  const auto s3 = screen_last_two(Digit(3));
  EXPECT_FALSE(s3.keep);
  EXPECT_EQ(s3.residue, 65U);
  EXPECT_EQ(s3.i_from, 2U);
  EXPECT_TRUE(screen_last_two(Digit(6)).keep);
  for (int d : {2, 4, 7, 9}) EXPECT_FALSE(screen_mod10(Digit(d)).keep) << d;
  for (int d : {1, 3, 5, 6, 8}) EXPECT_TRUE(screen_mod10(Digit(d)).keep) << d;
}

TEST(Prover, SmallWitnesses) {
  const auto w6 = small_i_witnesses(Digit(6), 3);
  ASSERT_EQ(w6.size(), 3U);
  EXPECT_EQ(w6[0], (WitnessStep{1, 49, 7, 3}));
  EXPECT_EQ(w6[1], (WitnessStep{2, 529, 23, 11}));
  EXPECT_EQ(w6[2], (WitnessStep{3, 5329, 73, 36}));
  const auto w5 = small_i_witnesses(Digit(5), 2);
  ASSERT_EQ(w5.size(), 1U);
  EXPECT_EQ(w5[0], (WitnessStep{2, 441, 21, 10}));
  EXPECT_TRUE(small_i_witnesses(Digit(8), 2).empty());
}

TEST(Prover, CaseSplit) {
  const auto c1 = case_split(Digit(1));
  ASSERT_EQ(c1.size(), 2U);
  EXPECT_EQ(c1[0].equation.D(), Natural(2));
  EXPECT_EQ(c1[0].equation.N(), Integer(1));
  EXPECT_EQ(c1[1].equation.D(), Natural(20));
  const auto c6 = case_split(Digit(6));
  ASSERT_EQ(c6.size(), 2U);
  EXPECT_EQ(case_named(c6, "even").equation.N(), Integer(13));
  EXPECT_EQ(case_named(c6, "even").coord, Coord::x);
  EXPECT_EQ(case_named(c6, "odd").equation.D(), Natural(30));
  EXPECT_EQ(case_named(c6, "odd").coord, Coord::y);
  const auto c5 = case_split(Digit(5));
  ASSERT_EQ(c5.size(), 1U);
  EXPECT_EQ(c5[0].equation.N(), Integer(-31));
  EXPECT_THROW(case_split(Digit(2)), std::domain_error);
}

// The coordinate equals multiplier * 10^r exactly when the discriminant at
// i = i_of(r) is a square.
TEST(Prover, CaseReductionIsSound) {
  for (int d : {1, 5, 6})
    for (const CaseSpec& c : case_split(Digit(d)))
      for (unsigned r = 1; r <= 6; ++r) {
        const unsigned i = c.i_of(r);
        const Natural disc = discriminant(Digit(d), i);
        const Natural w = Natural(static_cast<long long>(c.multiplier)) * Natural::pow10(r);
        const Integer& N = c.equation.N();
        const Integer D(c.equation.D());
        Integer other_sq;
        if (c.coord == Coord::y) {
          other_sq = N + D * Integer(w) * Integer(w);
          const Integer scaled = Integer(disc) * Integer(static_cast<long long>(c.scale * c.scale));
          EXPECT_EQ(other_sq, scaled) << d << c.label << r;
        } else {
          const Integer scaled = Integer(disc) * Integer(static_cast<long long>(c.scale * c.scale));
          EXPECT_EQ(Integer(w) * Integer(w) - N, D * scaled) << d << c.label << r;
        }
      }
}

TEST(Prover, BlockCase) {
  EXPECT_FALSE(block_case(Block(22)).has_value());
  EXPECT_FALSE(block_case(Block(88)).has_value());
  const auto c50 = block_case(Block(50));
  ASSERT_TRUE(c50.has_value());
  EXPECT_EQ(c50->equation.D(), Natural(1100));
  EXPECT_EQ(c50->equation.N(), Integer(1089 - 4400));
  for (unsigned i = 1; i <= 8; ++i) {
    const Integer y = Integer(2) * Integer(Natural::pow10(i));
    const Integer x2 = c50->equation.N() + Integer(c50->equation.D()) * y * y;
    EXPECT_EQ(x2, Integer(block_discriminant(Block(50), i)) * Integer(33 * 33));
  }
}

TEST(Prover, HistoricalPairsCertify) {
  struct Row {
    int d;
    const char* label;
    std::uint64_t m1, m2;
  };
  for (const Row& row : {Row{1, "even", 5, 7}, Row{1, "odd", 5, 11}, Row{5, "even", 8, 7}, Row{6, "even", 50, 241},
                         Row{6, "odd", 64, 31}}) {
    const CaseSpec c = case_named(case_split(Digit(row.d)), row.label);
    const auto cert = certify_pair(c, fams_of(c), row.m1, row.m2);
    ASSERT_TRUE(cert.has_value()) << row.d << row.label;
    EXPECT_TRUE(cert->historical_match);
    EXPECT_EQ(cert->sieves.front().m1, row.m1);
    EXPECT_EQ(cert->sieves.front().m2, row.m2);
  }
}

TEST(Prover, SearchReturnsHistoricalPairFirst) {
  const auto c6 = case_split(Digit(6));
  const auto outcome = obstruction_search(case_named(c6, "even"), fams_of(case_named(c6, "even")));
  ASSERT_TRUE(outcome.certificate.has_value());
  EXPECT_EQ(outcome.certificate->sieves.front().m1, 50U);
  EXPECT_EQ(outcome.certificate->sieves.front().m2, 241U);
}

TEST(Prover, GenericSearchIsDeterministic) {
  SearchOptions opts;
  opts.prefer_historical = false;
  const CaseSpec c = case_named(case_split(Digit(1)), "even");
  const auto a = obstruction_search(c, fams_of(c), opts);
  const auto b = obstruction_search(c, fams_of(c), opts);
  ASSERT_TRUE(a.certificate.has_value());
  EXPECT_EQ(*a.certificate, *b.certificate);
  EXPECT_FALSE(a.certificate->historical_match);
  const CaseSpec c6 = case_named(case_split(Digit(6)), "odd");
  const auto o6 = obstruction_search(c6, fams_of(c6), opts);
  ASSERT_TRUE(o6.certificate.has_value());
  EXPECT_EQ(o6.certificate->sieves.front().m1, 64U);
  EXPECT_EQ(o6.certificate->sieves.front().m2, 31U);
}

TEST(Prover, SmallCases) {
  const CaseSpec odd6 = case_named(case_split(Digit(6)), "odd");
  const SmallCaseStep s6 = small_case_check(odd6, fams_of(odd6), 2, 3);
  EXPECT_TRUE(s6.hits.empty());
  EXPECT_EQ(s6.coordinate_limit, Natural(4000));
  const CaseSpec even5 = case_named(case_split(Digit(5)), "even");
  const SmallCaseStep s5 = small_case_check(even5, fams_of(even5), 1, 1);
  EXPECT_EQ(s5.hits, (std::vector<std::uint64_t>{1}));
  EXPECT_NE(std::find(s5.family_coordinates.begin(), s5.family_coordinates.end(), Natural(20)),
            s5.family_coordinates.end());
  const CaseSpec even1 = case_named(case_split(Digit(1)), "even");
  const SmallCaseStep s1 = small_case_check(even1, fams_of(even1), 1, 0);
  EXPECT_TRUE(s1.hits.empty());
}

TEST(Prover, ProveDigits) {
  EXPECT_EQ(solutions(prove_digit(Digit(6))), (std::vector<Natural>{6, 66, 666}));
  EXPECT_EQ(solutions(prove_digit(Digit(1))), (std::vector<Natural>{1}));
  EXPECT_EQ(solutions(prove_digit(Digit(5))), (std::vector<Natural>{55}));
  EXPECT_EQ(solutions(prove_digit(Digit(3))), (std::vector<Natural>{3}));
  const ProofDocument d7 = prove_digit(Digit(7));
  EXPECT_TRUE(d7.solutions.empty());
  ASSERT_EQ(d7.steps.size(), 1U);
  EXPECT_TRUE(std::holds_alternative<ScreenStep>(d7.steps.front()));
  for (int d = 1; d <= 9; ++d) {
    const ProofDocument doc = prove_digit(Digit(d));
    EXPECT_EQ(doc.status, ProofStatus::proven) << d;
    EXPECT_FALSE(coverage_gap(doc.steps).has_value()) << d;
    EXPECT_FALSE(coverage_overlap(doc.steps).has_value()) << d;
    const Verdict v = verify(doc);
    EXPECT_TRUE(v.valid) << d << ": " << v.reason;
  }
}

TEST(Prover, ProveDigitFiveUsesElevenScreen) {
  const ProofDocument doc = prove_digit(Digit(5));
  bool found = false;
  for (const ProofStep& s : doc.steps)
    if (const auto* sc = std::get_if<ScreenStep>(&s); sc && sc->quadratic_residue_argument) {
      EXPECT_EQ(sc->modulus, 11U);
      EXPECT_EQ(sc->residues, (std::vector<std::uint64_t>{8}));
      EXPECT_EQ(sc->i_first % 2, 1U);
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(Prover, ProveBlocks) {
  const ProofDocument b50 = prove_block(Block(50));
  EXPECT_EQ(b50.solutions, (std::vector<Natural>{5050}));
  const ProofDocument b15 = prove_block(Block(15));
  EXPECT_EQ(b15.solutions, (std::vector<Natural>{15}));
  const ProofDocument b11 = prove_block(Block(11));
  EXPECT_TRUE(b11.solutions.empty());
  for (const ProofDocument* doc : {&b50, &b15, &b11}) {
    if (doc->status == ProofStatus::unresolved) continue;
    const Verdict v = verify(*doc);
    EXPECT_TRUE(v.valid) << doc->problem.label() << ": " << v.reason;
  }
  const ProofDocument b22 = prove_block(Block(22));
  EXPECT_EQ(b22.status, ProofStatus::proven);
  EXPECT_TRUE(verify(b22).valid);
}

TEST(Prover, DigitProofsAgreeWithOracles) {
  std::set<Natural> proven;
  for (int d = 1; d <= 9; ++d)
    for (const Natural& n : prove_digit(Digit(d)).solutions) proven.insert(n);
  std::set<Natural> scanned;
  for (const SearchHit& h : square_test_scan(std::nullopt, 200).hits) scanned.insert(h.triangular);
  std::set<Natural> brute;
  for (const SearchHit& h : brute_force_digits(100'000).hits) brute.insert(h.triangular);
  EXPECT_EQ(proven, scanned);
  EXPECT_EQ(proven, brute);
}
