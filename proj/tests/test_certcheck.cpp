#include <gtest/gtest.h>

#include "mutation.hpp"
#include "repdigit/certcheck.hpp"
#include "repdigit/prover.hpp"

using namespace repdigit;

namespace {

std::string replace_line(const std::string& text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from + "\n");
  if (pos == std::string::npos) throw std::logic_error("line not found: " + from);
  return text.substr(0, pos) + to + "\n" + text.substr(pos + from.size() + 1);
}

ObstructionStep& obstruction(ProofDocument& doc, const std::string& label) {
  for (ProofStep& s : doc.steps)
    if (auto* o = std::get_if<ObstructionStep>(&s); o && o->certificate.header.label == label) return *o;
  throw std::logic_error("no obstruction " + label);
}

}  // namespace

TEST(Certcheck, RoundTrip) {
  for (int d = 1; d <= 9; ++d) {
    const ProofDocument doc = prove_digit(Digit(d));
    const std::string text = serialize(doc);
    EXPECT_EQ(parse(text), doc) << d;
    EXPECT_EQ(serialize(parse(text)), text) << d;
  }
  for (int c : {10, 22, 50, 51}) {
    const ProofDocument doc = prove_block(Block(c));
    EXPECT_EQ(parse(serialize(doc)), doc) << c;
  }
}

TEST(Certcheck, ParseErrors) {
  const std::string text = serialize(prove_digit(Digit(6)));
  const auto m1 = text.find("m1: 64");
  ASSERT_NE(m1, std::string::npos);
  try {
    parse(text.substr(0, m1) + "m1: 0" + text.substr(m1 + 6));
    FAIL() << "accepted m1 = 0";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.message(), "modulus below 2");
    EXPECT_GT(e.line(), 0U);
  }
  const std::string truncated = text.substr(0, text.size() / 2);
  try {
    parse(truncated.substr(0, truncated.rfind('\n') + 1));
    FAIL() << "accepted a truncated file";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
  }
  try {
    parse(truncated);
    FAIL() << "accepted a file cut mid-line";
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 0U);
  }
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse(text + "extra: 1\n"), ParseError);
  EXPECT_THROW(parse(replace_line(text, "problem: digit 6", "problem: digit 06")), ParseError);
  EXPECT_THROW(parse(replace_line(text, "problem: digit 6", "problem:  digit 6")), ParseError);
  EXPECT_THROW(parse(replace_line(text, "problem: digit 6", "problem: digit 6 ")), ParseError);
  EXPECT_THROW(parse(replace_line(text, "problem: digit 6", "problem: digit 10")), ParseError);
  EXPECT_THROW(parse(replace_line(text, "solutions: 6,66,666", "solutions: 66,6,666")), ParseError);
  EXPECT_THROW(parse(replace_line(text, "i: 1", "i: -1")), ParseError);
}

TEST(Certcheck, HistoricalCertificateValid) {
  const ProofDocument doc = prove_digit(Digit(6));
  const Verdict v = verify(doc);
  EXPECT_TRUE(v.valid) << v.reason;
  ProofDocument copy = doc;
  const auto& sieve = obstruction(copy, "even").certificate.sieves.front();
  EXPECT_EQ(sieve.m1, 50U);
  EXPECT_EQ(sieve.m2, 241U);
}

TEST(Certcheck, AlteredModulusRejected) {
  ProofDocument doc = prove_digit(Digit(6));
  obstruction(doc, "even").certificate.sieves.front().m2 = 239;
  const Verdict v = verify(doc);
  EXPECT_FALSE(v.valid);
  EXPECT_TRUE(v.reason.find("value set intersects ten-power orbit") != std::string::npos ||
              v.reason.find("recomputation mismatch") != std::string::npos)
      << v.reason;
}

// Even a fully recomputed sieve at (50, 239) fails: the value set meets the
// ten-power orbit, or the pair does not obstruct at all.
TEST(Certcheck, NonObstructingPairHasNoCertificate) {
  const auto cases = case_split(Digit(6));
  for (const CaseSpec& c : cases)
    if (c.label == "even") EXPECT_FALSE(certify_pair(c, families(c.equation), 50, 239).has_value());
}

TEST(Certcheck, WitnessSquareMismatch) {
  ProofDocument doc = prove_digit(Digit(6));
  for (ProofStep& s : doc.steps)
    if (auto* w = std::get_if<WitnessStep>(&s); w && w->i == 3) w->root = 72;
  const Verdict v = verify(doc);
  EXPECT_FALSE(v.valid);
  EXPECT_NE(v.reason.find("witness square mismatch"), std::string::npos) << v.reason;
}

TEST(Certcheck, StructuralDefectsRejected) {
  const ProofDocument base = prove_digit(Digit(6));
  {
    ProofDocument doc = base;
    doc.steps.erase(doc.steps.begin() + 4);  // drop a case
    EXPECT_FALSE(verify(doc).valid);
  }
  {
    ProofDocument doc = base;
    doc.solutions.pop_back();
    EXPECT_EQ(verify(doc).reason, "solution list mismatch");
  }
  {
    ProofDocument doc = base;
    obstruction(doc, "odd").certificate.bases.pop_back();
    EXPECT_FALSE(verify(doc).valid);
  }
  {
    ProofDocument doc = base;
    obstruction(doc, "even").certificate.unit = FundamentalUnit{7, 4};  // (2 + sqrt 3)^2
    const Verdict v = verify(doc);
    EXPECT_NE(v.reason.find("unit is not fundamental"), std::string::npos) << v.reason;
  }
  {
    ProofDocument doc = base;
    doc.status = ProofStatus::unresolved;
    doc.unresolved.push_back({"odd", 10, 1, 7, 1000, "test"});
    EXPECT_NE(verify(doc).reason.find("proof is unresolved"), std::string::npos);
  }
}

TEST(Certcheck, MutationFuzzing) {
  std::vector<ProofDocument> docs;
  for (int d = 1; d <= 9; ++d) docs.push_back(prove_digit(Digit(d)));
  for (int c : {10, 22, 50}) docs.push_back(prove_block(Block(c)));
  std::size_t total = 0, rejected = 0;
  for (const ProofDocument& doc : docs) {
    for (const auto& m : fuzz::single_field_mutations(serialize(doc))) {
      const auto outcome = fuzz::judge(doc, m.text);
      ASSERT_NE(outcome, fuzz::MutationOutcome::silent_valid)
          << doc.problem.label() << " line " << m.line << "\n"
          << m.text;
      ++total;
      if (outcome != fuzz::MutationOutcome::unchanged) ++rejected;
    }
  }
  EXPECT_GE(total, 100U);
  EXPECT_EQ(rejected, total);
}
