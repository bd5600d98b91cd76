#include "repdigit/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "repdigit/certcheck.hpp"
#include "repdigit/hensel.hpp"
#include "repdigit/pell.hpp"
#include "repdigit/prover.hpp"
#include "repdigit/search.hpp"

namespace repdigit {
namespace {

using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_elapsed(std::ostream& err, const char* what, Clock::time_point start) {
  const std::chrono::duration<double> dt = Clock::now() - start;
  err << what << ": " << dt.count() << " s\n";
}

std::string join(const std::vector<Natural>& xs) {
  std::string s;
  for (const Natural& x : xs) s += (s.empty() ? "" : ", ") + x.str();
  return s.empty() ? "none" : s;
}

std::string equation_text(const CaseHeader& h) {
  std::string n = h.N.sign() < 0 ? " = -" + h.N.abs().str() : " = " + h.N.str();
  return "x^2 - " + h.D.str() + "y^2" + n;
}

std::string describe(const ProofStep& step) {
  struct V {
    std::string operator()(const WitnessScanStep& s) const {
      std::string sq;
      for (auto i : s.square_at) sq += (sq.empty() ? "" : ",") + std::to_string(i);
      return "direct test i=" + std::to_string(s.i_first) + ".." + std::to_string(s.i_last) +
             ", square at i in {" + sq + "}";
    }
    std::string operator()(const WitnessStep& s) const {
      return "witness i=" + std::to_string(s.i) + ": D = " + s.D.str() + " = " + s.root.str() + "^2, k = " + s.k.str();
    }
    std::string operator()(const ScreenStep& s) const {
      std::string rs;
      for (auto r : s.residues) rs += (rs.empty() ? "" : ",") + std::to_string(r);
      return std::string(s.quadratic_residue_argument ? "non-residue screen" : "screen") + " mod " +
             std::to_string(s.modulus) + " for i=" + std::to_string(s.i_first) + "+" + std::to_string(s.stride) +
             "n: D in {" + rs + "}";
    }
    std::string operator()(const ObstructionStep& s) const {
      const auto& c = s.certificate;
      std::string sv;
      for (const Sieve& x : c.sieves)
        sv += (sv.empty() ? "" : " and ") + std::string("(") + std::to_string(x.m1) + ", " + std::to_string(x.m2) + ")";
      return "obstruction (" + c.header.label + "): " + equation_text(c.header) + ", " +
             std::to_string(c.bases.size()) + " families, sieve " + sv + " for r >= " + std::to_string(c.r_cert) +
             (c.historical_match ? " [historical pair]" : "");
    }
    std::string operator()(const SmallCaseStep& s) const {
      return "small case (" + s.header.label + "): r=" + std::to_string(s.r_first) + ".." + std::to_string(s.r_last) +
             ", " + std::to_string(s.hits.size()) + " hits";
    }
    std::string operator()(const FiniteStep& s) const {
      return "finite (" + s.header.label + "): " + equation_text(s.header) + " has " +
             std::to_string(s.solutions.size()) + " solutions, " + std::to_string(s.hits.size()) + " hits";
    }
  };
  return std::visit(V{}, step);
}

void print_proof(std::ostream& out, const ProofDocument& doc) {
  out << "problem: " << doc.problem.label() << '\n';
  out << "status: " << (doc.status == ProofStatus::proven ? "proven" : "unresolved") << '\n';
  out << "solutions: " << join(doc.solutions) << '\n';
  for (std::size_t j = 0; j < doc.steps.size(); ++j) out << "step " << j + 1 << ": " << describe(doc.steps[j]) << '\n';
  for (const UnresolvedNote& n : doc.unresolved)
    out << "unresolved (" << n.case_label << "): " << n.moduli_tried << " moduli tried, largest m2 "
        << n.largest_m2 << " (budget " << n.budget << "); no square discriminant for i <= " << n.clearance_i
        << "; " << n.reason << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << text;
  if (!f) throw UsageError("cannot write " + path.string());
}

void print_report(std::ostream& out, const SearchReport& r, const char* kind) {
  for (const SearchHit& h : r.hits)
    out << "T_" << h.k << " = " << h.triangular << "  (" << kind << ' ' << h.repeated << ", " << h.length
        << (h.length == 1 ? " repetition)\n" : " repetitions)\n");
  out << "hits: " << r.hits.size() << '\n';
}

int cmd_prove(std::ostream& out, std::ostream& err, std::optional<int> digit, std::optional<int> block,
              const std::string& emit, std::uint64_t budget) {
  if (digit.has_value() == block.has_value()) throw UsageError("prove needs exactly one of --digit or --block");
  SearchOptions options;
  options.budget = budget;
  const auto start = Clock::now();
  const ProofDocument doc = digit ? prove_digit(Digit(*digit), options) : prove_block(Block(*block), options);
  print_elapsed(err, "prove", start);
  print_proof(out, doc);
  if (!emit.empty()) write_file(emit, serialize(doc));
  if (doc.status == ProofStatus::unresolved) return kExitUnresolved;
  const Verdict v = verify(doc);
  out << "certificate: " << (v.valid ? "valid" : "invalid: " + v.reason) << '\n';
  return v.valid ? kExitOk : kExitInvalid;
}

int cmd_prove_all(std::ostream& out, std::ostream& err, const std::string& emit_dir) {
  const auto start = Clock::now();
  struct Result {
    ProofDocument doc;
    Verdict verdict;
  };
  std::vector<std::future<Result>> tasks;
  for (int d = 1; d <= 9; ++d)
    tasks.push_back(std::async(std::launch::async, [d] {
      ProofDocument doc = prove_digit(Digit(d));
      Verdict v = verify(doc);
      return Result{std::move(doc), std::move(v)};
    }));
  if (!emit_dir.empty()) std::filesystem::create_directories(emit_dir);
  int code = kExitOk;
  std::set<Natural> all;
  for (int d = 1; d <= 9; ++d) {
    const Result r = tasks[d - 1].get();
    out << "digit " << d << ": " << (r.doc.status == ProofStatus::proven ? "proven" : "unresolved")
        << "; solutions: " << join(r.doc.solutions)
        << "; certificate: " << (r.verdict.valid ? "valid" : "invalid: " + r.verdict.reason) << '\n';
    if (!emit_dir.empty())
      write_file(std::filesystem::path(emit_dir) / ("digit-" + std::to_string(d) + ".cert"), serialize(r.doc));
    all.insert(r.doc.solutions.begin(), r.doc.solutions.end());
    if (r.doc.status == ProofStatus::unresolved)
      code = std::max<int>(code, kExitUnresolved);
    else if (!r.verdict.valid && code == kExitOk)
      code = kExitInvalid;
  }
  out << "all solutions: " << join({all.begin(), all.end()}) << '\n';
  print_elapsed(err, "prove-all", start);
  return code;
}

int cmd_check(std::ostream& out, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  ProofDocument doc;
  try {
    doc = parse(buf.str());
  } catch (const ParseError& e) {
    out << "invalid: " << e.what() << '\n';
    return kExitInvalid;
  }
  if (doc.status == ProofStatus::unresolved) {
    out << "unresolved: " << doc.problem.label() << '\n';
    return kExitUnresolved;
  }
  const Verdict v = verify(doc);
  out << (v.valid ? "valid" : "invalid: " + v.reason) << '\n';
  return v.valid ? kExitOk : kExitInvalid;
}

int cmd_pell(std::ostream& out, const std::string& d, const std::string& n, const std::string& limit) {
  const PellEquation eq(Natural::parse(d), Integer::parse(n));
  const FundamentalUnit unit = fundamental_unit(eq.D());
  out << "equation: x^2 - " << eq.D() << "y^2 = " << eq.N() << '\n';
  out << "fundamental unit: (" << unit.u << ", " << unit.v << ")\n";
  const auto fams = families(eq);
  out << "classes:";
  for (const SolutionFamily& f : fams) out << " (" << f.base().x << ", " << f.base().y << ")";
  out << (fams.empty() ? " none\n" : "\n");
  const auto sols = enumerate_solutions(fams, Natural::parse(limit));
  for (const Solution& s : sols)
    out << s.x << ' ' << s.y << "  (class " << s.family_index << ", step " << s.step << ")\n";
  out << "solutions: " << sols.size() << '\n';
  return kExitOk;
}

int cmd_hensel(std::ostream& out, unsigned eights) {
  if (eights < 1) throw UsageError("--eights must be at least 1");
  const Refutation r = refute_ballew_weger(eights);
  out << "z: " << r.z << '\n';
  out << "z^2: " << r.square << '\n';
  out << "trailing digits: " << r.trailing << '\n';
  out << "verified by squaring: " << (r.verified ? "yes" : "no") << '\n';
  return r.verified ? kExitOk : kExitInvalid;
}

int cmd_table1(std::ostream& out) {
  const PellEquation eq(Natural(2), Integer(1));
  const SolutionFamily fam(eq, Point{3, 2}, FundamentalUnit{3, 2});
  out << "n | x_n mod 5 | y_n mod 5 | x_n mod 7 | y_n mod 7\n";
  for (std::size_t n = 0; n <= 6; ++n) {
    const Point p = fam.at(n);
    out << n << " | " << p.x.floor_mod(5) << " | " << p.y.floor_mod(5) << " | " << p.x.floor_mod(7) << " | "
        << p.y.floor_mod(7) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Triangular repdigits and repblocks: search, proofs and certificates", "repdigit"};
  app.require_subcommand(1);

  std::uint64_t max_k = 1'000'000, max_k_blocks = 1'000'000;
  unsigned max_i = 1000;
  std::optional<int> scan_digit, digit, block;
  std::string emit, emit_dir, check_path, pell_d, pell_n, pell_limit;
  std::uint64_t budget = 10'000;
  unsigned eights = 0;

  auto* search = app.add_subcommand("search", "brute-force scan of T_k for repdigits");
  search->add_option("--max-k", max_k, "largest k")->check(CLI::PositiveNumber);
  auto* search_blocks = app.add_subcommand("search-blocks", "brute-force scan of T_k for repeated two-digit blocks");
  search_blocks->add_option("--max-k", max_k_blocks, "largest k")->check(CLI::PositiveNumber);
  auto* scan = app.add_subcommand("scan", "squareness test of the discriminant by digit count");
  scan->add_option("--max-i", max_i, "largest digit count")->check(CLI::PositiveNumber);
  scan->add_option("--digit", scan_digit, "single digit")->check(CLI::Range(1, 9));
  auto* prove = app.add_subcommand("prove", "prove one digit or block");
  auto* pd = prove->add_option("--digit", digit, "digit 1..9")->check(CLI::Range(1, 9));
  auto* pb = prove->add_option("--block", block, "block 10..99")->check(CLI::Range(10, 99));
  pd->excludes(pb);
  prove->add_option("--emit", emit, "write the certificate here");
  prove->add_option("--budget", budget, "largest m2 for the modulus search")->check(CLI::PositiveNumber);
  auto* prove_all = app.add_subcommand("prove-all", "prove every digit 1..9");
  prove_all->add_option("--emit-dir", emit_dir, "write digit-d.cert files here");
  auto* check = app.add_subcommand("check", "verify a certificate file");
  check->add_option("path", check_path, "certificate")->required();
  auto* pell = app.add_subcommand("pell", "solutions of x^2 - D y^2 = N");
  pell->add_option("--d", pell_d, "D")->required();
  pell->add_option("--n", pell_n, "N")->required();
  pell->add_option("--y-limit", pell_limit, "largest y")->required();
  auto* hensel = app.add_subcommand("hensel", "square ending in K eights and a nine");
  hensel->add_option("--eights", eights, "K")->required();
  auto* table1 = app.add_subcommand("table1", "residues of the d = 1 even-case family mod 5 and 7");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (search->parsed()) {
      const auto r = brute_force_digits(max_k);
      print_report(out, r, "digit");
      err << "search: " << r.elapsed.count() << " s\n";
      return kExitOk;
    }
    if (search_blocks->parsed()) {
      const auto r = brute_force_blocks(max_k_blocks);
      print_report(out, r, "block");
      err << "search-blocks: " << r.elapsed.count() << " s\n";
      return kExitOk;
    }
    if (scan->parsed()) {
      const auto r = square_test_scan(scan_digit ? std::optional<Digit>(Digit(*scan_digit)) : std::nullopt, max_i);
      print_report(out, r, "digit");
      err << "scan: " << r.elapsed.count() << " s\n";
      return kExitOk;
    }
    if (prove->parsed()) return cmd_prove(out, err, digit, block, emit, budget);
    if (prove_all->parsed()) return cmd_prove_all(out, err, emit_dir);
    if (check->parsed()) return cmd_check(out, check_path);
    if (pell->parsed()) return cmd_pell(out, pell_d, pell_n, pell_limit);
    if (hensel->parsed()) return cmd_hensel(out, eights);
    if (table1->parsed()) return cmd_table1(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace repdigit
