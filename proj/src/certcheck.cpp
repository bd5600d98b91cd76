#include "repdigit/certcheck.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "repdigit/prover.hpp"

namespace repdigit {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line),
      message_(message) {}

// ---------------------------------------------------------------------------
// Serialization

namespace {

class Writer {
 public:
  void section(const std::string& name) {
    if (!out_.empty()) out_ += '\n';
    out_ += '[' + name + "]\n";
  }
  void kv(const std::string& key, const std::string& value) {
    out_ += key + ':';
    if (!value.empty()) out_ += ' ' + value;
    out_ += '\n';
  }
  template <class T>
  void num(const std::string& key, const T& v) {
    if constexpr (std::is_arithmetic_v<T>)
      kv(key, std::to_string(v));
    else
      kv(key, v.str());
  }
  template <class T>
  void set(const std::string& key, const std::vector<T>& values) {
    std::string s;
    for (const T& v : values) {
      if (!s.empty()) s += ',';
      if constexpr (std::is_arithmetic_v<T>)
        s += std::to_string(v);
      else
        s += v.str();
    }
    kv(key, s);
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

void write_header(Writer& w, const CaseHeader& h) {
  w.kv("case", h.label);
  w.num("D", h.D);
  w.num("N", h.N);
  w.kv("coordinate", coord_name(h.coord));
  w.num("multiplier", h.multiplier);
  w.num("scale", h.scale);
  w.num("stride", h.stride);
  w.num("offset", h.offset);
}

void write_step(Writer& w, const std::string& name, const ProofStep& step) {
  w.section(name);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WitnessScanStep>) {
          w.kv("kind", "witness-scan");
          w.num("i-first", s.i_first);
          w.num("i-last", s.i_last);
          w.set("square-at", s.square_at);
        } else if constexpr (std::is_same_v<T, WitnessStep>) {
          w.kv("kind", "witness");
          w.num("i", s.i);
          w.num("D", s.D);
          w.num("root", s.root);
          w.num("k", s.k);
        } else if constexpr (std::is_same_v<T, ScreenStep>) {
          w.kv("kind", s.quadratic_residue_argument ? "qr-screen" : "screen");
          w.num("modulus", s.modulus);
          w.num("i-first", s.i_first);
          w.num("stride", s.stride);
          w.set("residues", s.residues);
        } else if constexpr (std::is_same_v<T, SmallCaseStep>) {
          w.kv("kind", "small-case");
          write_header(w, s.header);
          w.num("r-first", s.r_first);
          w.num("r-last", s.r_last);
          w.num("coordinate-limit", s.coordinate_limit);
          w.set("family-coordinates", s.family_coordinates);
          w.set("hits", s.hits);
        } else if constexpr (std::is_same_v<T, FiniteStep>) {
          w.kv("kind", "finite");
          write_header(w, s.header);
          w.num("r-first", s.r_first);
          w.num("solutions", s.solutions.size());
          w.set("hits", s.hits);
          for (std::size_t j = 0; j < s.solutions.size(); ++j) {
            w.section(name + ".solution-" + std::to_string(j + 1));
            w.num("x", s.solutions[j].x);
            w.num("y", s.solutions[j].y);
          }
        } else if constexpr (std::is_same_v<T, ObstructionStep>) {
          const ObstructionCertificate& c = s.certificate;
          w.kv("kind", "obstruction");
          write_header(w, c.header);
          w.num("unit-u", c.unit.u);
          w.num("unit-v", c.unit.v);
          w.num("rep-bound", c.rep_bound);
          w.num("brute-force-limit", c.brute_force_limit);
          w.num("r-cert", c.r_cert);
          w.kv("historical-match", c.historical_match ? "yes" : "no");
          w.num("families", c.bases.size());
          w.num("sieves", c.sieves.size());
          for (std::size_t j = 0; j < c.bases.size(); ++j) {
            w.section(name + ".family-" + std::to_string(j + 1));
            w.num("x", c.bases[j].x);
            w.num("y", c.bases[j].y);
          }
          for (std::size_t k = 0; k < c.sieves.size(); ++k) {
            const Sieve& sv = c.sieves[k];
            const std::string sname = name + ".sieve-" + std::to_string(k + 1);
            w.section(sname);
            w.num("m1", sv.m1);
            w.num("m2", sv.m2);
            w.num("r-cert", sv.r_cert);
            w.num("ten-power-period", sv.ten_power_period);
            w.num("ten-power-preperiod", sv.ten_power_preperiod);
            w.set("ten-power-attained", sv.ten_power_attained);
            for (std::size_t j = 0; j < sv.families.size(); ++j) {
              const SieveFamilyRecord& f = sv.families[j];
              w.section(sname + ".family-" + std::to_string(j + 1));
              w.num("period-m1", f.period_m1);
              w.num("period-m2", f.period_m2);
              w.set("zero-indices", f.zero_indices);
              w.set("values-m2", f.values_m2);
              w.num("admissible-period", f.admissible_period);
              w.set("admissible", f.admissible);
            }
          }
        }
      },
      step);
}

}  // namespace

std::string serialize(const ProofDocument& doc) {
  Writer w;
  w.section("proof");
  w.kv("problem", doc.problem.label());
  w.kv("status", doc.status == ProofStatus::proven ? "proven" : "unresolved");
  w.set("solutions", doc.solutions);
  w.num("steps", doc.steps.size());
  w.num("unresolved", doc.unresolved.size());
  for (std::size_t j = 0; j < doc.steps.size(); ++j) write_step(w, "step-" + std::to_string(j + 1), doc.steps[j]);
  for (std::size_t j = 0; j < doc.unresolved.size(); ++j) {
    const UnresolvedNote& u = doc.unresolved[j];
    w.section("unresolved-" + std::to_string(j + 1));
    w.kv("case", u.case_label);
    w.num("budget", u.budget);
    w.num("moduli-tried", u.moduli_tried);
    w.num("largest-m2", u.largest_m2);
    w.num("clearance-i", u.clearance_i);
    w.kv("reason", u.reason);
  }
  return w.take();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
};

struct RawSection {
  std::size_t line = 0;
  std::vector<Entry> entries;
};

bool valid_name(std::string_view s, bool allow_dot) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [&](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '-' ||
           (allow_dot && ch == '.');
  });
}

bool canonical_unsigned(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) return false;
  return s == "0" || s.front() != '0';
}

class Reader {
 public:
  Reader(std::string name, const RawSection& raw) : name_(std::move(name)), raw_(raw) {}

  std::size_t line() const { return raw_.line; }

  const Entry& entry(const std::string& key) {
    for (const Entry& e : raw_.entries) {
      if (e.key == key) {
        used_.insert(key);
        return e;
      }
    }
    throw ParseError(raw_.line, "missing key '" + key + "' in section [" + name_ + "]");
  }
  std::string text(const std::string& key) { return entry(key).value; }

  std::uint64_t u64(const std::string& key) {
    const Entry& e = entry(key);
    return to_u64(e.value, e.line);
  }
  unsigned small(const std::string& key) {
    const Entry& e = entry(key);
    const std::uint64_t v = to_u64(e.value, e.line);
    if (v > 1'000'000) throw ParseError(e.line, "integer out of range for '" + key + "'");
    return static_cast<unsigned>(v);
  }
  std::uint64_t modulus(const std::string& key) {
    const Entry& e = entry(key);
    const std::uint64_t v = to_u64(e.value, e.line);
    if (v < 2) throw ParseError(e.line, "modulus below 2");
    return v;
  }
  Natural natural(const std::string& key) {
    const Entry& e = entry(key);
    if (!canonical_unsigned(e.value)) throw ParseError(e.line, "non-decimal integer '" + e.value + "'");
    return Natural::parse(e.value);
  }
  Integer integer(const std::string& key) {
    const Entry& e = entry(key);
    std::string_view digits = e.value;
    const bool negative = !digits.empty() && digits.front() == '-';
    if (negative) digits.remove_prefix(1);
    if (!canonical_unsigned(digits) || (negative && digits == "0"))
      throw ParseError(e.line, "non-decimal integer '" + e.value + "'");
    return Integer::parse(e.value);
  }
  std::vector<std::uint64_t> u64_set(const std::string& key) {
    const Entry& e = entry(key);
    std::vector<std::uint64_t> out;
    for (const std::string& item : split(e.value, e.line)) out.push_back(to_u64(item, e.line));
    if (!std::is_sorted(out.begin(), out.end()) ||
        std::adjacent_find(out.begin(), out.end()) != out.end())
      throw ParseError(e.line, "unsorted set for '" + key + "'");
    return out;
  }
  std::vector<Natural> natural_set(const std::string& key) {
    const Entry& e = entry(key);
    std::vector<Natural> out;
    for (const std::string& item : split(e.value, e.line)) {
      if (!canonical_unsigned(item)) throw ParseError(e.line, "non-decimal integer '" + item + "'");
      out.push_back(Natural::parse(item));
    }
    for (std::size_t j = 1; j < out.size(); ++j)
      if (!(out[j - 1] < out[j])) throw ParseError(e.line, "unsorted set for '" + key + "'");
    return out;
  }
  Coord coord(const std::string& key) {
    const Entry& e = entry(key);
    if (e.value == "x") return Coord::x;
    if (e.value == "y") return Coord::y;
    throw ParseError(e.line, "coordinate must be x or y");
  }

  void finish() const {
    for (const Entry& e : raw_.entries)
      if (!used_.contains(e.key)) throw ParseError(e.line, "unknown key '" + e.key + "' in section [" + name_ + "]");
  }

 private:
  static std::uint64_t to_u64(const std::string& s, std::size_t line) {
    if (!canonical_unsigned(s)) throw ParseError(line, "non-decimal integer '" + s + "'");
    if (s.size() > 19) throw ParseError(line, "integer out of range '" + s + "'");
    return std::stoull(s);
  }
  static std::vector<std::string> split(const std::string& s, std::size_t line) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = s.find(',', start);
      std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (item.empty()) throw ParseError(line, "empty set element");
      out.push_back(std::move(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  std::string name_;
  const RawSection& raw_;
  std::set<std::string> used_;
};

class Document {
 public:
  explicit Document(std::string_view text) {
    if (!text.empty() && text.back() != '\n')
      throw ParseError(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1,
                       "missing final newline (truncated file?)");
    std::size_t line_no = 0;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t nl = text.find('\n', pos);
      const std::string_view line = text.substr(pos, nl - pos);
      pos = nl + 1;
      ++line_no;
      if (line.empty()) continue;
      if (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')
        throw ParseError(line_no, "trailing whitespace");
      if (line.front() == '[') {
        if (line.back() != ']') throw ParseError(line_no, "malformed section header");
        const std::string name(line.substr(1, line.size() - 2));
        if (!valid_name(name, true)) throw ParseError(line_no, "malformed section name");
        if (sections_.contains(name)) throw ParseError(line_no, "duplicate section [" + name + "]");
        sections_[name].line = line_no;
        order_.push_back(name);
        current = name;
        continue;
      }
      if (current.empty()) throw ParseError(line_no, "record outside any section");
      const std::size_t colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'key: value'");
      const std::string key(line.substr(0, colon));
      if (!valid_name(key, false)) throw ParseError(line_no, "malformed key");
      std::string value;
      if (colon + 1 < line.size()) {
        if (line[colon + 1] != ' ' || colon + 2 >= line.size() || line[colon + 2] == ' ')
          throw ParseError(line_no, "expected 'key: value'");
        value = std::string(line.substr(colon + 2));
      }
      RawSection& sec = sections_[current];
      for (const Entry& e : sec.entries)
        if (e.key == key) throw ParseError(line_no, "duplicate key '" + key + "'");
      sec.entries.push_back({key, std::move(value), line_no});
    }
  }

  Reader section(const std::string& name) {
    auto it = sections_.find(name);
    if (it == sections_.end()) throw ParseError(0, "missing section [" + name + "]");
    used_.insert(name);
    return Reader(name, it->second);
  }

  void finish() const {
    for (const std::string& name : order_)
      if (!used_.contains(name)) throw ParseError(sections_.at(name).line, "unknown section [" + name + "]");
  }

 private:
  std::map<std::string, RawSection> sections_;
  std::vector<std::string> order_;
  std::set<std::string> used_;
};

Problem parse_problem(const Entry& e) {
  std::istringstream in(e.value);
  std::string kind, num;
  in >> kind >> num;
  std::string rest;
  if (in >> rest || e.value != kind + " " + num || !canonical_unsigned(num) || num.size() > 3) throw ParseError(e.line, "invalid problem");
  const int v = std::stoi(num);
  try {
    if (kind == "digit") return Problem::of_digit(Digit(v));
    if (kind == "block") return Problem::of_block(Block(v));
  } catch (const std::domain_error&) {
  }
  throw ParseError(e.line, "invalid problem '" + e.value + "'");
}

CaseHeader read_header(Reader& r) {
  CaseHeader h;
  h.label = r.text("case");
  if (h.label.empty()) throw ParseError(r.line(), "empty case label");
  h.D = r.natural("D");
  h.N = r.integer("N");
  h.coord = r.coord("coordinate");
  h.multiplier = r.u64("multiplier");
  h.scale = r.u64("scale");
  h.stride = r.small("stride");
  h.offset = r.small("offset");
  if (h.stride == 0) throw ParseError(r.line(), "stride must be positive");
  return h;
}

ProofStep read_step(Document& doc, const std::string& name) {
  Reader r = doc.section(name);
  const Entry& kind_entry = r.entry("kind");
  const std::string kind = kind_entry.value;
  ProofStep out;
  if (kind == "witness-scan") {
    WitnessScanStep s;
    s.i_first = r.small("i-first");
    s.i_last = r.small("i-last");
    s.square_at = r.u64_set("square-at");
    out = s;
  } else if (kind == "witness") {
    WitnessStep s;
    s.i = r.small("i");
    s.D = r.natural("D");
    s.root = r.natural("root");
    s.k = r.natural("k");
    out = s;
  } else if (kind == "screen" || kind == "qr-screen") {
    ScreenStep s;
    s.quadratic_residue_argument = kind == "qr-screen";
    s.modulus = r.modulus("modulus");
    s.i_first = r.small("i-first");
    s.stride = r.small("stride");
    if (s.stride == 0) throw ParseError(r.line(), "stride must be positive");
    s.residues = r.u64_set("residues");
    out = s;
  } else if (kind == "small-case") {
    SmallCaseStep s;
    s.header = read_header(r);
    s.r_first = r.small("r-first");
    s.r_last = r.small("r-last");
    s.coordinate_limit = r.natural("coordinate-limit");
    s.family_coordinates = r.natural_set("family-coordinates");
    s.hits = r.u64_set("hits");
    out = s;
  } else if (kind == "finite") {
    FiniteStep s;
    s.header = read_header(r);
    s.r_first = r.small("r-first");
    const std::uint64_t count = r.small("solutions");
    s.hits = r.u64_set("hits");
    for (std::uint64_t j = 1; j <= count; ++j) {
      Reader sr = doc.section(name + ".solution-" + std::to_string(j));
      s.solutions.push_back({sr.integer("x"), sr.integer("y")});
      sr.finish();
    }
    out = s;
  } else if (kind == "obstruction") {
    ObstructionCertificate c;
    c.header = read_header(r);
    c.unit.u = r.natural("unit-u");
    c.unit.v = r.natural("unit-v");
    c.rep_bound = r.natural("rep-bound");
    c.brute_force_limit = r.u64("brute-force-limit");
    c.r_cert = r.small("r-cert");
    const Entry& pm = r.entry("historical-match");
    if (pm.value != "yes" && pm.value != "no") throw ParseError(pm.line, "historical-match must be yes or no");
    c.historical_match = pm.value == "yes";
    const std::uint64_t families = r.small("families");
    const std::uint64_t sieves = r.small("sieves");
    for (std::uint64_t j = 1; j <= families; ++j) {
      Reader fr = doc.section(name + ".family-" + std::to_string(j));
      c.bases.push_back({fr.integer("x"), fr.integer("y")});
      fr.finish();
    }
    for (std::uint64_t k = 1; k <= sieves; ++k) {
      const std::string sname = name + ".sieve-" + std::to_string(k);
      Reader sr = doc.section(sname);
      Sieve sv;
      sv.m1 = sr.modulus("m1");
      sv.m2 = sr.modulus("m2");
      sv.r_cert = sr.small("r-cert");
      sv.ten_power_period = sr.u64("ten-power-period");
      sv.ten_power_preperiod = sr.u64("ten-power-preperiod");
      sv.ten_power_attained = sr.u64_set("ten-power-attained");
      sr.finish();
      for (std::uint64_t j = 1; j <= families; ++j) {
        Reader fr = doc.section(sname + ".family-" + std::to_string(j));
        SieveFamilyRecord f;
        f.period_m1 = fr.u64("period-m1");
        f.period_m2 = fr.u64("period-m2");
        f.zero_indices = fr.u64_set("zero-indices");
        f.values_m2 = fr.u64_set("values-m2");
        f.admissible_period = fr.u64("admissible-period");
        f.admissible = fr.u64_set("admissible");
        fr.finish();
        sv.families.push_back(std::move(f));
      }
      c.sieves.push_back(std::move(sv));
    }
    out = ObstructionStep{std::move(c)};
  } else {
    throw ParseError(kind_entry.line, "unknown step kind '" + kind + "'");
  }
  r.finish();
  return out;
}

}  // namespace

ProofDocument parse(std::string_view text) {
  Document doc(text);
  ProofDocument out;
  Reader head = doc.section("proof");
  out.problem = parse_problem(head.entry("problem"));
  const Entry& status = head.entry("status");
  if (status.value == "proven")
    out.status = ProofStatus::proven;
  else if (status.value == "unresolved")
    out.status = ProofStatus::unresolved;
  else
    throw ParseError(status.line, "status must be proven or unresolved");
  out.solutions = head.natural_set("solutions");
  const unsigned steps = head.small("steps");
  const unsigned unresolved = head.small("unresolved");
  head.finish();
  for (unsigned j = 1; j <= steps; ++j) out.steps.push_back(read_step(doc, "step-" + std::to_string(j)));
  for (unsigned j = 1; j <= unresolved; ++j) {
    Reader r = doc.section("unresolved-" + std::to_string(j));
    UnresolvedNote u;
    u.case_label = r.text("case");
    u.budget = r.u64("budget");
    u.moduli_tried = r.u64("moduli-tried");
    u.largest_m2 = r.u64("largest-m2");
    u.clearance_i = r.small("clearance-i");
    u.reason = r.text("reason");
    r.finish();
    out.unresolved.push_back(std::move(u));
  }
  doc.finish();
  return out;
}

}  // namespace repdigit

// ---------------------------------------------------------------------------
// Verification. Everything below recomputes from first principles with its
// own arithmetic; the prover's routines are deliberately not reused.

namespace repdigit {
namespace {

constexpr std::uint64_t kCheckerModulusLimit = 10'000'000;
constexpr std::uint64_t kCheckerExpandLimit = 100'000'000;
constexpr std::uint64_t kBruteForceLimit = 10'000;
constexpr unsigned kScanLimit = 10'000;

using u128 = unsigned __int128;

struct Failure {
  std::string reason;
};

[[noreturn]] void fail(std::string reason) { throw Failure{std::move(reason)}; }

mpz_class pow_ui(unsigned long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

struct Pattern {
  unsigned long base;
  unsigned long divisor;
  unsigned long mult;
};

Pattern pattern_of(const Problem& p) {
  if (p.kind == Problem::Kind::digit) return {10, 9, 8UL * static_cast<unsigned long>(p.value)};
  return {100, 99, 8UL * static_cast<unsigned long>(p.value)};
}

mpz_class repeated(const Problem& p, unsigned i) {
  const Pattern pat = pattern_of(p);
  return (pow_ui(pat.base, i) - 1) / pat.divisor * (pat.mult / 8);
}

mpz_class disc(const Problem& p, unsigned i) { return repeated(p, i) * 8 + 1; }

bool is_square(const mpz_class& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

mpz_class sqrt_floor(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::uint64_t mod_u64(const mpz_class& v, std::uint64_t m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mpz_class(static_cast<unsigned long>(m)).get_mpz_t());
  return r.get_ui();
}

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return static_cast<std::uint64_t>(u128(a) * b % m); }

std::vector<std::uint64_t> squares_mod(std::uint64_t m) {
  std::vector<bool> hit(m, false);
  for (std::uint64_t z = 0; z < m; ++z) hit[mul(z, z, m)] = true;
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < m; ++r)
    if (hit[r]) out.push_back(r);
  return out;
}

// Discriminant residues mod m over i = i_first, i_first + stride, ...:
// the state base^i mod divisor*m decides the residue and cycles.
std::vector<std::uint64_t> residue_closure(const Problem& p, std::uint64_t m, unsigned i_first, unsigned stride) {
  const Pattern pat = pattern_of(p);
  const std::uint64_t big = pat.divisor * m;
  std::uint64_t state = 1 % big;
  for (unsigned k = 0; k < i_first; ++k) state = mul(state, pat.base, big);
  std::uint64_t step = 1 % big;
  for (unsigned k = 0; k < stride; ++k) step = mul(step, pat.base, big);
  std::set<std::uint64_t> states, values;
  while (states.insert(state).second) {
    const std::uint64_t repunit = (state + big - 1) % big / pat.divisor;
    values.insert((1 + mul(pat.mult % m, repunit % m, m)) % m);
    state = mul(state, step, big);
  }
  return {values.begin(), values.end()};
}

// The case equation is an exact rewriting of "discriminant(i) is a square"
// with coordinate = multiplier * 10^r and i = stride * r + offset. Compared
// as polynomials in t = 100^r.
bool reduces(const Problem& p, const CaseHeader& h) {
  const Pattern pat = pattern_of(p);
  if (h.multiplier == 0 || h.scale == 0) return false;
  if (pow_ui(pat.base, h.stride) != 100) return false;
  const mpz_class B = pow_ui(pat.base, h.offset);
  const mpz_class S = mpz_class(static_cast<unsigned long>(h.scale)) * static_cast<unsigned long>(h.scale);
  const mpz_class c2 = mpz_class(static_cast<unsigned long>(h.multiplier)) * static_cast<unsigned long>(h.multiplier);
  const mpz_class div(pat.divisor), mp(pat.mult);
  const mpz_class& D = h.D.mpz();
  const mpz_class& N = h.N.mpz();
  if (h.coord == Coord::y) return S * (div - mp) == N * div && S * mp * B == D * c2 * div;
  return D * S * (div - mp) == -N * div && D * S * mp * B == c2 * div;
}

struct Pt {
  mpz_class x, y;
  bool operator<(const Pt& o) const { return cmp(y, o.y) != 0 ? cmp(y, o.y) < 0 : cmp(x, o.x) < 0; }
  bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
};

struct Unit {
  mpz_class u, v;
};

Unit cf_unit(const mpz_class& D) {
  const mpz_class a0 = sqrt_floor(D);
  mpz_class m = 0, d = 1, a = a0, p0 = 1, p1 = a0, q0 = 0, q1 = 1;
  while (p1 * p1 - D * q1 * q1 != 1) {
    m = d * a - m;
    d = (D - m * m) / d;
    a = (a0 + m) / d;
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    p1 = p2;
    q0 = q1;
    q1 = q2;
  }
  return {p1, q1};
}

Pt up(const Pt& p, const mpz_class& D, const Unit& e) { return {e.u * p.x + D * e.v * p.y, e.v * p.x + e.u * p.y}; }
Pt down(const Pt& p, const mpz_class& D, const Unit& e) { return {e.u * p.x - D * e.v * p.y, e.u * p.y - e.v * p.x}; }
bool nonneg(const Pt& p) { return sgn(p.x) >= 0 && sgn(p.y) >= 0; }

std::vector<Pt> region(const mpz_class& D, const mpz_class& N, const mpz_class& bound) {
  std::vector<Pt> out;
  auto record = [&](const mpz_class& x, const mpz_class& y) {
    out.push_back({x, y});
    if (sgn(x) != 0 && sgn(y) != 0) out.push_back({-x, y});
  };
  if (bound.fits_ulong_p() && D.fits_ulong_p() && N.fits_slong_p() && bound < (mpz_class(1) << 40) &&
      D < (mpz_class(1) << 40) && abs(N) < (mpz_class(1) << 60)) {
    const std::uint64_t b = bound.get_ui(), d = D.get_ui();
    const __int128 n = N.get_si();
    std::array<bool, 64> sq64{};
    for (unsigned z = 0; z < 64; ++z) sq64[z * z % 64] = true;
    for (std::uint64_t y = 0; y <= b; ++y) {
      const __int128 t = n + static_cast<__int128>(d) * y * y;
      if (t < 0 || !sq64[static_cast<unsigned>(t & 63)]) continue;
      auto s = static_cast<u128>(std::sqrt(static_cast<long double>(t)));
      while (s * s > static_cast<u128>(t)) --s;
      while ((s + 1) * (s + 1) <= static_cast<u128>(t)) ++s;
      if (s * s == static_cast<u128>(t)) {
        mpz_class xs;
        mpz_import(xs.get_mpz_t(), 1, -1, sizeof(u128), 0, 0, &s);
        record(xs, mpz_class(static_cast<unsigned long>(y)));
      }
    }
    return out;
  }
  if (bound > kCheckerExpandLimit) fail("representative bound too large to check");
  for (mpz_class y = 0; y <= bound; ++y) {
    const mpz_class t = N + D * y * y;
    if (is_square(t)) record(sqrt_floor(t), y);
  }
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> orbit_mod(std::uint64_t m, const mpz_class& D, const Unit& e,
                                                               const Pt& base) {
  const std::uint64_t u = mod_u64(e.u, m), v = mod_u64(e.v, m), dv = mul(mod_u64(D, m), v, m);
  const std::pair<std::uint64_t, std::uint64_t> start{mod_u64(base.x, m), mod_u64(base.y, m)};
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out{start};
  auto cur = start;
  for (;;) {
    cur = {(mul(u, cur.first, m) + mul(dv, cur.second, m)) % m, (mul(v, cur.first, m) + mul(u, cur.second, m)) % m};
    if (cur == start) return out;
    if (out.size() > kCheckerExpandLimit) fail("orbit period exceeds checker limit");
    out.push_back(cur);
  }
}

struct TenPower {
  std::uint64_t period = 0, preperiod = 0;
  std::vector<std::uint64_t> attained;
};

TenPower ten_power(std::uint64_t c, std::uint64_t m, unsigned r) {
  std::uint64_t s = c % m;
  for (unsigned k = 0; k < r; ++k) s = mul(s, 10, m);
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  std::uint64_t n = 0;
  while (!seen.contains(s)) {
    seen.emplace(s, n++);
    s = mul(s, 10, m);
  }
  TenPower t;
  t.preperiod = seen.at(s);
  t.period = n - t.preperiod;
  for (const auto& [value, idx] : seen) t.attained.push_back(value);
  std::sort(t.attained.begin(), t.attained.end());
  return t;
}

mpz_class coordinate(const Pt& p, Coord c) { return c == Coord::x ? p.x : p.y; }

mpz_class power_value(std::uint64_t multiplier, unsigned r) {
  return mpz_class(static_cast<unsigned long>(multiplier)) * pow_ui(10, r);
}

Pt to_pt(const Point& p) { return {p.x.mpz(), p.y.mpz()}; }

class Checker {
 public:
  explicit Checker(const ProofDocument& doc) : doc_(doc) {}

  void run() {
    if (doc_.status == ProofStatus::unresolved || !doc_.unresolved.empty()) {
      if (doc_.status == ProofStatus::proven) fail("status proven but unresolved cases are listed");
      fail("proof is unresolved" +
           (doc_.unresolved.empty() ? std::string() : ": case " + doc_.unresolved.front().case_label));
    }
    for (std::size_t j = 0; j < doc_.steps.size(); ++j) {
      step_ = j + 1;
      std::visit([&](const auto& s) { check(s); }, doc_.steps[j]);
    }
    step_ = 0;
    for (unsigned i : witnesses_)
      if (!required_.contains(i)) fail("unjustified witness for i = " + std::to_string(i));
    for (unsigned i : required_)
      if (!witnesses_.contains(i)) fail("missing witness for i = " + std::to_string(i));
    if (auto gap = coverage_gap(doc_.steps)) fail("coverage gap: " + *gap);
    if (auto overlap = coverage_overlap(doc_.steps)) fail("overlapping steps: " + *overlap);
    std::set<mpz_class> sols;
    for (unsigned i : witnesses_) sols.insert(repeated(doc_.problem, i));
    std::vector<mpz_class> expected(sols.begin(), sols.end());
    std::vector<mpz_class> recorded;
    for (const Natural& n : doc_.solutions) recorded.push_back(n.mpz());
    if (expected != recorded) fail("solution list mismatch");
  }

  std::string where() const { return step_ ? "step " + std::to_string(step_) + ": " : std::string(); }

 private:
  void check(const WitnessScanStep& s) {
    if (s.i_first < 1 || s.i_last < s.i_first) fail("empty or invalid witness-scan range");
    if (s.i_last > kScanLimit) fail("witness-scan range exceeds checker limit");
    std::vector<std::uint64_t> squares;
    for (unsigned i = s.i_first; i <= s.i_last; ++i)
      if (is_square(disc(doc_.problem, i))) squares.push_back(i);
    if (squares != s.square_at) fail("recomputation mismatch: witness-scan squares");
    for (std::uint64_t i : squares) required_.insert(static_cast<unsigned>(i));
  }

  void check(const WitnessStep& s) {
    if (s.i < 1 || s.i > kScanLimit) fail("witness index out of range");
    if (s.D.mpz() != disc(doc_.problem, s.i)) fail("witness discriminant mismatch");
    if (s.root.mpz() * s.root.mpz() != s.D.mpz()) fail("witness square mismatch");
    if (s.k.mpz() * 2 + 1 != s.root.mpz()) fail("witness k mismatch");
    witnesses_.insert(s.i);
  }

  void check(const ScreenStep& s) {
    if (s.modulus > kCheckerModulusLimit) fail("modulus exceeds checker limit");
    if (s.i_first < 1) fail("screen must start at i >= 1");
    std::uint64_t m = s.modulus;
    while (m % 10 == 0) m /= 10;
    if (s.quadratic_residue_argument == (m == 1)) fail("screen kind does not match its modulus");
    if (residue_closure(doc_.problem, s.modulus, s.i_first, s.stride) != s.residues)
      fail("recomputation mismatch: screen residues");
    const auto qr = squares_mod(s.modulus);
    for (std::uint64_t r : s.residues)
      if (std::binary_search(qr.begin(), qr.end(), r)) fail("screen residue " + std::to_string(r) + " is a quadratic residue");
  }

  void check_header(const CaseHeader& h) {
    const bool label_ok = h.label == "all" ? h.stride == 1 && h.offset == 0
                          : h.label == "even" ? h.stride == 2 && h.offset == 0
                          : h.label == "odd" && h.stride == 2 && h.offset == 1;
    if (!label_ok) fail("case label does not match its index progression");
    if (!reduces(doc_.problem, h)) fail("case equation does not reduce the problem");
  }

  void check(const ObstructionStep& step) {
    const ObstructionCertificate& c = step.certificate;
    const CaseHeader& h = c.header;
    check_header(h);
    const mpz_class& D = h.D.mpz();
    const mpz_class& N = h.N.mpz();
    if (is_square(D) || D < 2) fail("equation D must be a nonsquare >= 2");
    if (sgn(N) == 0) fail("equation N must be nonzero");
    const Unit e{c.unit.u.mpz(), c.unit.v.mpz()};
    if (e.u * e.u - D * e.v * e.v != 1) fail("unit norm is not 1");
    const Unit fundamental = cf_unit(D);
    if (fundamental.u != e.u || fundamental.v != e.v) fail("unit is not fundamental");

    std::vector<Pt> bases;
    for (const Point& b : c.bases) bases.push_back(to_pt(b));
    for (const Pt& b : bases) {
      if (b.x * b.x - D * b.y * b.y != N) fail("base does not satisfy the equation");
      if (!nonneg(b)) fail("base is negative");
      if (nonneg(down(b, D, e))) fail("base is not the first nonnegative member of its class");
    }
    if (!std::is_sorted(bases.begin(), bases.end()) || std::adjacent_find(bases.begin(), bases.end()) != bases.end())
      fail("bases not in canonical order");

    const mpz_class absN = abs(N);
    const mpz_class bound = sgn(N) < 0 ? sqrt_floor(absN * (e.u + 1) / (D * 2)) + 1
                                       : sqrt_floor(absN * e.v * e.v / ((e.u + 1) * 2)) + 1;
    if (bound != c.rep_bound.mpz()) fail("representative bound mismatch");
    std::set<Pt> starts;
    for (Pt p : region(D, N, bound)) {
      if (sgn(p.x) < 0 && p.x * p.x > D * p.y * p.y) p = {-p.x, -p.y};  // positive associate
      while (!nonneg(p)) p = up(p, D, e);
      for (Pt q = down(p, D, e); nonneg(q); q = down(p, D, e)) p = q;
      starts.insert(p);
    }
    if (std::vector<Pt>(starts.begin(), starts.end()) != bases) fail("base set incomplete");

    if (c.brute_force_limit != kBruteForceLimit) fail("brute-force limit must be 10^4");
    std::vector<Pt> brute, walked;
    for (std::uint64_t y = 0; y <= c.brute_force_limit; ++y) {
      const mpz_class yy(static_cast<unsigned long>(y));
      const mpz_class t = N + D * yy * yy;
      if (is_square(t)) brute.push_back({sqrt_floor(t), yy});
    }
    const mpz_class limit(static_cast<unsigned long>(c.brute_force_limit));
    for (const Pt& b : bases)
      for (Pt p = b; p.y <= limit; p = up(p, D, e)) walked.push_back(p);
    std::sort(walked.begin(), walked.end());
    if (walked != brute) fail("brute-force mismatch");

    if (c.sieves.empty()) fail("obstruction has no sieve");
    unsigned r_cert = 0;
    std::vector<std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>> admissible(bases.size());
    for (const Sieve& s : c.sieves) {
      r_cert = std::max(r_cert, s.r_cert);
      if (s.m1 > kCheckerModulusLimit || s.m2 > kCheckerModulusLimit) fail("modulus exceeds checker limit");
      if (mod_u64(power_value(h.multiplier, s.r_cert), s.m1) != 0)
        fail("m1 does not divide multiplier*10^r");
      const TenPower t = ten_power(h.multiplier, s.m2, s.r_cert);
      if (t.period != s.ten_power_period || t.preperiod != s.ten_power_preperiod || t.attained != s.ten_power_attained)
        fail("recomputation mismatch: ten-power orbit");
      if (s.families.size() != bases.size()) fail("sieve family count mismatch");
      std::vector<bool> in_ten(s.m2, false);
      for (std::uint64_t v : t.attained) in_ten[v] = true;
      for (std::size_t f = 0; f < bases.size(); ++f) {
        const SieveFamilyRecord& rec = s.families[f];
        const auto o1 = orbit_mod(s.m1, D, e, bases[f]);
        const auto o2 = orbit_mod(s.m2, D, e, bases[f]);
        auto pick = [&](const std::pair<std::uint64_t, std::uint64_t>& pr) {
          return h.coord == Coord::x ? pr.first : pr.second;
        };
        std::vector<std::uint64_t> zeros;
        for (std::uint64_t n = 0; n < o1.size(); ++n)
          if (pick(o1[n]) == 0) zeros.push_back(n);
        const std::uint64_t g = std::gcd<std::uint64_t>(o1.size(), o2.size());
        std::vector<bool> phase(g, false);
        for (std::uint64_t a : zeros) phase[a % g] = true;
        std::set<std::uint64_t> values;
        bool any_admissible = false;
        for (std::uint64_t b = 0; b < o2.size(); ++b) {
          if (!phase[b % g]) continue;
          values.insert(pick(o2[b]));
          any_admissible = any_admissible || in_ten[pick(o2[b])];
        }
        const std::uint64_t lcm = o1.size() / g * o2.size();
        std::vector<std::uint64_t> adm;
        if (any_admissible) {
          if (lcm > kCheckerExpandLimit) fail("admissible set exceeds checker limit");
          for (std::uint64_t n = 0; n < lcm; ++n)
            if (pick(o1[n % o1.size()]) == 0 && in_ten[pick(o2[n % o2.size()])]) adm.push_back(n);
        }
        if (rec.period_m1 != o1.size() || rec.period_m2 != o2.size())
          fail("recomputation mismatch: orbit period");
        if (rec.zero_indices != zeros) fail("recomputation mismatch: index set mod m1");
        if (rec.values_m2 != std::vector<std::uint64_t>(values.begin(), values.end()))
          fail("recomputation mismatch: value set mod m2");
        if (rec.admissible_period != lcm || rec.admissible != adm) fail("recomputation mismatch: admissible indices");
        admissible[f].push_back({lcm, std::move(adm)});
      }
    }
    if (r_cert != c.r_cert) fail("r-cert mismatch");
    for (const auto& per_sieve : admissible) {
      if (c.sieves.size() == 1) {
        if (!per_sieve.front().second.empty()) fail("value set intersects ten-power orbit");
        continue;
      }
      // n survives every sieve.
      std::uint64_t period = 1;
      for (const auto& [p, members] : per_sieve) {
        if (members.empty()) period = 0;
        if (period == 0) break;
        period = std::lcm(period, p);
        if (period > kCheckerExpandLimit) fail("sieve intersection exceeds checker limit");
      }
      if (period == 0) continue;
      for (std::uint64_t n = 0; n < period; ++n) {
        const bool all = std::all_of(per_sieve.begin(), per_sieve.end(), [&](const auto& ps) {
          return std::binary_search(ps.second.begin(), ps.second.end(), n % ps.first);
        });
        if (all) fail("sieve intersection nonempty");
      }
    }
    const auto hist = historical_pair(doc_.problem, h.label);
    const bool matching =
        c.sieves.size() == 1 && hist && hist->first == c.sieves.front().m1 && hist->second == c.sieves.front().m2;
    if (matching != c.historical_match) fail("historical-match flag mismatch");
    obstructions_.push_back(&c);
  }

  void check(const SmallCaseStep& s) {
    check_header(s.header);
    if (s.r_last < s.r_first) fail("empty small-case range");
    if (s.r_last > 10'000) fail("small-case range exceeds checker limit");
    const mpz_class limit = power_value(s.header.multiplier, s.r_last);
    if (limit != s.coordinate_limit.mpz()) fail("coordinate limit mismatch");
    const ObstructionCertificate* cert = matching_obstruction(s.header);
    if (!cert) fail("small case without a matching obstruction step");
    const mpz_class& D = s.header.D.mpz();
    const Unit e{cert->unit.u.mpz(), cert->unit.v.mpz()};
    std::set<mpz_class> coords;
    for (const Point& b : cert->bases)
      for (Pt p = to_pt(b); nonneg(p) && coordinate(p, s.header.coord) <= limit; p = up(p, D, e))
        coords.insert(coordinate(p, s.header.coord));
    std::vector<mpz_class> recorded;
    for (const Natural& n : s.family_coordinates) recorded.push_back(n.mpz());
    if (std::vector<mpz_class>(coords.begin(), coords.end()) != recorded)
      fail("recomputation mismatch: family coordinates");
    std::vector<std::uint64_t> hits;
    for (unsigned r = s.r_first; r <= s.r_last; ++r)
      if (solves(s.header, power_value(s.header.multiplier, r))) hits.push_back(r);
    if (hits != s.hits) fail("recomputation mismatch: small-case hits");
    for (std::uint64_t r : hits) required_.insert(s.header.stride * static_cast<unsigned>(r) + s.header.offset);
  }

  void check(const FiniteStep& s) {
    check_header(s.header);
    const mpz_class& D = s.header.D.mpz();
    const mpz_class& N = s.header.N.mpz();
    if (!is_square(D)) fail("finite step needs a square D");
    if (sgn(N) == 0) fail("equation N must be nonzero");
    const mpz_class absN = abs(N);
    if (absN > kCheckerExpandLimit) fail("finite step bound exceeds checker limit");
    std::vector<Pt> sols;
    for (mpz_class y = 0; y <= absN; ++y) {
      const mpz_class t = N + D * y * y;
      if (is_square(t)) sols.push_back({sqrt_floor(t), y});
    }
    std::vector<Pt> recorded;
    for (const Point& p : s.solutions) recorded.push_back(to_pt(p));
    if (sols != recorded) fail("recomputation mismatch: finite solutions");
    std::vector<std::uint64_t> hits;
    for (const Pt& p : sols) {
      const mpz_class w = coordinate(p, s.header.coord);
      for (unsigned r = s.r_first; power_value(s.header.multiplier, r) <= w; ++r)
        if (power_value(s.header.multiplier, r) == w) hits.push_back(r);
    }
    std::sort(hits.begin(), hits.end());
    if (hits != s.hits) fail("recomputation mismatch: finite hits");
    for (std::uint64_t r : hits) required_.insert(s.header.stride * static_cast<unsigned>(r) + s.header.offset);
  }

  // coordinate = w belongs to a nonnegative solution of the case equation.
  static bool solves(const CaseHeader& h, const mpz_class& w) {
    const mpz_class& D = h.D.mpz();
    const mpz_class& N = h.N.mpz();
    if (h.coord == Coord::y) return is_square(N + D * w * w);
    const mpz_class t = w * w - N;
    return sgn(t) >= 0 && mpz_divisible_p(t.get_mpz_t(), D.get_mpz_t()) && is_square(t / D);
  }

  const ObstructionCertificate* matching_obstruction(const CaseHeader& h) const {
    for (const ProofStep& st : doc_.steps)
      if (const auto* o = std::get_if<ObstructionStep>(&st); o && o->certificate.header == h) return &o->certificate;
    return nullptr;
  }

  const ProofDocument& doc_;
  std::size_t step_ = 0;
  std::set<unsigned> witnesses_;
  std::set<unsigned> required_;
  std::vector<const ObstructionCertificate*> obstructions_;
};

}  // namespace

Verdict verify(const ProofDocument& doc) {
  Checker checker(doc);
  try {
    checker.run();
  } catch (const Failure& f) {
    return Verdict::fail(checker.where() + f.reason);
  } catch (const std::exception& ex) {
    return Verdict::fail(checker.where() + "malformed proof: " + ex.what());
  }
  return Verdict::ok();
}

}  // namespace repdigit
