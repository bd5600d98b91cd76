#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "repdigit/proof.hpp"

namespace repdigit {

// Malformed certificate text. `line()` is 1-based; 0 when the problem is
// not tied to a single line (e.g. a missing section).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

// Canonical line-oriented text: `[section]` headers, `key: value` records,
// decimal integers, comma-separated ascending sets, LF line endings.
std::string serialize(const ProofDocument& doc);
ProofDocument parse(std::string_view text);

struct Verdict {
  bool valid = false;
  std::string reason;  // first failed check when invalid

  static Verdict ok() { return {true, {}}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

// Recomputes every claim from the problem, the case equations and the
// recorded bases alone; recorded tables are only compared, never trusted.
Verdict verify(const ProofDocument& doc);

}  // namespace repdigit
