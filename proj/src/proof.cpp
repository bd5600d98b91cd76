#include "repdigit/proof.hpp"

#include <algorithm>
#include <numeric>

namespace repdigit {

RepPattern Problem::pattern() const {
  return kind == Kind::digit ? RepPattern::digit(Digit(value)) : RepPattern::block(Block(value));
}

Natural Problem::repeated_value(unsigned i) const {
  return kind == Kind::digit ? repdigit_value(Digit(value), i) : repblock_value(Block(value), i);
}

Natural Problem::discriminant(unsigned i) const { return repeated_value(i) * 8 + 1; }

std::string Problem::label() const {
  return (kind == Kind::digit ? "digit " : "block ") + std::to_string(value);
}

std::optional<StepScope> scope_of(const ProofStep& step) {
  return std::visit(
      [](const auto& s) -> std::optional<StepScope> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WitnessScanStep>) {
          return StepScope{1, 0, s.i_first, s.i_last};
        } else if constexpr (std::is_same_v<T, ScreenStep>) {
          return StepScope{s.stride, s.i_first % s.stride, s.i_first / s.stride, std::nullopt};
        } else if constexpr (std::is_same_v<T, ObstructionStep>) {
          const auto& c = s.certificate;
          return StepScope{c.header.stride, c.header.offset, c.r_cert, std::nullopt};
        } else if constexpr (std::is_same_v<T, SmallCaseStep>) {
          return StepScope{s.header.stride, s.header.offset, s.r_first, s.r_last};
        } else if constexpr (std::is_same_v<T, FiniteStep>) {
          return StepScope{s.header.stride, s.header.offset, s.r_first, std::nullopt};
        } else {
          return std::nullopt;
        }
      },
      step);
}

namespace {

bool covers(const StepScope& s, std::uint64_t i) {
  if (s.stride == 0 || i < s.offset || (i - s.offset) % s.stride != 0) return false;
  const std::uint64_t r = (i - s.offset) / s.stride;
  return r >= s.r_lo && (!s.r_hi || r <= *s.r_hi);
}

}  // namespace

namespace {

// Count how many scopes claim each i up to the largest finite boundary plus
// one window of lcm(strides); past that point only unbounded progressions
// remain and the pattern repeats.
template <class Fn>
std::optional<std::string> audit(const std::vector<ProofStep>& steps, Fn&& judge) {
  std::vector<StepScope> scopes;
  for (const ProofStep& step : steps)
    if (auto s = scope_of(step)) scopes.push_back(*s);
  if (scopes.empty()) return "no step covers any index";
  std::uint64_t boundary = 1;
  std::uint64_t window = 1;
  for (const StepScope& s : scopes) {
    if (s.stride == 0) return "step with zero stride";
    boundary = std::max<std::uint64_t>(boundary, std::uint64_t{s.stride} * s.r_lo + s.offset);
    if (s.r_hi) boundary = std::max<std::uint64_t>(boundary, std::uint64_t{s.stride} * *s.r_hi + s.offset);
    window = std::lcm(window, std::uint64_t{s.stride});
  }
  for (std::uint64_t i = 1; i <= boundary + window; ++i) {
    const auto count = std::count_if(scopes.begin(), scopes.end(), [&](const StepScope& s) { return covers(s, i); });
    if (auto msg = judge(i, count)) return msg;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> coverage_gap(const std::vector<ProofStep>& steps) {
  return audit(steps, [](std::uint64_t i, std::ptrdiff_t count) -> std::optional<std::string> {
    if (count == 0) return "index i = " + std::to_string(i) + " is not covered by any step";
    return std::nullopt;
  });
}

std::optional<std::string> coverage_overlap(const std::vector<ProofStep>& steps) {
  return audit(steps, [](std::uint64_t i, std::ptrdiff_t count) -> std::optional<std::string> {
    if (count > 1) return "index i = " + std::to_string(i) + " is covered by more than one step";
    return std::nullopt;
  });
}

}  // namespace repdigit
