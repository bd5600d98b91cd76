#include "repdigit/search.hpp"

#include <algorithm>
#include <string>

namespace repdigit {
namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t triangle(std::uint64_t k) { return k * (k + 1) / 2; }

SearchHit hit(std::uint64_t k, int repeated, unsigned length) {
  return {Natural(static_cast<long long>(k)), Natural(static_cast<long long>(triangle(k))), repeated, length};
}

}  // namespace

SearchReport brute_force_digits(std::uint64_t k_max) {
  const auto start = Clock::now();
  SearchReport report;
  report.bound = k_max;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    std::uint64_t t = triangle(k);
    const auto d = static_cast<int>(t % 10);
    unsigned len = 0;
    while (t > 0 && static_cast<int>(t % 10) == d) {
      t /= 10;
      ++len;
    }
    if (t == 0) report.hits.push_back(hit(k, d, len));
  }
  report.elapsed = Clock::now() - start;
  return report;
}

SearchReport brute_force_blocks(std::uint64_t k_max) {
  const auto start = Clock::now();
  SearchReport report;
  report.bound = k_max;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    std::uint64_t t = triangle(k);
    if (std::to_string(t).size() % 2 != 0) continue;
    const auto c = static_cast<int>(t % 100);
    unsigned len = 0;
    while (t > 0 && static_cast<int>(t % 100) == c) {
      t /= 100;
      ++len;
    }
    if (t == 0 && c >= 10) report.hits.push_back(hit(k, c, len));
  }
  report.elapsed = Clock::now() - start;
  return report;
}

SearchReport square_test_scan(std::optional<Digit> d, unsigned i_max) {
  const auto start = Clock::now();
  SearchReport report;
  report.bound = i_max;
  for (int digit = 1; digit <= 9; ++digit) {
    if (d && d->value() != digit) continue;
    for (unsigned i = 1; i <= i_max; ++i) {
      const auto root = is_perfect_square(discriminant(Digit(digit), i));
      if (!root) continue;
      const Natural k = (*root - Natural(1)) / Natural(2);
      report.hits.push_back({k, triangular(k), digit, i});
    }
  }
  std::sort(report.hits.begin(), report.hits.end(),
            [](const SearchHit& a, const SearchHit& b) { return a.triangular < b.triangular; });
  report.elapsed = Clock::now() - start;
  return report;
}

}  // namespace repdigit
