#include "repdigit/pell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace repdigit {
namespace {

bool nonnegative(const Point& p) { return p.x.sign() >= 0 && p.y.sign() >= 0; }

// x + y*sqrt(D) < 0 for a point with y >= 0.
bool negative_value(const Point& p, const Natural& D) {
  if (p.x.sign() >= 0) return false;
  return p.x * p.x > Integer(D) * p.y * p.y;
}

using i128 = __int128;
using u128 = unsigned __int128;

std::uint64_t isqrt_u128(u128 t) {
  auto s = static_cast<u128>(std::sqrt(static_cast<long double>(t)));
  while (s * s > t) --s;
  while ((s + 1) * (s + 1) <= t) ++s;
  return static_cast<std::uint64_t>(s);
}

// Residue filters for the squareness test in the region scan.
struct SquareFilter {
  static constexpr std::array<std::uint32_t, 5> kModuli{64, 63, 65, 11, 17};
  std::array<std::vector<bool>, kModuli.size()> is_square;

  SquareFilter() {
    for (std::size_t j = 0; j < kModuli.size(); ++j) {
      is_square[j].assign(kModuli[j], false);
      for (std::uint32_t z = 0; z < kModuli[j]; ++z) is_square[j][(z * z) % kModuli[j]] = true;
    }
  }
};

std::vector<Point> scan_fast(std::int64_t N, std::uint64_t D, std::uint64_t bound) {
  static const SquareFilter filter;
  constexpr std::size_t kF = SquareFilter::kModuli.size();
  std::vector<Point> out;
  i128 t = N;  // N + D*y^2 at the current y
  std::array<std::uint32_t, kF> t_mod{};
  std::array<std::uint32_t, kF> delta_mod{};  // D*(2y+1) mod q
  std::array<std::uint32_t, kF> step_mod{};   // 2D mod q
  for (std::size_t j = 0; j < kF; ++j) {
    const std::int64_t q = SquareFilter::kModuli[j];
    t_mod[j] = static_cast<std::uint32_t>(((N % q) + q) % q);
    delta_mod[j] = static_cast<std::uint32_t>(D % q);
    step_mod[j] = static_cast<std::uint32_t>((2 * D) % q);
  }
  for (std::uint64_t y = 0;; ++y) {
    if (t >= 0) {
      bool candidate = true;
      for (std::size_t j = 0; j < kF && candidate; ++j) candidate = filter.is_square[j][t_mod[j]];
      if (candidate) {
        const std::uint64_t x = isqrt_u128(static_cast<u128>(t));
        if (static_cast<u128>(x) * x == static_cast<u128>(t)) {
          const Integer xi(mpz_class(std::to_string(x)));
          const Integer yi(mpz_class(std::to_string(y)));
          out.push_back({xi, yi});
          if (x != 0 && y != 0) out.push_back({-xi, yi});
        }
      }
    }
    if (y == bound) break;
    t += static_cast<i128>(D) * static_cast<i128>(2 * y + 1);
    for (std::size_t j = 0; j < kF; ++j) {
      const std::uint32_t q = SquareFilter::kModuli[j];
      t_mod[j] = (t_mod[j] + delta_mod[j]) % q;
      delta_mod[j] = (delta_mod[j] + step_mod[j]) % q;
    }
  }
  return out;
}

std::vector<Point> scan_exact(const PellEquation& eq, const Natural& bound) {
  std::vector<Point> out;
  for (Natural y(0); y <= bound; y += Natural(1)) {
    const Integer t = eq.N() + Integer(eq.D()) * Integer(y) * Integer(y);
    if (t.sign() < 0) continue;
    if (auto root = is_perfect_square(Natural(t))) {
      out.push_back({*root, y});
      if (!root->is_zero() && !y.is_zero()) out.push_back({-Integer(*root), y});
    }
  }
  return out;
}

bool point_less(const Point& a, const Point& b) {
  if (a.y != b.y) return a.y < b.y;
  return a.x < b.x;
}

}  // namespace

PellEquation::PellEquation(Natural D, Integer N) : D_(std::move(D)), N_(std::move(N)) {
  if (D_ < Natural(2)) throw std::domain_error("Pell equation needs D >= 2");
  if (is_perfect_square(D_)) throw std::domain_error("Pell equation needs nonsquare D, got " + D_.str());
  if (N_.is_zero()) throw std::domain_error("Pell equation needs N != 0");
}

Point unit_step(const Point& p, const Natural& D, const FundamentalUnit& unit) {
  const Integer u(unit.u), v(unit.v), d(D);
  return {u * p.x + d * v * p.y, v * p.x + u * p.y};
}

Point unit_step_back(const Point& p, const Natural& D, const FundamentalUnit& unit) {
  const Integer u(unit.u), v(unit.v), d(D);
  return {u * p.x - d * v * p.y, u * p.y - v * p.x};
}

SolutionFamily::SolutionFamily(PellEquation equation, Point base, FundamentalUnit unit)
    : equation_(std::move(equation)), base_(std::move(base)), unit_(std::move(unit)) {
  if (!equation_.satisfied_by(base_.x, base_.y))
    throw std::invalid_argument("family base does not satisfy the equation");
  const Integer u(unit_.u), v(unit_.v);
  if (u * u - Integer(equation_.D()) * v * v != Integer(1))
    throw std::invalid_argument("family unit does not have norm 1");
}

Point SolutionFamily::at(std::size_t n) const {
  Point p = base_;
  for (std::size_t k = 0; k < n; ++k) p = unit_step(p, equation_.D(), unit_);
  return p;
}

FundamentalUnit fundamental_unit(const Natural& D) {
  if (D < Natural(2)) throw std::domain_error("fundamental_unit: D must be >= 2");
  const Natural a0 = isqrt(D);
  if (a0 * a0 == D) throw std::domain_error("fundamental_unit: D is a perfect square");
  // Continued fraction of sqrt(D): m_{k+1} = d_k a_k - m_k,
  // d_{k+1} = (D - m_{k+1}^2) / d_k, a_{k+1} = (a0 + m_{k+1}) / d_{k+1}.
  const Integer d_int(D), root(a0);
  Integer m(0), den(1), a(root);
  Integer p_prev(1), p(root), q_prev(0), q(1);
  while (p * p - d_int * q * q != Integer(1)) {
    m = den * a - m;
    den = (d_int - m * m) / den;
    a = (root + m) / den;
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::exchange(p, std::move(p_next));
    q_prev = std::exchange(q, std::move(q_next));
  }
  return {Natural(p), Natural(q)};
}

Natural class_representative_bound(const PellEquation& eq, const FundamentalUnit& unit) {
  const Natural absN(eq.N().abs());
  if (eq.N().sign() < 0) {
    // y <= sqrt(|N| (u+1) / (2D))
    return isqrt(absN * (unit.u + 1) / (eq.D() * 2)) + 1;
  }
  // y <= v sqrt(N / (2(u+1)))
  return isqrt(absN * unit.v * unit.v / ((unit.u + 1) * 2)) + 1;
}

std::vector<Point> region_solutions(const PellEquation& eq, const FundamentalUnit& unit,
                                    std::uint64_t max_scan) {
  const Natural bound = class_representative_bound(eq, unit);
  const auto b = bound.to_u64();
  if (!b || *b > max_scan)
    throw std::length_error("class-representative bound " + bound.str() + " exceeds scan limit");
  const auto d = eq.D().to_u64();
  const auto n = eq.N().to_i64();
  std::vector<Point> out;
  if (d && n && *d < (std::uint64_t{1} << 40) && *b < (std::uint64_t{1} << 40) &&
      *n > -(std::int64_t{1} << 60) && *n < (std::int64_t{1} << 60)) {
    out = scan_fast(*n, *d, *b);
  } else {
    out = scan_exact(eq, bound);
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

std::vector<Point> class_bases(const PellEquation& eq, const FundamentalUnit& unit, std::uint64_t max_scan) {
  std::vector<Point> bases;
  for (Point p : region_solutions(eq, unit, max_scan)) {
    if (negative_value(p, eq.D())) p = {-p.x, -p.y};
    while (!nonnegative(p)) p = unit_step(p, eq.D(), unit);
    for (;;) {
      Point below = unit_step_back(p, eq.D(), unit);
      if (!nonnegative(below)) break;
      p = std::move(below);
    }
    if (std::find(bases.begin(), bases.end(), p) == bases.end()) bases.push_back(std::move(p));
  }
  std::sort(bases.begin(), bases.end(), point_less);
  return bases;
}

std::vector<Point> base_solutions(const PellEquation& eq) {
  const FundamentalUnit unit = fundamental_unit(eq.D());
  std::vector<Point> out;
  for (const Point& p : class_bases(eq, unit)) {
    out.push_back(p);
    if (p.x.sign() > 0 && p.y.sign() > 0) out.push_back({-p.x, p.y});
  }
  return out;
}

std::vector<SolutionFamily> families(const PellEquation& eq) {
  const FundamentalUnit unit = fundamental_unit(eq.D());
  std::vector<SolutionFamily> out;
  for (Point& p : class_bases(eq, unit)) out.emplace_back(eq, std::move(p), unit);
  return out;
}

Solution next_solution(const SolutionFamily& fam, const Solution& s) {
  const Point p = unit_step({s.x, s.y}, fam.equation().D(), fam.unit());
  return {Natural(p.x), Natural(p.y), s.family_index, s.step + 1};
}

std::vector<Solution> enumerate_solutions(const std::vector<SolutionFamily>& fams, const Natural& y_limit) {
  std::vector<Solution> out;
  for (std::size_t f = 0; f < fams.size(); ++f) {
    const SolutionFamily& fam = fams[f];
    Point p = fam.base();
    const Integer limit(y_limit);
    for (std::size_t n = 0;; ++n) {
      if (nonnegative(p)) {
        if (p.y > limit) break;
        out.push_back({Natural(p.x), Natural(p.y), f, n});
      } else if (negative_value(p, fam.equation().D())) {
        break;  // a negative class never turns nonnegative
      }
      p = unit_step(p, fam.equation().D(), fam.unit());
    }
  }
  std::sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Solution& a, const Solution& b) { return a.x == b.x && a.y == b.y; }),
            out.end());
  return out;
}

std::vector<Solution> enumerate_solutions(const PellEquation& eq, const Natural& y_limit) {
  return enumerate_solutions(families(eq), y_limit);
}

}  // namespace repdigit
