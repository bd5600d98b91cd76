#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "repdigit/natarith.hpp"

namespace repdigit {

// x^2 - D y^2 = N with D >= 2 nonsquare and N != 0.
class PellEquation {
 public:
  PellEquation(Natural D, Integer N);

  const Natural& D() const { return D_; }
  const Integer& N() const { return N_; }
  Integer form(const Integer& x, const Integer& y) const { return x * x - Integer(D_) * y * y; }
  bool satisfied_by(const Integer& x, const Integer& y) const { return form(x, y) == N_; }

  friend bool operator==(const PellEquation&, const PellEquation&) = default;

 private:
  Natural D_;
  Integer N_;
};

// Minimal positive (u, v) with u^2 - D v^2 = 1.
struct FundamentalUnit {
  Natural u;
  Natural v;
  friend bool operator==(const FundamentalUnit&, const FundamentalUnit&) = default;
};

struct Point {
  Integer x;
  Integer y;
  friend bool operator==(const Point&, const Point&) = default;
};

// Multiplication by u + v*sqrt(D): the ascending step of every solution class.
Point unit_step(const Point& p, const Natural& D, const FundamentalUnit& unit);
// Multiplication by u - v*sqrt(D).
Point unit_step_back(const Point& p, const Natural& D, const FundamentalUnit& unit);

// One solution class, walked upward from `base`. The base need not be the
// first nonnegative member (residue-table families start wherever the caller
// says), but it must satisfy the equation.
class SolutionFamily {
 public:
  SolutionFamily(PellEquation equation, Point base, FundamentalUnit unit);

  const PellEquation& equation() const { return equation_; }
  const Point& base() const { return base_; }
  const FundamentalUnit& unit() const { return unit_; }

  // Member n steps above the base.
  Point at(std::size_t n) const;

 private:
  PellEquation equation_;
  Point base_;
  FundamentalUnit unit_;
};

struct Solution {
  Natural x;
  Natural y;
  std::size_t family_index = 0;
  std::size_t step = 0;
  friend bool operator==(const Solution&, const Solution&) = default;
};

FundamentalUnit fundamental_unit(const Natural& D);

// Classical bound on y for one representative per class (any sign of N).
Natural class_representative_bound(const PellEquation& eq, const FundamentalUnit& unit);

inline constexpr std::uint64_t kDefaultMaxScan = std::uint64_t{1} << 34;

// Every (x, y) with 0 <= y <= class_representative_bound and x^2 = N + D y^2,
// both signs of x. Throws std::length_error when the bound exceeds
// `max_scan` (the scan would not finish at desk scale).
std::vector<Point> region_solutions(const PellEquation& eq, const FundamentalUnit& unit,
                                    std::uint64_t max_scan = kDefaultMaxScan);

// First nonnegative member of each class that contains nonnegative
// solutions, ascending by (y, x).
std::vector<Point> class_bases(const PellEquation& eq, const FundamentalUnit& unit,
                               std::uint64_t max_scan = kDefaultMaxScan);

// class_bases plus the sign conjugate (-x0, y0) of every base with x0, y0 > 0.
std::vector<Point> base_solutions(const PellEquation& eq);

std::vector<SolutionFamily> families(const PellEquation& eq);

Solution next_solution(const SolutionFamily& fam, const Solution& s);

// All nonnegative solutions with y <= y_limit, sorted by y then x.
std::vector<Solution> enumerate_solutions(const PellEquation& eq, const Natural& y_limit);
std::vector<Solution> enumerate_solutions(const std::vector<SolutionFamily>& fams, const Natural& y_limit);

}  // namespace repdigit
