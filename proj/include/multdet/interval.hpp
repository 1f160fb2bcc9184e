#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace multdet {

/// Closed real interval [lo, hi]; endpoints may be infinite. Arithmetic
/// rounds outward by one ulp so that enclosures survive double rounding.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  static Interval hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

  bool contains(double v) const { return lo <= v && v <= hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  bool upper_infinite() const { return std::isinf(hi) && hi > 0; }
  double width() const { return hi - lo; }
  double midpoint() const { return upper_infinite() ? hi : 0.5 * (lo + hi); }
  /// Distance from v to the interval (0 inside).
  double distance(double v) const { return v < lo ? lo - v : (v > hi ? v - hi : 0.0); }

  Interval widened(double slack) const { return {lo - slack, hi + slack}; }
  Interval outward() const {
    return {std::nextafter(lo, -std::numeric_limits<double>::infinity()),
            std::nextafter(hi, std::numeric_limits<double>::infinity())};
  }

  friend Interval operator+(const Interval& a, const Interval& b) { return Interval{a.lo + b.lo, a.hi + b.hi}.outward(); }
  friend Interval operator-(const Interval& a, const Interval& b) { return Interval{a.lo - b.hi, a.hi - b.lo}.outward(); }
  friend Interval operator*(const Interval& a, const Interval& b) {
    auto mul = [](double x, double y) {
      // 0 * inf counts as 0: a zero factor kills an unbounded one here.
      if (x == 0.0 || y == 0.0) return 0.0;
      return x * y;
    };
    const double c[4] = {mul(a.lo, b.lo), mul(a.lo, b.hi), mul(a.hi, b.lo), mul(a.hi, b.hi)};
    return Interval{*std::min_element(c, c + 4), *std::max_element(c, c + 4)}.outward();
  }
};

}  // namespace multdet
