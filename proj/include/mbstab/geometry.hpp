#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace mbstab {

using Vec2 = std::array<double, 2>;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator-(Vec2 a) { return {-a[0], -a[1]}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a[0], s * a[1]}; }
inline double dot(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
inline double cross(Vec2 a, Vec2 b) { return a[0] * b[1] - a[1] * b[0]; }
inline double norm(Vec2 a) { return std::hypot(a[0], a[1]); }
/// Rotation by +90 degrees.
inline Vec2 perp(Vec2 a) { return {-a[1], a[0]}; }

/// Closed interval for natural interval extensions of polynomials.
/// Rounding is not directed; enclosures are tight up to floating-point error.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return lo <= v && v <= hi; }
  double width() const { return hi - lo; }
};

inline Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator*(Interval a, Interval b) {
  const double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}
inline Interval operator*(double s, Interval a) {
  return s >= 0 ? Interval{s * a.lo, s * a.hi} : Interval{s * a.hi, s * a.lo};
}

/// Tight enclosure of x^n (even powers are nonnegative).
inline Interval power(Interval a, int n) {
  if (n == 0) return {1.0, 1.0};
  const double l = std::pow(a.lo, n);
  const double h = std::pow(a.hi, n);
  if (n % 2 == 1) return {l, h};
  if (a.lo >= 0) return {l, h};
  if (a.hi <= 0) return {h, l};
  return {0.0, std::max(l, h)};
}

}  // namespace mbstab
