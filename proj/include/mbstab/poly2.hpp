#pragma once

#include "mbstab/geometry.hpp"
#include "mbstab/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace mbstab {

/// Sparse bivariate polynomial with exact rational coefficients.
/// Keys are (x exponent, y exponent); zero coefficients are never stored.
/// Immutable once built; a double-precision copy of the coefficients is kept
/// for fast evaluation.
class Poly2 {
 public:
  using Exponents = std::pair<int, int>;

  Poly2() = default;
  explicit Poly2(std::map<Exponents, Rational> terms);

  static Poly2 constant(const Rational& c);
  static Poly2 monomial(int x_exp, int y_exp, const Rational& c = 1);

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous(int degree) const;
  Rational coefficient(int x_exp, int y_exp) const;

  Poly2 dx() const;
  Poly2 dy() const;

  double evaluate(double x, double y) const;
  double evaluate(Vec2 p) const { return evaluate(p[0], p[1]); }
  Interval enclose(Interval x, Interval y) const;

  friend Poly2 operator+(const Poly2& a, const Poly2& b);
  friend Poly2 operator-(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Rational& s, const Poly2& a);
  friend Poly2 operator-(const Poly2& a) { return Rational(-1) * a; }
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

 private:
  struct Term {
    int x_exp;
    int y_exp;
    double coeff;
  };

  std::map<Exponents, Rational> terms_;
  std::vector<Term> numeric_;
};

/// Polynomial vector field u d/dx + v d/dy.
struct PlanarPolyField {
  Poly2 u;
  Poly2 v;

  Vec2 evaluate(Vec2 p) const { return {u.evaluate(p), v.evaluate(p)}; }
  Poly2 divergence() const { return u.dx() + v.dy(); }
  /// Derivative of g along the field, u g_x + v g_y, as an exact polynomial.
  Poly2 apply(const Poly2& g) const { return u * g.dx() + v * g.dy(); }
  PlanarPolyField scaled(const Rational& s) const { return {s * u, s * v}; }

  friend bool operator==(const PlanarPolyField& a, const PlanarPolyField& b) {
    return a.u == b.u && a.v == b.v;
  }
};

}  // namespace mbstab
