#include "mbstab/poly2.hpp"

#include <cmath>

namespace mbstab {

Poly2::Poly2(std::map<Exponents, Rational> terms) {
  for (auto& [e, c] : terms) {
    if (c != 0) terms_.emplace(e, c);
  }
  numeric_.reserve(terms_.size());
  for (const auto& [e, c] : terms_) numeric_.push_back({e.first, e.second, c.get_d()});
}

Poly2 Poly2::constant(const Rational& c) { return Poly2(std::map<Exponents, Rational>{{{0, 0}, c}}); }

Poly2 Poly2::monomial(int x_exp, int y_exp, const Rational& c) { return Poly2(std::map<Exponents, Rational>{{{x_exp, y_exp}, c}}); }

int Poly2::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

bool Poly2::is_homogeneous(int degree) const {
  for (const auto& [e, c] : terms_) {
    if (e.first + e.second != degree) return false;
  }
  return true;
}

Rational Poly2::coefficient(int x_exp, int y_exp) const {
  auto it = terms_.find({x_exp, y_exp});
  return it == terms_.end() ? Rational(0) : it->second;
}

Poly2 Poly2::dx() const {
  std::map<Exponents, Rational> out;
  for (const auto& [e, c] : terms_) {
    if (e.first > 0) out[{e.first - 1, e.second}] += c * e.first;
  }
  return Poly2(std::move(out));
}

Poly2 Poly2::dy() const {
  std::map<Exponents, Rational> out;
  for (const auto& [e, c] : terms_) {
    if (e.second > 0) out[{e.first, e.second - 1}] += c * e.second;
  }
  return Poly2(std::move(out));
}

double Poly2::evaluate(double x, double y) const {
  double acc = 0.0;
  for (const auto& t : numeric_) {
    double m = t.coeff;
    for (int i = 0; i < t.x_exp; ++i) m *= x;
    for (int j = 0; j < t.y_exp; ++j) m *= y;
    acc += m;
  }
  return acc;
}

Interval Poly2::enclose(Interval x, Interval y) const {
  Interval acc{0.0, 0.0};
  for (const auto& t : numeric_) acc = acc + t.coeff * (power(x, t.x_exp) * power(y, t.y_exp));
  return acc;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  auto out = a.terms_;
  for (const auto& [e, c] : b.terms_) out[e] += c;
  return Poly2(std::move(out));
}

Poly2 operator-(const Poly2& a, const Poly2& b) {
  auto out = a.terms_;
  for (const auto& [e, c] : b.terms_) out[e] -= c;
  return Poly2(std::move(out));
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  std::map<Poly2::Exponents, Rational> out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  }
  return Poly2(std::move(out));
}

Poly2 operator*(const Rational& s, const Poly2& a) {
  auto out = a.terms_;
  for (auto& [e, c] : out) c *= s;
  return Poly2(std::move(out));
}

}  // namespace mbstab
