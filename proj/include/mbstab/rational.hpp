#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace mbstab {

using Rational = mpq_class;

/// Parses "3", "-3/2" or a plain decimal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical text form ("3/2", "-4", "0").
std::string to_string(const Rational& q);

int sign(const Rational& q);

/// Dense univariate polynomial with exact rational coefficients, lowest degree first.
/// The coefficient vector is kept trimmed, so the zero polynomial has no coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }

  UniPoly derivative() const;
  Rational evaluate(const Rational& t) const;

  /// Remainder of Euclidean division by a nonzero divisor.
  UniPoly remainder(const UniPoly& divisor) const;
  UniPoly negated() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd (zero if both inputs are zero).
UniPoly gcd(UniPoly a, UniPoly b);

/// Number of distinct real roots, counted with a Sturm sequence in exact arithmetic.
int count_distinct_real_roots(const UniPoly& p);

}  // namespace mbstab
