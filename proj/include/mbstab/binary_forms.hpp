#pragma once

#include "mbstab/geometry.hpp"
#include "mbstab/poly2.hpp"
#include "mbstab/rational.hpp"

#include <cstdint>
#include <vector>

namespace mbstab {

/// Homogeneous polynomial sum_i a_i x^(d-i) y^i in two variables with exact
/// rational coefficients a_0..a_d. Never the zero form; degree d >= 1.
class BinaryForm {
 public:
  /// Throws ValidationError("zero polynomial") for an all-zero coefficient list.
  explicit BinaryForm(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  double evaluate(Vec2 p) const;
  Rational evaluate(const Rational& x, const Rational& y) const;

  /// p(t) = f(1, t) = sum_i a_i t^i.
  UniPoly dehomogenize() const;
  /// Multiplicity of x as a factor: d - deg p.
  int x_multiplicity() const;

  BinaryForm scaled(const Rational& c) const;
  Poly2 to_poly() const;

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
  std::vector<double> numeric_;
};

struct FactorProfile {
  int real_linear_count = 0;
  bool has_x_factor = false;
  bool square_free = false;
};

enum class SingularityKind { LocalExtremum, GeneralizedSaddle };

struct SingularityClass {
  SingularityKind kind = SingularityKind::LocalExtremum;
  /// 0 for an extremum, 2k for a saddle with k real linear factors.
  int separatrix_count = 0;

  friend bool operator==(const SingularityClass&, const SingularityClass&) = default;
};

const char* to_string(SingularityKind kind);

/// gcd(p, p') constant for p(t) = f(1,t), and x divides f at most once.
bool is_square_free(const BinaryForm& form);

/// Counts distinct real linear factors with a Sturm sequence (plus the factor x when a_d = 0).
/// Throws ValidationError("multiple factors") on non-square-free input.
FactorProfile factor_profile(const BinaryForm& form);

/// Half the number of sign changes of the form along `samples` equally spaced
/// points of the unit circle. Independent floating-point cross-check for
/// factor_profile; a sample that lands on an exact zero shifts the phase and retries.
int sign_change_oracle(const BinaryForm& form, int samples);

/// Extremum when the form is definite, else a saddle with 2k separatrices.
SingularityClass classify_singularity(const BinaryForm& form);

/// Hamiltonian field (-f_y, f_x) for the standard area form dx^dy.
PlanarPolyField hamiltonian_of(const BinaryForm& form);
PlanarPolyField hamiltonian_of(const Poly2& g);

}  // namespace mbstab
