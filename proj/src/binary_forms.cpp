#include "mbstab/binary_forms.hpp"

#include "mbstab/error.hpp"

#include <cmath>
#include <numbers>

namespace mbstab {

BinaryForm::BinaryForm(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw ValidationError("binary form needs degree >= 1 (at least two coefficients)");
  bool all_zero = true;
  for (auto& c : coeffs_) {
    c.canonicalize();
    if (c != 0) all_zero = false;
  }
  if (all_zero) throw ValidationError("zero polynomial");
  numeric_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) numeric_.push_back(c.get_d());
}

double BinaryForm::evaluate(Vec2 p) const {
  // Horner in y/x would divide by x; expand by powers instead.
  const int d = degree();
  double acc = 0.0;
  double ypow = 1.0;
  for (int i = 0; i <= d; ++i) {
    acc += numeric_[i] * std::pow(p[0], d - i) * ypow;
    ypow *= p[1];
  }
  return acc;
}

Rational BinaryForm::evaluate(const Rational& x, const Rational& y) const {
  const int d = degree();
  Rational acc = 0;
  for (int i = 0; i <= d; ++i) {
    Rational term = coeffs_[i];
    for (int k = 0; k < d - i; ++k) term *= x;
    for (int k = 0; k < i; ++k) term *= y;
    acc += term;
  }
  return acc;
}

UniPoly BinaryForm::dehomogenize() const { return UniPoly(coeffs_); }

int BinaryForm::x_multiplicity() const { return degree() - dehomogenize().degree(); }

BinaryForm BinaryForm::scaled(const Rational& c) const {
  std::vector<Rational> out = coeffs_;
  for (auto& a : out) a *= c;
  return BinaryForm(std::move(out));
}

Poly2 BinaryForm::to_poly() const {
  std::map<Poly2::Exponents, Rational> terms;
  const int d = degree();
  for (int i = 0; i <= d; ++i) terms[{d - i, i}] = coeffs_[i];
  return Poly2(std::move(terms));
}

const char* to_string(SingularityKind kind) {
  return kind == SingularityKind::LocalExtremum ? "LocalExtremum" : "GeneralizedSaddle";
}

bool is_square_free(const BinaryForm& form) {
  const UniPoly p = form.dehomogenize();
  if (p.degree() < form.degree() - 1) return false;
  return gcd(p, p.derivative()).degree() == 0;
}

FactorProfile factor_profile(const BinaryForm& form) {
  if (!is_square_free(form)) throw ValidationError("multiple factors");
  FactorProfile out;
  out.square_free = true;
  out.has_x_factor = form.coeffs().back() == 0;
  out.real_linear_count = count_distinct_real_roots(form.dehomogenize()) + (out.has_x_factor ? 1 : 0);
  return out;
}

int sign_change_oracle(const BinaryForm& form, int samples) {
  if (samples < 16 * form.degree()) {
    throw ValidationError("sign_change_oracle needs at least 16*degree samples");
  }
  constexpr int kMaxRetries = 8;
  const double step = 2.0 * std::numbers::pi / samples;
  double phase = 0.0;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<int> signs(static_cast<std::size_t>(samples));
    bool hit_zero = false;
    for (int j = 0; j < samples; ++j) {
      const double theta = phase + j * step;
      const double v = form.evaluate({std::cos(theta), std::sin(theta)});
      if (v == 0.0) {
        hit_zero = true;
        break;
      }
      signs[static_cast<std::size_t>(j)] = v > 0 ? 1 : -1;
    }
    if (hit_zero) {
      // Irrational fraction of the spacing so retries never realign with a root.
      phase += step * (std::numbers::sqrt2 - 1.0) / (attempt + 1);
      continue;
    }
    int changes = 0;
    for (int j = 0; j < samples; ++j) {
      if (signs[static_cast<std::size_t>(j)] != signs[static_cast<std::size_t>((j + 1) % samples)]) ++changes;
    }
    return changes / 2;
  }
  throw std::runtime_error("sign_change_oracle: samples kept landing on zeros");
}

SingularityClass classify_singularity(const BinaryForm& form) {
  if (form.degree() <= 1) throw ValidationError("regular germ, not a singularity");
  const FactorProfile profile = factor_profile(form);
  if (profile.real_linear_count == 0) return {SingularityKind::LocalExtremum, 0};
  return {SingularityKind::GeneralizedSaddle, 2 * profile.real_linear_count};
}

PlanarPolyField hamiltonian_of(const Poly2& g) { return {-g.dy(), g.dx()}; }

PlanarPolyField hamiltonian_of(const BinaryForm& form) { return hamiltonian_of(form.to_poly()); }

}  // namespace mbstab
