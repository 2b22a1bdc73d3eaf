#include "mbstab/rational.hpp"

#include "mbstab/error.hpp"

#include <cctype>

namespace mbstab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = strip(text);
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ValidationError("not a rational number: '" + std::string(text) + "'");
    }
    mpz_class d{std::string(den)};
    if (d == 0) throw ValidationError("zero denominator: '" + std::string(text) + "'");
    q = Rational(mpz_class{std::string(num)}, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw ValidationError("not a rational number: '" + std::string(text) + "'");
    }
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    mpz_class num{std::string(whole.empty() ? "0" : whole) + std::string(frac)};
    q = Rational(num, den);
  } else {
    if (!all_digits(body)) throw ValidationError("not a rational number: '" + std::string(text) + "'");
    q = Rational(mpz_class{std::string(body)});
  }
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

int sign(const Rational& q) { return sgn(q); }

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::derivative() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    out.push_back(coeffs_[i] * static_cast<long>(i));
  }
  return UniPoly(std::move(out));
}

Rational UniPoly::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniPoly::remainder(const UniPoly& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> r = coeffs_;
  const int dd = divisor.degree();
  const Rational& lead = divisor.leading();
  for (int top = static_cast<int>(r.size()) - 1; top >= dd; --top) {
    if (r[top] == 0) continue;
    Rational factor = r[top] / lead;
    for (int k = 0; k <= dd; ++k) r[top - dd + k] -= factor * divisor.coeffs_[k];
  }
  r.resize(static_cast<std::size_t>(std::max(dd, 0)));
  return UniPoly(std::move(r));
}

UniPoly UniPoly::negated() const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c = -c;
  return UniPoly(std::move(out));
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.remainder(b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  std::vector<Rational> monic = a.coeffs();
  Rational lead = monic.back();
  for (auto& c : monic) c /= lead;
  return UniPoly(std::move(monic));
}

int count_distinct_real_roots(const UniPoly& p) {
  if (p.is_zero()) throw ValidationError("zero polynomial");
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    chain.push_back(chain[chain.size() - 2].remainder(chain.back()).negated());
  }
  chain.pop_back();

  auto variations = [&](bool at_plus_infinity) {
    int count = 0;
    int previous = 0;
    for (const auto& q : chain) {
      int s = sign(q.leading());
      if (!at_plus_infinity && q.degree() % 2 == 1) s = -s;
      if (previous != 0 && s != previous) ++count;
      previous = s;
    }
    return count;
  };
  return variations(false) - variations(true);
}

}  // namespace mbstab
