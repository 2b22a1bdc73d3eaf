#include "mbstab/binary_forms.hpp"
#include "mbstab/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace mbstab;
using testing::form;

namespace {

/// Plain Euclid on coefficient vectors, kept apart from UniPoly.
std::vector<Rational> euclid_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  auto trim = [](std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size() && !a.empty()) {
      const Rational q = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
      trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace

TEST_SUITE("binary_forms") {
  TEST_CASE("evaluate by direct substitution") {
    CHECK(form({1, 0, 1}).evaluate(Vec2{0, 0}) == 0.0);
    CHECK(form({0, 1, 0}).evaluate(Vec2{2, 3}) == 6.0);
    CHECK(form({1, 0, -3, 0}).evaluate(Vec2{1, 1}) == -2.0);
    CHECK(form({1, 0, -3, 0}).evaluate(Rational(1), Rational(1)) == -2);
  }

  TEST_CASE("zero polynomial is rejected") {
    CHECK_THROWS_WITH_AS(form({0, 0, 0}), "zero polynomial", ValidationError);
  }

  TEST_CASE("square-freeness") {
    CHECK_FALSE(is_square_free(form({0, 1, 0, 0})));     // x^2 y
    CHECK(is_square_free(form({0, 1, 0, -1, 0})));       // xy(x-y)(x+y) = x^3 y - x y^3
    const BinaryForm sq = form({1, 0, 2, 0, 1});          // (x^2+y^2)^2
    CHECK_FALSE(is_square_free(sq));
    const auto& c = sq.coeffs();
    std::vector<Rational> p(c.begin(), c.end());
    std::vector<Rational> dp;
    for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * static_cast<int>(i));
    CHECK(euclid_gcd(p, dp).size() > 1);
  }

  TEST_CASE("real linear factors") {
    CHECK(factor_profile(form({1, 0, 1})).real_linear_count == 0);
    CHECK(factor_profile(form({0, 1, 0})).real_linear_count == 2);
    CHECK(factor_profile(form({1, 0, -3, 0})).real_linear_count == 3);
    CHECK(sign_change_oracle(form({1, 0, -3, 0}), 256 * 3) == 3);
    CHECK_THROWS_WITH_AS(factor_profile(form({0, 1, 0, 0})), "multiple factors", ValidationError);
  }

  TEST_CASE("sign change oracle") {
    CHECK(sign_change_oracle(form({1, 0, 1}), 64) == 0);
    CHECK(sign_change_oracle(form({0, 1, 0}), 64) == 2);
    CHECK(sign_change_oracle(form({0, 1, 0, 1}), 64) == 1);  // y(x^2+y^2)
    CHECK_THROWS_AS(sign_change_oracle(form({1, 0, 1}), 8), ValidationError);
  }

  TEST_CASE("classification") {
    CHECK(classify_singularity(form({1, 0, 1})) == SingularityClass{SingularityKind::LocalExtremum, 0});
    CHECK(classify_singularity(form({0, 1, 0})) == SingularityClass{SingularityKind::GeneralizedSaddle, 4});
    const auto monkey = classify_singularity(form({1, 0, -3, 0}));
    CHECK(monkey == SingularityClass{SingularityKind::GeneralizedSaddle, 6});
    CHECK(monkey.separatrix_count == 2 * sign_change_oracle(form({1, 0, -3, 0}), 768));
    CHECK_THROWS_AS(classify_singularity(form({1, 1})), ValidationError);
  }

  TEST_CASE("hamiltonian fields") {
    const PlanarPolyField rot = hamiltonian_of(form({1, 0, 1}));
    CHECK(rot.u == Poly2::monomial(0, 1, -2));
    CHECK(rot.v == Poly2::monomial(1, 0, 2));
    const PlanarPolyField hyp = hamiltonian_of(form({0, 1, 0}));
    CHECK(hyp.u == Poly2::monomial(1, 0, -1));
    CHECK(hyp.v == Poly2::monomial(0, 1, 1));
    const PlanarPolyField cubic = hamiltonian_of(form({0, 0, 0, 1}));  // y^3
    CHECK(cubic.u == Poly2::monomial(0, 2, -3));
    CHECK(cubic.v.is_zero());
  }

  TEST_CASE("randomized properties") {
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> scale(-7, 7);
    for (int trial = 0; trial < 120; ++trial) {
      const int d = 2 + trial % 7;
      const BinaryForm f = testing::random_square_free(rng, d);
      CHECK(factor_profile(f).real_linear_count == sign_change_oracle(f, 256 * d));
      const Poly2 g = f.to_poly();
      CHECK(hamiltonian_of(f).apply(g).is_zero());
      int c = 0;
      while (c == 0) c = scale(rng);
      CHECK(classify_singularity(f) == classify_singularity(f.scaled(Rational(c, 3))));
      const double lambda = 0.5 + u(rng);
      const Vec2 p{u(rng), u(rng)};
      const double lhs = f.evaluate(lambda * p);
      const double rhs = std::pow(lambda, d) * f.evaluate(p);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
    }
  }
}
