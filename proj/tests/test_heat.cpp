#include "doctest.h"

#include "dtnheat/heat.hpp"
#include "support/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace dtnheat;

namespace {

RandomJetOptions full_options() { return RandomJetOptions{true, true, true, true}; }

double sphere_volume(int m) {
  return 2 * std::pow(std::numbers::pi, (m + 1) / 2.0) / std::tgamma((m + 1) / 2.0);
}

TaggedValue tag(int n, int shift, const Rational& c) { return TaggedValue{n, shift, Complex(c)}; }

std::vector<ProjectionSample> reference_samples(int n, int k, int count, std::uint64_t base) {
  std::vector<ProjectionSample> out;
  const InvariantExpression ref = theorem_reference(n, k);
  for (int i = 0; i < count; ++i) {
    const GeometryJet jet = random_jet(n, 3, base + i, full_options());
    const CurvatureInvariants inv = curvature_package(jet);
    out.push_back({inv, ref.tagged(inv), std::nullopt});
  }
  return out;
}

}  // namespace

TEST_CASE("tau factors") {
  CHECK(tau_factor(1) == Rational(-1));
  CHECK(tau_factor(2) == Rational(-1));
  CHECK(tau_factor(3) == Rational(-1, 2));
  CHECK(tau_factor(5) == Rational(-1, 24));
  CHECK_THROWS_AS(tau_factor(0), std::invalid_argument);

  const GeometryJet jet = GeometryJet::flat(3, 2);
  auto ctx = std::make_shared<SymbolContext>(jet);
  const Symbol s = Symbol::s(ctx);
  CHECK(tau_integral(s) == Symbol::constant(ctx, Complex(-1)));
  CHECK(tau_integral(s * s * s) == Symbol::constant(ctx, Complex(Rational(-1, 2))));
  const Symbol t = s * s * Symbol::xi(ctx, 0) * Symbol::xi(ctx, 0);
  Symbol expected = Symbol::xi(ctx, 0) * Symbol::xi(ctx, 0) * Complex(-1);
  CHECK(tau_integral(t) == expected);
  CHECK_THROWS_AS(tau_integral(Symbol::w1(ctx)), std::invalid_argument);
}

TEST_CASE("displayed xi moments at n = 3") {
  // In units of Gamma(2) vol(S^1) = 2 pi.
  CHECK(xi_moment(3, {0, 0}, 0, 1) == Rational(1));
  CHECK(xi_moment(3, {2, 0}, -2, 1) == Rational(1, 2));
  CHECK(xi_moment(3, {2, 2}, -4, 1) == Rational(1, 8));
}

TEST_CASE("xi moments for general k") {
  for (int n = 3; n <= 8; ++n) {
    for (int k = -1; k <= 3; ++k) {
      const int shift = 1 - k;
      if (n - shift < 1) continue;
      std::vector<int> zero(n - 1, 0), aa(n - 1, 0), a4(n - 1, 0);
      aa[0] = 2;
      a4[0] = 4;
      CHECK(xi_moment(n, zero, k, shift) == Rational(1));
      CHECK(xi_moment(n, aa, k - 2, shift) == Rational(1, n - 1));
      CHECK(xi_moment(n, a4, k - 4, shift) == Rational(3) / (n * n - 1));
      if (n >= 3) {
        std::vector<int> ab(n - 1, 0);
        ab[0] = ab[1] = 2;
        CHECK(xi_moment(n, ab, k - 4, shift) == Rational(1) / (n * n - 1));
      }
    }
  }
}

TEST_CASE("odd moments vanish and divergent moments throw") {
  CHECK(xi_moment(4, {1, 0, 0}, 0, 1) == Rational(0));
  CHECK(xi_moment(4, {2, 3, 1}, -2, 1) == Rational(0));
  CHECK_THROWS_AS(xi_moment(3, {0, 0}, -2, 1), std::domain_error);
  CHECK_THROWS_AS(xi_moment(2, {0}, -1, 1), std::domain_error);
}

TEST_CASE("even moments agree with quadrature") {
  for (int n = 3; n <= 4; ++n) {
    const int dim = n - 1;
    std::vector<std::vector<int>> mus;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b)
        for (int c = 0; a + b + c <= 3; ++c) {
          if (dim == 2 && c > 0) continue;
          std::vector<int> beta{2 * a, 2 * b};
          if (dim == 3) beta.push_back(2 * c);
          mus.push_back(beta);
        }
    for (const auto& beta : mus) {
      int total = 0;
      for (int b : beta) total += b;
      const double angular = testing::sphere_moment(n, beta);
      for (int e : {-1, 0, 2}) {
        const int shift = 1;
        const double exact = xi_moment(n, beta, e - total, shift).get_d() * std::tgamma(n - shift) * sphere_volume(n - 2);
        const double numeric = angular * testing::radial_moment(n - 2 + e);
        INFO("n=" << n << " |beta|=" << total << " e=" << e);
        CHECK(std::abs(numeric - exact) <= 1e-8 * std::abs(exact));
      }
    }
  }
}

TEST_CASE("a0 and a1 closed forms") {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const GeometryJet jet = random_jet(n, 2, seed, full_options());
      const auto a = heat_coefficients(jet, 1);
      CHECK(a[0] == tag(n, 1, 1));
      Rational H = 0;
      for (const auto& k : jet.kappa) H += k;
      CHECK(a[1] == tag(n, 1, H * (n - 2) / (2 * (n - 1))));
      if (n == 2) CHECK(a[1].coeff.is_zero());
    }
  }
}

TEST_CASE("unit ball in R^3 has a2 = 1/(12 pi)") {
  const TaggedValue a2 = heat_coefficient(ball_jet(3, 1), 2);
  // Gamma(1) vol(S^1) / (2 pi)^2 = 1 / (2 pi).
  CHECK(a2 == tag(3, 2, Rational(1, 6)));
}

TEST_CASE("unit balls match the exact trace expansions") {
  // Totals over the sphere: a_k(x) vol(S^{n-1}) = coeff Gamma(n - shift) 2 / (n - 2)!.
  auto total = [](const TaggedValue& v) -> Rational {
    return v.coeff.real() * factorial(v.n - v.gamma_shift - 1) * 2 / factorial(v.n - 2);
  };
  // (1 + e^-t) / (1 - e^-t)^{n-1} = 2 t^{1-n} + ... for lambda = l with harmonic multiplicities.
  CHECK(total(heat_coefficient(ball_jet(3, 1), 2)) == Rational(1, 3));
  CHECK(total(heat_coefficient(ball_jet(4, 1), 3)) == Rational(1, 3));
  CHECK(total(heat_coefficient(ball_jet(5, 1), 3)) == Rational(1));
  CHECK(total(heat_coefficient(ball_jet(5, 1), 2)) == Rational(13, 6));
}

TEST_CASE("coefficient preconditions") {
  CHECK_THROWS_AS(heat_coefficient(random_jet(3, 3, 1), 3), std::domain_error);
  CHECK_THROWS_AS(heat_coefficient(random_jet(4, 2, 1), 3), JetOrderError);
  CHECK_THROWS_AS(heat_coefficients(random_jet(4, 3, 1), -1), std::invalid_argument);
  CHECK_NOTHROW(heat_coefficient(random_jet(2, 2, 1), 1));
}

TEST_CASE("closed-form table entries") {
  const InvariantExpression a3 = theorem_reference(4, 3);
  const Rational pre = Rational(1, 48 * 7 * 15);
  CHECK(a3.coeffs.at(Invariant::SumKappa3) == Complex(Rational(-16 * pre)));
  CHECK_FALSE(a3.coeffs.count(Invariant::K2H));
  const InvariantExpression a2 = theorem_reference(3, 2);
  CHECK(a2.coeffs.at(Invariant::Q) == Complex(Rational(Rational(-96) / (24 * 8))));
  CHECK_THROWS_AS(theorem_reference(3, 3), std::domain_error);
  CHECK_THROWS_AS(theorem_reference(5, 4), std::domain_error);
}

TEST_CASE("engine matches the closed forms through a2") {
  VerifyOptions o;
  o.n_min = 2;
  o.n_max = 5;
  o.k_max = 2;
  o.seeds = {11, 12, 13};
  for (const auto& run : verify_theorem(o)) {
    INFO("n=" << run.n << " seed=" << run.seed << " k=" << run.k);
    CHECK(run.equal);
  }
}

TEST_CASE("magnetic potential drops out") {
  for (int n = 4; n <= 5; ++n) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      GeometryJet jet = random_jet(n, 3, 40 + seed, full_options());
      GeometryJet other = jet;
      const GeometryJet donor = random_jet(n, 3, 90 + seed, full_options());
      other.A = donor.A;
      CHECK(heat_coefficients(jet, 3) == heat_coefficients(other, 3));
    }
  }
}

TEST_CASE("a constant shift of q moves a2 by -q/2") {
  GeometryJet jet = random_jet(3, 2, 8, full_options());
  GeometryJet shifted = jet;
  const Rational delta(3, 7);
  shifted.q[0] += Complex(delta);
  const TaggedValue d{3, 2, heat_coefficient(shifted, 2).coeff - heat_coefficient(jet, 2).coeff};
  CHECK(d == tag(3, 2, -delta / 2));
}

TEST_CASE("q and k enter only through q - k^2") {
  for (int n = 4; n <= 5; ++n) {
    GeometryJet jet = random_jet(n, 3, 60 + n, full_options());
    GeometryJet folded = jet;
    folded.q[0] -= Complex(jet.k * jet.k);
    folded.k = 0;
    CHECK(heat_coefficients(jet, 3) == heat_coefficients(folded, 3));
  }
}

TEST_CASE("ball coefficients scale as r^-k") {
  const int n = 4;
  const auto unit = heat_coefficients(ball_jet(n, 1), 3);
  for (const Rational r : {Rational(1, 2), Rational(3)}) {
    const auto scaled = heat_coefficients(ball_jet(n, r), 3);
    Rational factor = 1;
    for (int k = 0; k <= 3; ++k) {
      CHECK(scaled[k] == TaggedValue{n, unit[k].gamma_shift, unit[k].coeff * factor});
      factor /= r;
    }
  }
}

TEST_CASE("projection recovers a1") {
  const InvariantExpression e = invariant_projection(reference_samples(5, 1, 3, 200), 5, 1);
  CHECK(e.coeffs.at(Invariant::H) == Complex(Rational(3, 8)));
}

TEST_CASE("projection of engine a2 reproduces the closed form") {
  const int n = 4;
  std::vector<ProjectionSample> samples;
  for (std::uint64_t seed = 1; seed <= 9; ++seed) {
    const GeometryJet jet = random_jet(n, 2, 300 + seed, full_options());
    samples.push_back({curvature_package(jet), heat_coefficient(jet, 2), std::nullopt});
  }
  InvariantExpression e = invariant_projection(samples, n, 2);
  e.prune();
  InvariantExpression ref = theorem_reference(n, 2);
  ref.prune();
  CHECK(e == ref);
}

TEST_CASE("projection edge cases") {
  auto samples = reference_samples(4, 2, 8, 400);
  for (auto& s : samples) s.value.coeff = Complex();
  InvariantExpression zero = invariant_projection(samples, 4, 2);
  zero.prune();
  CHECK(zero.coeffs.empty());

  auto repeated = reference_samples(4, 2, 1, 500);
  for (int i = 0; i < 8; ++i) repeated.push_back(repeated.front());
  CHECK_THROWS_WITH(invariant_projection(repeated, 4, 2), "samples not in general position");

  auto broken = reference_samples(4, 2, 9, 600);
  broken.back().value.coeff += Complex(Rational(1, 5));
  CHECK_THROWS_WITH(invariant_projection(broken, 4, 2), "basis insufficient");
}

TEST_CASE("space-form specialization") {
  for (const auto& c : verify_corollary(3, 10)) {
    INFO("n=" << c.n << " k=" << c.k);
    CHECK(c.equal);
  }
}

TEST_CASE("geodesic spheres in space forms match the space-form a2") {
  for (int n = 3; n <= 6; ++n) {
    for (const auto& [K, kappa] : std::vector<std::pair<Rational, Rational>>{{1, Rational(1, 2)}, {-1, 2}, {2, Rational(-1, 3)}}) {
      const GeometryJet jet = geodesic_sphere_jet(n, K, kappa, 2);
      CHECK(heat_coefficient(jet, 2) == theorem_reference(n, 2, true).tagged(curvature_package(jet), K));
    }
  }
}

TEST_CASE("fault injection flags exactly one run") {
  VerifyOptions o;
  o.n_min = 3;
  o.n_max = 4;
  o.k_max = 2;
  o.seeds = {1, 2};
  o.inject = FaultInjection{4, 2, 1, Complex(Rational(1, 1000))};
  int failures = 0;
  for (const auto& run : verify_theorem(o)) {
    if (run.equal) continue;
    ++failures;
    CHECK(run.n == 4);
    CHECK(run.seed == 2);
    CHECK(run.k == 1);
  }
  CHECK(failures == 1);
}
