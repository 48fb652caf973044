#include "doctest.h"

#include "dtnheat/geometry.hpp"

#include <set>

using namespace dtnheat;

TEST_CASE("flat and ball jets validate") {
  CHECK(validate_jet(GeometryJet::flat(3)).ok);
  CHECK(validate_jet(ball_jet(3, 1)).ok);
  CHECK(validate_jet(ball_jet(2, 1)).ok);
  CHECK_THROWS_AS(ball_jet(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(ball_jet(3, -1), std::invalid_argument);
}

TEST_CASE("validation reports the first broken constraint") {
  GeometryJet jet = GeometryJet::flat(3);
  const JetSpace& sp = jet.space();
  jet.g[0][1][sp.unit(2)] = Complex(1);
  jet.g[1][0][sp.unit(2)] = Complex(1);
  auto r = validate_jet(jet);
  CHECK_FALSE(r.ok);
  CHECK(r.message == "second fundamental form not diagonal");

  GeometryJet asym = GeometryJet::flat(3);
  asym.g[0][1][sp.count(1)] = Complex(1);
  CHECK(validate_jet(asym).message == "metric not symmetric");

  GeometryJet tang = GeometryJet::flat(3);
  tang.g[0][0][sp.unit(1)] = Complex(1);
  CHECK(validate_jet(tang).message == "tangential first derivatives of the metric do not vanish");

  GeometryJet kap = GeometryJet::flat(3);
  kap.kappa[0] = 1;
  CHECK(validate_jet(kap).message == "normal derivative of the metric disagrees with kappa");

  GeometryJet low = GeometryJet::flat(2);
  low.n = 1;
  CHECK(validate_jet(low).message == "dimension must be at least 2");
  CHECK_THROWS_AS(GeometryJet::flat(1), std::invalid_argument);
}

TEST_CASE("flat half-space has vanishing curvature") {
  GeometryJet jet = GeometryJet::flat(4);
  jet.k = Rational(3, 2);
  auto inv = curvature_package(jet);
  CHECK(inv.H == 0);
  CHECK(inv.R_tilde == 0);
  CHECK(inv.R_boundary == 0);
  CHECK(*inv.nabla_n_R_tilde_nn == 0);
  CHECK(inv.k == Rational(3, 2));
}

TEST_CASE("unit 3-ball invariants") {
  auto inv = curvature_package(ball_jet(3, 1));
  CHECK(inv.kappa == std::vector<Rational>{1, 1});
  CHECK(inv.H == 2);
  CHECK(inv.sum_kappa2 == 2);
  CHECK(inv.R_tilde == 0);
  CHECK(inv.R_boundary == 2);
  CHECK(inv.R_diag == std::vector<Rational>{1, 1});
  CHECK(gauss_check(ball_jet(3, 1)).ok);
  auto inv2 = curvature_package(ball_jet(3, 2));
  CHECK(inv2.kappa == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(inv2.H == 1);
  auto circle = curvature_package(ball_jet(2, 1));
  CHECK(circle.H == 1);
}

TEST_CASE("ball invariants across dimensions and radii") {
  for (int n = 2; n <= 8; ++n) {
    for (Rational r : {Rational(1), Rational(2), Rational(1, 2)}) {
      CAPTURE(n);
      auto inv = curvature_package(ball_jet(n, r));
      for (const auto& k : inv.kappa) CHECK(k == 1 / r);
      CHECK(inv.R_tilde == 0);
      CHECK(inv.R_boundary == Rational((n - 1) * (n - 2)) / (r * r));
      CHECK(*inv.nabla_n_R_tilde_nn == 0);
    }
  }
}

TEST_CASE("curvature needs order two") {
  GeometryJet jet = GeometryJet::flat(3, 1);
  CHECK_THROWS_AS(curvature_package(jet), JetOrderError);
  GeometryJet two = random_jet(3, 2, 5);
  auto inv = curvature_package(two);
  CHECK_FALSE(inv.nabla_n_R_tilde_nn.has_value());
}

TEST_CASE("random jets are deterministic and valid") {
  GeometryJet a = random_jet(4, 3, 7);
  GeometryJet b = random_jet(4, 3, 7);
  CHECK(validate_jet(a).ok);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(a.g[i][j] == b.g[i][j]);
  }
  CHECK(a.kappa == b.kappa);
  std::set<Rational> distinct(a.kappa.begin(), a.kappa.end());
  CHECK(distinct.size() == a.kappa.size());
  for (const auto& x : a.A) CHECK(x.is_zero());

  GeometryJet c = random_jet(5, 3, 9, {true, true, false});
  CHECK(validate_jet(c).ok);
  bool any = false;
  for (const auto& x : c.A) any = any || !x.is_zero();
  CHECK(any);
  CHECK_FALSE(c.q.is_zero());
}

TEST_CASE("Gauss equation holds on random jets") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    GeometryJet jet = random_jet(n, 3, seed);
    auto r = gauss_check(jet);
    CAPTURE(seed);
    CHECK_MESSAGE(r.ok, r.message);
    auto inv = curvature_package(jet);
    CHECK(inv.R_boundary == inv.R_tilde - 2 * inv.R_tilde_nn + inv.H * inv.H - inv.sum_kappa2);
  }
}

TEST_CASE("Levi-Civita connection is metric compatible") {
  for (std::uint64_t seed = 11; seed <= 14; ++seed) {
    GeometryJet jet = random_jet(4, 3, seed);
    JetMatrix g = full_metric(jet);
    auto gamma = christoffel(g, invert_near_identity(g));
    auto nabla = metric_covariant_derivative(g, gamma);
    for (const auto& m : nabla) {
      for (const auto& row : m) {
        for (const auto& x : row) {
          CHECK(x.order() == 2);
          CHECK(x.is_zero());
        }
      }
    }
  }
}

TEST_CASE("space form substitution") {
  InvariantExpression zero{5, 2, 2, {}};
  CHECK(space_form_substitute(zero).coeffs.empty());

  InvariantExpression e{4, 3, 3, {}};
  e.add(Invariant::KappaRDiag, Complex(1));
  e.add(Invariant::NablaRTildeNN, Complex(7));
  auto s = space_form_substitute(e);
  CHECK(s.coeffs.at(Invariant::H3) == Complex(1));
  CHECK(s.coeffs.at(Invariant::HK) == Complex(8));
  CHECK(s.coeffs.at(Invariant::HR) == Complex(-1));
  CHECK(s.coeffs.at(Invariant::SumKappa3) == Complex(-1));
  CHECK(s.coeffs.count(Invariant::NablaRTildeNN) == 0);
}
