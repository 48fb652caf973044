#include "dtnheat/geometry.hpp"

#include <random>
#include <set>

namespace dtnheat {

namespace {

JetMatrix jet_matrix(std::size_t d, const JetSpace& space, int order) {
  return JetMatrix(d, std::vector<Jet>(d, Jet(space, order)));
}

Jet restrict_to_boundary(const Jet& j, const JetSpace& target) {
  const JetSpace& src = j.space();
  const int last = src.nvars() - 1;
  Jet out(target, j.order());
  for (std::size_t idx = 0; idx < j.size(); ++idx) {
    if (j[idx].is_zero()) continue;
    const Exponents& e = src.exponents(idx);
    if (e[last] != 0) continue;
    out.set(e, j[idx]);
  }
  return out;
}

class RationalSource {
 public:
  explicit RationalSource(std::uint64_t seed) : rng_(seed) {}

  Rational small() {
    const long num = static_cast<long>(rng_() % 7) - 3;
    const long den = static_cast<long>(rng_() % 3) + 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  Rational curvature() {
    const long num = static_cast<long>(rng_() % 9) - 4;
    const long den = static_cast<long>(rng_() % 2) + 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

namespace {

Jet rebased(const Jet& src, const JetSpace& space, int order) {
  Jet out(space, std::min(order, src.order()));
  for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] = src.coefficient(space.exponents(idx));
  return out;
}

}  // namespace

GeometryJet truncate_jet(const GeometryJet& jet, int order) {
  if (order < 0 || order > jet.jet_order) throw std::invalid_argument("cannot truncate a jet to a higher order");
  if (order == jet.jet_order) return jet;
  GeometryJet out = GeometryJet::flat(jet.n, order);
  const JetSpace& sp = out.space();
  out.kappa = jet.kappa;
  for (int a = 0; a < jet.n - 1; ++a) {
    for (int b = 0; b < jet.n - 1; ++b) out.g[a][b] = rebased(jet.g[a][b], sp, order);
  }
  for (int j = 0; j < jet.n; ++j) out.A[j] = rebased(jet.A[j], sp, out.a_order());
  out.q = rebased(jet.q, sp, out.q_order());
  out.k = jet.k;
  return out;
}

GeometryJet GeometryJet::flat(int n, int jet_order) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  GeometryJet jet;
  jet.n = n;
  jet.jet_order = jet_order;
  const JetSpace& sp = jet.space();
  jet.kappa.assign(n - 1, Rational(0));
  jet.g = jet_matrix(n - 1, sp, jet_order);
  for (int a = 0; a < n - 1; ++a) jet.g[a][a][0] = Complex(1);
  jet.A.assign(n, Jet(sp, jet.a_order()));
  jet.q = Jet(sp, jet.q_order());
  jet.k = 0;
  return jet;
}

CheckResult validate_jet(const GeometryJet& jet) {
  if (jet.n < 2) return CheckResult::fail("dimension must be at least 2");
  if (jet.jet_order < 0) return CheckResult::fail("negative jet order");
  const int d = jet.n - 1;
  if (static_cast<int>(jet.kappa.size()) != d) return CheckResult::fail("kappa must have n-1 entries");
  if (static_cast<int>(jet.g.size()) != d) return CheckResult::fail("metric block must be (n-1)x(n-1)");
  if (static_cast<int>(jet.A.size()) != jet.n) return CheckResult::fail("A must have n components");
  const JetSpace& sp = jet.space();
  for (int a = 0; a < d; ++a) {
    if (static_cast<int>(jet.g[a].size()) != d) return CheckResult::fail("metric block must be (n-1)x(n-1)");
    for (int b = 0; b < d; ++b) {
      const Jet& gab = jet.g[a][b];
      if (!gab.valid() || &gab.space() != &sp || gab.order() != jet.jet_order) {
        return CheckResult::fail("metric jet has wrong space or order");
      }
      if (!gab.is_real()) return CheckResult::fail("metric coefficients must be real");
    }
  }
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      if (!(jet.g[a][b] == jet.g[b][a])) return CheckResult::fail("metric not symmetric");
    }
  }
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (jet.g[a][b].value() != Complex(a == b ? 1 : 0)) {
        return CheckResult::fail("metric is not the identity at the base point");
      }
    }
  }
  if (jet.jet_order >= 1) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        for (int c = 0; c < d; ++c) {
          if (!jet.g[a][b][sp.unit(c)].is_zero()) {
            return CheckResult::fail("tangential first derivatives of the metric do not vanish");
          }
        }
      }
    }
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const Complex& dn = jet.g[a][b][sp.unit(d)];
        if (a != b && !dn.is_zero()) return CheckResult::fail("second fundamental form not diagonal");
        if (a == b && dn != Complex(Rational(-2) * jet.kappa[a])) {
          return CheckResult::fail("normal derivative of the metric disagrees with kappa");
        }
      }
    }
  }
  for (const Jet& a : jet.A) {
    if (!a.valid() || &a.space() != &sp || a.order() != jet.a_order()) {
      return CheckResult::fail("A jet has wrong space or order");
    }
  }
  if (!jet.q.valid() || &jet.q.space() != &sp || jet.q.order() != jet.q_order()) {
    return CheckResult::fail("q jet has wrong space or order");
  }
  return CheckResult::pass();
}

JetMatrix full_metric(const GeometryJet& jet) {
  const int n = jet.n;
  const JetSpace& sp = jet.space();
  JetMatrix m = jet_matrix(n, sp, jet.jet_order);
  for (int a = 0; a < n - 1; ++a) {
    for (int b = 0; b < n - 1; ++b) m[a][b] = jet.g[a][b];
  }
  m[n - 1][n - 1][0] = Complex(1);
  return m;
}

std::vector<JetMatrix> christoffel(const JetMatrix& metric, const JetMatrix& inverse) {
  const std::size_t n = metric.size();
  const JetSpace& sp = metric[0][0].space();
  const int order = metric[0][0].order() - 1;
  // dg[a][b][c] = d_a g_{bc}
  std::vector<JetMatrix> dg(n, JetMatrix(n, std::vector<Jet>(n)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) dg[a][b][c] = metric[b][c].derivative(static_cast<int>(a));
    }
  }
  std::vector<JetMatrix> gamma(n, jet_matrix(n, sp, order));
  const Complex half(Rational(1, 2));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        Jet lowered = dg[i][j][l] + dg[j][i][l] - dg[l][i][j];
        if (lowered.is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k) gamma[k][i][j].add_product(inverse[k][l], lowered, half);
      }
      if (i != j) {
        for (std::size_t k = 0; k < n; ++k) gamma[k][j][i] = gamma[k][i][j];
      }
    }
  }
  return gamma;
}

std::vector<JetMatrix> metric_covariant_derivative(const JetMatrix& metric, const std::vector<JetMatrix>& gamma) {
  const std::size_t n = metric.size();
  std::vector<JetMatrix> out(n, JetMatrix(n, std::vector<Jet>(n)));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Jet v = metric[i][j].derivative(static_cast<int>(k));
        for (std::size_t l = 0; l < n; ++l) {
          v.add_product(gamma[l][k][i], metric[l][j], Complex(-1));
          v.add_product(gamma[l][k][j], metric[i][l], Complex(-1));
        }
        out[k][i][j] = std::move(v);
      }
    }
  }
  return out;
}

CurvatureJets curvature_jets(const JetMatrix& metric) {
  const std::size_t n = metric.size();
  const JetSpace& sp = metric[0][0].space();
  const int order = metric[0][0].order();
  if (order < 2) throw JetOrderError("order too low: curvature requires jet order 2");
  const JetMatrix inverse = invert_near_identity(metric);
  CurvatureJets out;
  out.gamma = christoffel(metric, inverse);
  const auto& G = out.gamma;
  const int rorder = order - 2;

  // up[l][i][j][k] = R^l_{ijk}
  std::vector<std::vector<JetMatrix>> up(n, std::vector<JetMatrix>(n, jet_matrix(n, sp, rorder)));
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (std::size_t k = 0; k < n; ++k) {
          Jet r = G[l][j][k].derivative(static_cast<int>(i)) - G[l][i][k].derivative(static_cast<int>(j));
          r = r.truncated(rorder);
          for (std::size_t p = 0; p < n; ++p) {
            r.add_product(G[p][j][k], G[l][i][p], Complex(1));
            r.add_product(G[p][i][k], G[l][j][p], Complex(-1));
          }
          up[l][i][j][k] = std::move(r);
        }
      }
    }
  }
  out.riemann.assign(n, std::vector<JetMatrix>(n, jet_matrix(n, sp, rorder)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          for (std::size_t m = 0; m < n; ++m) out.riemann[i][j][k][l].add_product(metric[l][m], up[m][i][j][k], Complex(1));
        }
      }
    }
  }
  out.ricci = jet_matrix(n, sp, rorder);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) out.ricci[j][k] += up[i][i][j][k];
    }
  }
  out.scalar = Jet(sp, rorder);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) out.scalar.add_product(inverse[j][k], out.ricci[j][k], Complex(1));
  }
  return out;
}

JetMatrix induced_boundary_metric(const GeometryJet& jet) {
  const int d = jet.n - 1;
  const JetSpace& target = JetSpace::get(d, jet.jet_order);
  JetMatrix h(d, std::vector<Jet>(d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) h[a][b] = restrict_to_boundary(jet.g[a][b], target);
  }
  return h;
}

CurvatureInvariants curvature_package(const GeometryJet& jet) {
  if (auto v = validate_jet(jet); !v.ok) throw std::invalid_argument(v.message);
  if (jet.jet_order < 2) throw JetOrderError("order too low: curvature requires jet order 2");
  const int n = jet.n;
  const int d = n - 1;
  CurvatureInvariants inv;
  inv.n = n;
  inv.kappa = jet.kappa;
  for (const Rational& k : jet.kappa) {
    inv.H += k;
    inv.sum_kappa2 += k * k;
    inv.sum_kappa3 += k * k * k;
  }

  const CurvatureJets amb = curvature_jets(full_metric(jet));
  auto real_at_origin = [](const Jet& j) { return j.value().real(); };
  inv.R_tilde = real_at_origin(amb.scalar);
  inv.R_tilde_nn = real_at_origin(amb.ricci[d][d]);
  for (int a = 0; a < d; ++a) inv.R_tilde_diag.push_back(real_at_origin(amb.ricci[a][a]));
  if (jet.jet_order >= 3) {
    Rational v = amb.ricci[d][d][jet.space().unit(d)].real();
    for (int l = 0; l < n; ++l) v -= 2 * amb.gamma[l][d][d].value().real() * amb.ricci[l][d].value().real();
    inv.nabla_n_R_tilde_nn = v;
    inv.dn_R_tilde = amb.scalar[jet.space().unit(d)].real();
  }

  if (d >= 2) {
    const CurvatureJets bnd = curvature_jets(induced_boundary_metric(jet));
    inv.R_boundary = real_at_origin(bnd.scalar);
    for (int a = 0; a < d; ++a) inv.R_diag.push_back(real_at_origin(bnd.ricci[a][a]));
    if (jet.jet_order >= 3) {
      // Boundary Laplacian of H = g^{ab} h_ab with h_ab = -1/2 d_n g_ab.
      const JetSpace& target = JetSpace::get(d, jet.jet_order - 1);
      const JetMatrix ginv = invert_near_identity(induced_boundary_metric(jet));
      Jet H(target, jet.jet_order - 1);
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          H.add_product(ginv[a][b], restrict_to_boundary(jet.g[a][b].derivative(d), target), Complex(Rational(-1, 2)));
        }
      }
      Rational lap = 0;
      for (int a = 0; a < d; ++a) {
        lap += H.derivative(a).derivative(a).value().real();
        for (int c = 0; c < d; ++c) lap -= bnd.gamma[c][a][a].value().real() * H.derivative(c).value().real();
      }
      inv.laplacian_H = lap;
    }
  } else {
    inv.R_boundary = 0;
    inv.R_diag.assign(d, Rational(0));
  }

  inv.q0 = jet.q.value();
  if (jet.q.order() >= 1) inv.dq_dn = jet.q[jet.space().unit(d)];
  inv.k = jet.k;
  return inv;
}

CheckResult gauss_check(const GeometryJet& jet) {
  if (auto v = validate_jet(jet); !v.ok) return v;
  if (jet.jet_order < 2) return CheckResult::fail("order too low: curvature requires jet order 2");
  const int n = jet.n;
  const int d = n - 1;
  const CurvatureInvariants inv = curvature_package(jet);
  const CurvatureJets amb = curvature_jets(full_metric(jet));
  for (int a = 0; a < d; ++a) {
    const Rational sectional = amb.riemann[d][a][a][d].value().real();
    const Rational expected = inv.R_tilde_diag[a] - sectional + inv.H * inv.kappa[a] - inv.kappa[a] * inv.kappa[a];
    if (inv.R_diag[a] != expected) {
      return CheckResult::fail("Gauss equation fails for boundary Ricci component " + std::to_string(a + 1));
    }
  }
  const Rational scalar = inv.R_tilde - 2 * inv.R_tilde_nn + inv.H * inv.H - inv.sum_kappa2;
  if (inv.R_boundary != scalar) return CheckResult::fail("Gauss equation fails for boundary scalar curvature");
  return CheckResult::pass();
}

GeometryJet geodesic_sphere_jet(int n, const Rational& K, const Rational& kappa, int jet_order) {
  const Rational Kb = K + kappa * kappa;
  if (sgn(Kb) <= 0) throw std::invalid_argument("boundary sphere needs K + kappa^2 > 0");
  GeometryJet jet = GeometryJet::flat(n, jet_order);
  const JetSpace& sp = jet.space();
  const int d = n - 1;
  jet.kappa.assign(d, kappa);

  // Normal coordinates on the boundary sphere of curvature Kb:
  // g_ab = delta_ab + (rho^2 delta_ab - x_a x_b) * sum_k c_k Kb^k rho^{2k-2},
  // where sin^2(u)/u^2 - 1 = sum_k c_k u^{2k}.
  Jet rho2(sp, jet_order);
  for (int a = 0; a < d; ++a) rho2.add_product(Jet::variable(sp, jet_order, a), Jet::variable(sp, jet_order, a), Complex(1));
  Jet series(sp, jet_order);
  Jet rho_power = Jet::constant(sp, jet_order, Complex(1));
  Rational kpow = 1;
  for (int k = 1; 2 * k <= jet_order; ++k) {
    Rational c = Rational(mpz_class(1) << (2 * k + 1)) / factorial(2 * k + 2);
    if (k % 2 == 1) c = -c;
    kpow *= Kb;
    series.add_scaled(rho_power, Complex(c * kpow));
    rho_power = rho_power * rho2;
  }
  // Warping factor f'' = -K f, f(0) = 1, f'(0) = -kappa.
  std::vector<Rational> f(jet_order + 1);
  f[0] = 1;
  if (jet_order >= 1) f[1] = -kappa;
  for (int j = 0; j + 2 <= jet_order; ++j) f[j + 2] = -K * f[j] / ((j + 2) * (j + 1));
  Jet radial(sp, jet_order);
  Jet xn_power = Jet::constant(sp, jet_order, Complex(1));
  for (int j = 0; j <= jet_order; ++j) {
    radial.add_scaled(xn_power, Complex(f[j]));
    xn_power = xn_power * Jet::variable(sp, jet_order, d);
  }
  Jet radial2 = radial * radial;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Jet bracket = Jet::variable(sp, jet_order, a) * Jet::variable(sp, jet_order, b) * Complex(-1);
      if (a == b) bracket += rho2;
      Jet tangential = bracket * series;
      if (a == b) tangential[0] += Complex(1);
      jet.g[a][b] = radial2 * tangential;
    }
  }
  return jet;
}

GeometryJet ball_jet(int n, const Rational& r, int jet_order) {
  if (sgn(r) <= 0) throw std::invalid_argument("radius must be positive");
  return geodesic_sphere_jet(n, 0, 1 / r, jet_order);
}

GeometryJet random_jet(int n, int jet_order, std::uint64_t seed, const RandomJetOptions& options) {
  GeometryJet jet = GeometryJet::flat(n, jet_order);
  const JetSpace& sp = jet.space();
  const int d = n - 1;
  RationalSource src(seed);

  std::set<Rational> used;
  for (int a = 0; a < d; ++a) {
    Rational k = src.curvature();
    while (options.distinct_kappa && used.count(k)) k = src.curvature();
    used.insert(k);
    jet.kappa[a] = k;
  }
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      Jet& gab = jet.g[a][b];
      if (jet_order >= 1 && a == b) gab[sp.unit(d)] = Complex(Rational(-2) * jet.kappa[a]);
      for (std::size_t idx = sp.count(1); idx < gab.size(); ++idx) gab[idx] = Complex(src.small());
      jet.g[b][a] = gab;
    }
  }
  if (options.with_A) {
    for (Jet& a : jet.A) {
      for (std::size_t idx = 0; idx < a.size(); ++idx) {
        Rational re = src.small();
        a[idx] = Complex(re, src.small());
      }
    }
  }
  if (options.with_q) {
    for (std::size_t idx = 0; idx < jet.q.size(); ++idx) jet.q[idx] = Complex(src.small());
  }
  if (options.with_k) jet.k = src.small();
  return jet;
}

InvariantExpression space_form_substitute(const InvariantExpression& expr) {
  const Rational n = expr.n;
  InvariantExpression out;
  out.n = expr.n;
  out.k_index = expr.k_index;
  out.gamma_shift = expr.gamma_shift;
  for (const auto& [b, c] : expr.coeffs) {
    switch (b) {
      case Invariant::RTilde:
        out.add(Invariant::K, c * Rational(n * (n - 1)));
        break;
      case Invariant::SumKappa2:
        out.add(Invariant::K, c * Rational((n - 1) * (n - 2)));
        out.add(Invariant::H2, c);
        out.add(Invariant::R, -c);
        break;
      case Invariant::HRTilde:
        out.add(Invariant::HK, c * Rational(n * (n - 1)));
        break;
      case Invariant::HSumKappa2:
        out.add(Invariant::HK, c * Rational((n - 1) * (n - 2)));
        out.add(Invariant::H3, c);
        out.add(Invariant::HR, -c);
        break;
      case Invariant::KappaRTildeDiag:
        out.add(Invariant::HK, c * Rational(n - 1));
        break;
      case Invariant::KappaRDiag:
        out.add(Invariant::H3, c);
        out.add(Invariant::HK, c * Rational(n * (n - 2)));
        out.add(Invariant::HR, -c);
        out.add(Invariant::SumKappa3, -c);
        break;
      case Invariant::NablaRTildeNN:
      case Invariant::DnRTilde:
      case Invariant::LaplacianH:
        break;
      default:
        out.add(b, c);
    }
  }
  return out;
}

}  // namespace dtnheat
