#pragma once

// Taylor data of (g, A, q, k) at a boundary point in boundary normal
// coordinates x = (x_1..x_{n-1}, x_n), x_n the inward normal distance.
// Only the tangential block g_{ab} is stored; g_{nn} = 1 and g_{na} = 0.

#include "dtnheat/invariants.hpp"
#include "dtnheat/jet.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dtnheat {

using JetMatrix = std::vector<std::vector<Jet>>;

struct GeometryJet {
  int n = 2;
  int jet_order = 3;
  std::vector<Rational> kappa;
  JetMatrix g;          // (n-1) x (n-1), order jet_order
  std::vector<Jet> A;   // n components, order a_order()
  Jet q;                // order q_order()
  Rational k;

  const JetSpace& space() const { return JetSpace::get(n, jet_order); }
  int a_order() const { return jet_order >= 1 ? jet_order - 1 : 0; }
  int q_order() const { return jet_order >= 2 ? jet_order - 2 : 0; }

  /// Euclidean half-space: g = identity, A = 0, q = 0, k = 0.
  static GeometryJet flat(int n, int jet_order = 3);
};

struct CheckResult {
  bool ok = true;
  std::string message;
  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string m) { return {false, std::move(m)}; }
};

/// First violated structural constraint, if any.
CheckResult validate_jet(const GeometryJet& jet);

/// Full n x n metric jet in boundary normal coordinates.
JetMatrix full_metric(const GeometryJet& jet);

/// Christoffel symbols Gamma[k][i][j] = 1/2 g^{kl}(d_i g_{jl} + d_j g_{il} - d_l g_{ij}).
std::vector<JetMatrix> christoffel(const JetMatrix& metric, const JetMatrix& inverse);

/// Jet of nabla_k g_{ij}; identically zero for the Levi-Civita connection.
std::vector<JetMatrix> metric_covariant_derivative(const JetMatrix& metric, const std::vector<JetMatrix>& gamma);

/// Curvature of a metric jet. Riemann is stored as R_{ijkl} = <R(d_i, d_j) d_k, d_l>.
struct CurvatureJets {
  std::vector<JetMatrix> gamma;
  std::vector<std::vector<JetMatrix>> riemann;  // riemann[i][j][k][l]
  JetMatrix ricci;                              // Ric_{jk} = R^i_{ijk}
  Jet scalar;
};

/// Requires every metric jet to have order >= 2.
CurvatureJets curvature_jets(const JetMatrix& metric);

/// Restriction of the tangential block to x_n = 0, as jets in x_1..x_{n-1}.
JetMatrix induced_boundary_metric(const GeometryJet& jet);

CurvatureInvariants curvature_package(const GeometryJet& jet);

/// The same data carried to a lower jet order. Throws if order exceeds jet.jet_order.
GeometryJet truncate_jet(const GeometryJet& jet, int order);

/// Gauss equation for the boundary Ricci diagonal and scalar curvature.
CheckResult gauss_check(const GeometryJet& jet);

/// Ball of radius r in R^n, around any boundary point; A = 0, q = 0, k = 0.
GeometryJet ball_jet(int n, const Rational& r, int jet_order = 3);

/// Geodesic sphere with principal curvatures kappa in a space form of sectional
/// curvature K; A = 0, q = 0, k = 0. Requires K + kappa^2 > 0.
GeometryJet geodesic_sphere_jet(int n, const Rational& K, const Rational& kappa, int jet_order = 3);

struct RandomJetOptions {
  bool with_A = false;
  bool with_q = false;
  bool with_k = false;
  bool distinct_kappa = true;
};

/// Deterministic per (n, jet_order, seed, options); entries are small rationals.
GeometryJet random_jet(int n, int jet_order, std::uint64_t seed, const RandomJetOptions& options = {});

/// Specialize a general-manifold expression to constant sectional curvature,
/// with K kept as a basis element.
InvariantExpression space_form_substitute(const InvariantExpression& expr);

}  // namespace dtnheat
