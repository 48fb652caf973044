#pragma once

// Curvature invariants at a boundary point and exact linear combinations of
// them sharing a Gamma(n - s) vol(S^{n-2}) / (2 pi)^{n-1} prefactor.

#include "dtnheat/exact.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dtnheat {

struct CurvatureInvariants {
  int n = 0;
  std::vector<Rational> kappa;
  Rational H;
  Rational sum_kappa2;
  Rational sum_kappa3;
  Rational R_boundary;
  Rational R_tilde;
  std::vector<Rational> R_diag;
  std::vector<Rational> R_tilde_diag;
  Rational R_tilde_nn;
  std::optional<Rational> nabla_n_R_tilde_nn;
  std::optional<Rational> dn_R_tilde;
  std::optional<Rational> laplacian_H;
  Complex q0;
  Complex dq_dn;
  Rational k;
};

enum class Invariant {
  One,
  H,
  H2,
  SumKappa2,
  RTilde,
  R,
  Q,
  K2,
  H3,
  HRTilde,
  HR,
  HSumKappa2,
  SumKappa3,
  KappaRTildeDiag,
  KappaRDiag,
  NablaRTildeNN,
  DqDn,
  HQ,
  K2H,
  HK,
  K,
  DnRTilde,
  LaplacianH,
};

std::string invariant_name(Invariant b);
Invariant parse_invariant(const std::string& name);

/// Basis used by the general-manifold closed forms for a_k, k = 0..3.
const std::vector<Invariant>& theorem_basis(int k_index);
/// theorem_basis plus d_n R_tilde and the boundary Laplacian of H for k = 3.
const std::vector<Invariant>& extended_basis(int k_index);
/// Basis after specializing to constant sectional curvature K.
const std::vector<Invariant>& space_form_basis(int k_index);

/// Value of a basis element on concrete invariants. K is needed only for HK and K.
Complex invariant_value(Invariant b, const CurvatureInvariants& inv,
                        const std::optional<Rational>& K = std::nullopt);

/// Exact value of the form coeff * Gamma(n - gamma_shift) vol(S^{n-2}) / (2 pi)^{n-1}.
struct TaggedValue {
  int n = 0;
  int gamma_shift = 1;
  Complex coeff;

  /// Re-express with a different Gamma argument; throws if either argument is not positive.
  TaggedValue retagged(int new_shift) const;
  std::string to_string() const;
  friend bool operator==(const TaggedValue& a, const TaggedValue& b);
};

/// Gamma(n - from) / Gamma(n - to) as an exact rational.
Rational gamma_ratio(int n, int from, int to);

struct InvariantExpression {
  int n = 0;
  int k_index = 0;
  int gamma_shift = 1;
  std::map<Invariant, Complex> coeffs;

  void add(Invariant b, const Complex& c);
  /// Drops zero coefficients.
  void prune();
  Complex evaluate(const CurvatureInvariants& inv, const std::optional<Rational>& K = std::nullopt) const;
  TaggedValue tagged(const CurvatureInvariants& inv, const std::optional<Rational>& K = std::nullopt) const;
  std::string to_string() const;

  friend bool operator==(const InvariantExpression& a, const InvariantExpression& b);
};

}  // namespace dtnheat
