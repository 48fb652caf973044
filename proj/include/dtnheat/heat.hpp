#pragma once

// Pointwise heat-trace coefficients of the magnetic Dirichlet-to-Neumann map,
//   a_k(x) = i/(2 pi)^n  int_{R^{n-1}} int_C e^{-tau} s_{-1-k}(x, xi, tau) dtau dxi,
// evaluated exactly at the base point of a geometry jet.

#include "dtnheat/dtn.hpp"
#include "dtnheat/invariants.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dtnheat {

/// i/(2 pi)^n times 2 pi i, relative to the normalized 1/(2 pi)^{n-1} (1/(2 pi i)) int_C.
inline constexpr int kContourOrientation = -1;

/// (1/(2 pi i)) int_C s^p e^{-tau} dtau = tau_factor(p) e^{-w1}; p >= 1.
Rational tau_factor(int p);

/// Replaces every s^p by tau_factor(p); the result carries an implicit e^{-w1}.
/// Throws std::invalid_argument on a term without an s factor.
Symbol tau_integral(const Symbol& s);

/// c with int xi^beta w1^e e^{-w1} dxi = c Gamma(n - gamma_shift) vol(S^{n-2}) over R^{n-1}.
/// Odd beta gives 0. Throws std::domain_error when the integral diverges or a Gamma argument is not positive.
Rational xi_moment(int n, const std::vector<int>& beta, int e, int gamma_shift);

/// Sum of xi_moment over the terms of an e^{-w1}-weighted symbol, using coefficient values at x0.
Complex xi_integral(const Symbol& weighted, int gamma_shift);

/// Gamma shift used to tag a_k: Gamma(n - max(k, 1)).
int heat_gamma_shift(int k_index);

/// Smallest n for which a_k is defined by the expansion.
int heat_min_dimension(int k_index);

/// Jet order needed for a_k.
int heat_jet_order(int k_index);

/// a_0(x0) .. a_{k_max}(x0). The jet is truncated to the order that is needed.
std::vector<TaggedValue> heat_coefficients(const GeometryJet& jet, int k_max);
TaggedValue heat_coefficient(const GeometryJet& jet, int k_index);

/// Closed forms for a_0..a_3 on a general manifold, or on a space form with
/// constant sectional curvature K when constant_curvature is set.
InvariantExpression theorem_reference(int n, int k_index, bool constant_curvature = false);

struct ProjectionSample {
  CurvatureInvariants invariants;
  TaggedValue value;
  std::optional<Rational> K;
};

/// Exact coefficients over the basis of a_k from samples. The first samples
/// that raise the rank fix the solution; every other sample must agree.
InvariantExpression invariant_projection(const std::vector<ProjectionSample>& samples, int n, int k_index,
                                         bool constant_curvature = false);
InvariantExpression invariant_projection(const std::vector<ProjectionSample>& samples, int n, int k_index,
                                         const std::vector<Invariant>& basis);

struct VerifyRun {
  int n = 0;
  std::uint64_t seed = 0;
  int k = 0;
  TaggedValue engine;
  TaggedValue reference;
  bool equal = false;
};

struct FaultInjection {
  int n = 0;
  std::uint64_t seed = 0;
  int k = 0;
  Complex delta;
};

struct VerifyOptions {
  int n_min = 4;
  int n_max = 8;
  std::vector<std::uint64_t> seeds;
  int k_max = 3;
  RandomJetOptions jet_options{true, true, true, true};
  /// Adds delta to the engine coefficient of the matching (n, seed, k).
  std::optional<FaultInjection> inject;
};

/// Engine versus closed form on random jets, per (n, seed, k) with k <= min(k_max, n - 1).
std::vector<VerifyRun> verify_theorem(const VerifyOptions& options);

struct CorollaryCheck {
  int n = 0;
  int k = 0;
  InvariantExpression substituted;
  InvariantExpression reference;
  bool equal = false;
};

/// Space-form specialization of the general closed forms against the space-form closed forms, k = 2, 3.
std::vector<CorollaryCheck> verify_corollary(int n_min, int n_max);

}  // namespace dtnheat
