#pragma once

// Exactly solvable Steklov spectra (disk and ball, A = 0, constant q and k),
// heat-trace summation and small-t coefficient fitting. Binary64 throughout.

#include "dtnheat/exact.hpp"

#include <string>
#include <vector>

namespace dtnheat {

enum class DomainKind { Disk, Ball };

std::string domain_name(DomainKind kind);
DomainKind parse_domain(const std::string& name);

struct ModelDomain {
  DomainKind kind = DomainKind::Ball;
  Rational radius = 1;
  Rational q = 0;
  Rational k = 0;

  int n() const { return kind == DomainKind::Disk ? 2 : 3; }
  Rational qeff() const { return q - k * k; }
};

/// Throws std::invalid_argument unless radius > 0 and q - k^2 >= 0.
ModelDomain make_domain(DomainKind kind, const Rational& radius, const Rational& q = 0, const Rational& k = 0);

enum class BesselKind { Cylindrical, Spherical };

/// I_nu'(z) / I_nu(z), or i_l'(z) / i_l(z) for the modified spherical Bessel function i_l.
/// Throws std::runtime_error if the continued fraction does not converge.
double bessel_ratio(double nu, double z, BesselKind kind);

struct Eigenvalue {
  int index = 0;
  double lambda = 0;
  int multiplicity = 1;
};

struct SpectrumModel {
  ModelDomain domain;
  std::vector<Eigenvalue> eigenvalues;
  int index_cutoff = 0;
  /// lambda_m >= m * tail_bound_slope for every mode index m.
  double tail_bound_slope = 0;
};

/// Modes 0..cutoff. Throws std::invalid_argument for cutoff < 1.
SpectrumModel model_spectrum(const ModelDomain& domain, int cutoff);

/// Cutoff for which the tail of the trace at t is below rel_tol of the leading term.
int cutoff_for(const ModelDomain& domain, double t_min, double rel_tol = 1e-15);

struct TraceValue {
  double value = 0;
  /// Tail bound plus summation round-off.
  double error_bound = 0;
};

/// Throws std::invalid_argument for t <= 0 and std::runtime_error when the
/// tail bound exceeds rel_tol * value (the cutoff is too small).
TraceValue heat_trace(const SpectrumModel& spec, double t, double rel_tol = 1e-12);

/// Geometric ladder from t_max down to t_min.
std::vector<double> default_t_grid(int points = 40, double t_min = 1e-3, double t_max = 0.2);

struct FitOptions {
  /// Extra powers t^1 .. t^nuisance beyond the constant term t^0.
  int nuisance = 3;
  /// Extra t^j log t for j = 1 .. log_nuisance.
  int log_nuisance = 2;
  double max_condition = 1e12;
};

struct TraceFit {
  std::vector<double> t_grid;
  std::vector<double> trace;
  /// Estimates of a_0 .. a_{n-1}.
  std::vector<double> coefficients;
  /// Weighted RMS residual.
  double residual = 0;
  /// Fitted c in an extra c * log t column.
  double log_term_diagnostic = 0;
  double condition_number = 0;
};

/// Weighted least squares T(t) ~ sum_k a_k t^{k-n+1} with weight t^{n-1}.
/// Throws std::invalid_argument for a bad grid and std::runtime_error when ill-conditioned.
TraceFit fit_asymptotics(const ModelDomain& domain, const std::vector<double>& t_grid, const FitOptions& options = {});

/// Same fit on given samples of T(t) in dimension n.
TraceFit fit_samples(int n, const std::vector<double>& t_grid, const std::vector<double>& trace,
                     const FitOptions& options = {});

/// Exact totals a_0 .. a_{n-1} of the pointwise coefficients over the boundary sphere.
std::vector<Rational> integrated_reference(const ModelDomain& domain);

}  // namespace dtnheat
