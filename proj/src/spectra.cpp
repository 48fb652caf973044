#include "dtnheat/spectra.hpp"

#include "dtnheat/heat.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dtnheat {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

int multiplicity(DomainKind kind, int m) {
  if (kind == DomainKind::Ball) return 2 * m + 1;
  return m == 0 ? 1 : 2;
}

/// sum_{m >= from} mult(m) x^m with x = e^{-t slope}; bounds the trace tail since lambda_m >= m slope.
double tail_bound(DomainKind kind, int from, double x) {
  if (x >= 1) return std::numeric_limits<double>::infinity();
  const double xl = std::pow(x, from);
  const double geo = 1 / (1 - x);
  if (kind == DomainKind::Disk) return (from == 0 ? 2 * xl * geo - 1 : 2 * xl * geo);
  return xl * ((2.0 * from + 1) * geo + 2 * x * geo * geo);
}

/// I_{nu+1}(z) / I_nu(z) by the modified Lentz method.
double ratio_next(double nu, double z) {
  constexpr double tiny = 1e-300;
  constexpr int max_iter = 1000000;
  double f = 2 * (nu + 1) / z;
  double C = f, D = 0;
  for (int j = 2; j < max_iter; ++j) {
    const double b = 2 * (nu + j) / z;
    D = b + D;
    if (std::abs(D) < tiny) D = tiny;
    C = b + 1 / C;
    if (std::abs(C) < tiny) C = tiny;
    D = 1 / D;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1) < 1e-16) return 1 / f;
  }
  throw std::runtime_error("bessel ratio did not converge after " + std::to_string(max_iter) + " iterations");
}

}  // namespace

std::string domain_name(DomainKind kind) { return kind == DomainKind::Disk ? "disk" : "ball"; }

DomainKind parse_domain(const std::string& name) {
  if (name == "disk") return DomainKind::Disk;
  if (name == "ball") return DomainKind::Ball;
  throw std::invalid_argument("unknown domain: " + name);
}

ModelDomain make_domain(DomainKind kind, const Rational& radius, const Rational& q, const Rational& k) {
  if (sgn(radius) <= 0) throw std::invalid_argument("radius must be positive");
  ModelDomain d{kind, radius, q, k};
  if (sgn(d.qeff()) < 0) throw std::invalid_argument("q - k^2 must be non-negative");
  return d;
}

double bessel_ratio(double nu, double z, BesselKind kind) {
  if (!(z > 0)) throw std::invalid_argument("bessel ratio needs z > 0");
  if (nu < 0) throw std::invalid_argument("bessel ratio needs order >= 0");
  // I_nu' / I_nu = nu / z + I_{nu+1} / I_nu; i_l' / i_l = l / z + I_{l+3/2} / I_{l+1/2}.
  if (kind == BesselKind::Cylindrical) return nu / z + ratio_next(nu, z);
  return nu / z + ratio_next(nu + 0.5, z);
}

SpectrumModel model_spectrum(const ModelDomain& domain, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
  const double r = domain.radius.get_d();
  const double root = std::sqrt(domain.qeff().get_d());
  const BesselKind bk = domain.kind == DomainKind::Disk ? BesselKind::Cylindrical : BesselKind::Spherical;
  SpectrumModel spec;
  spec.domain = domain;
  spec.index_cutoff = cutoff;
  spec.tail_bound_slope = 1 / r;
  spec.eigenvalues.reserve(cutoff + 1);
  for (int m = 0; m <= cutoff; ++m) {
    const double lambda = root == 0 ? m / r : root * bessel_ratio(m, root * r, bk);
    spec.eigenvalues.push_back({m, lambda, multiplicity(domain.kind, m)});
  }
  return spec;
}

int cutoff_for(const ModelDomain& domain, double t_min, double rel_tol) {
  const double r = domain.radius.get_d();
  const double x = std::exp(-t_min / r);
  const double leading = 2 * std::pow(r / t_min, domain.n() - 1);
  int m = static_cast<int>(r / t_min);
  while (tail_bound(domain.kind, m + 1, x) > rel_tol * leading) m += std::max(1, m / 8);
  return m;
}

TraceValue heat_trace(const SpectrumModel& spec, double t, double rel_tol) {
  if (!(t > 0)) throw std::invalid_argument("heat trace needs t > 0");
  double sum = 0;
  for (auto it = spec.eigenvalues.rbegin(); it != spec.eigenvalues.rend(); ++it) {
    sum += it->multiplicity * std::exp(-t * it->lambda);
  }
  const double tail = tail_bound(spec.domain.kind, spec.index_cutoff + 1, std::exp(-t * spec.tail_bound_slope));
  if (tail > rel_tol * sum) {
    throw std::runtime_error("tail bound " + std::to_string(tail) + " exceeds tolerance at t = " + std::to_string(t) +
                             "; increase the cutoff");
  }
  return {sum, tail + 2 * kEps * static_cast<double>(spec.eigenvalues.size()) * sum};
}

std::vector<double> default_t_grid(int points, double t_min, double t_max) {
  std::vector<double> grid(points);
  const double ratio = std::pow(t_min / t_max, 1.0 / (points - 1));
  double t = t_max;
  for (int i = 0; i < points; ++i, t *= ratio) grid[i] = t;
  grid.back() = t_min;
  return grid;
}

TraceFit fit_samples(int n, const std::vector<double>& t_grid, const std::vector<double>& trace,
                     const FitOptions& options) {
  const int powers = n + options.nuisance;
  const int cols = powers + options.log_nuisance;
  const int rows = static_cast<int>(t_grid.size());
  if (rows != static_cast<int>(trace.size())) throw std::invalid_argument("grid and trace sizes differ");
  if (rows < 2 * (cols + 1)) throw std::invalid_argument("t grid needs at least twice as many points as fitted terms");
  for (int i = 0; i < rows; ++i) {
    if (!(t_grid[i] > 0 && t_grid[i] <= 0.5)) throw std::invalid_argument("t grid must lie in (0, 0.5]");
    if (i > 0 && !(t_grid[i] < t_grid[i - 1])) throw std::invalid_argument("t grid must decrease strictly");
  }

  // Weighted rows: t^{n-1} T(t) = sum_j c_j t^j + sum_j d_j t^{n-1+j} log t (+ c_log t^{n-1} log t).
  Eigen::MatrixXd A(rows, cols + 1);
  Eigen::VectorXd b(rows);
  for (int i = 0; i < rows; ++i) {
    const double t = t_grid[i];
    for (int j = 0; j < powers; ++j) A(i, j) = std::pow(t, j);
    for (int j = 1; j <= options.log_nuisance; ++j) A(i, powers + j - 1) = std::pow(t, n - 1 + j) * std::log(t);
    A(i, cols) = std::pow(t, n - 1) * std::log(t);
    b(i) = std::pow(t, n - 1) * trace[i];
  }
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (int j = 0; j <= cols; ++j) A.col(j) /= scale(j);

  const Eigen::MatrixXd main = A.leftCols(cols);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(main).singularValues();
  TraceFit fit;
  fit.t_grid = t_grid;
  fit.trace = trace;
  fit.condition_number = sv(0) / sv(sv.size() - 1);
  if (!(fit.condition_number < options.max_condition)) {
    throw std::runtime_error("ill-conditioned fit (condition " + std::to_string(fit.condition_number) +
                             "); use a geometric t grid spanning at least a decade, e.g. 40 points in [1e-3, 0.2]");
  }
  const Eigen::VectorXd c = main.colPivHouseholderQr().solve(b);
  fit.residual = std::sqrt((main * c - b).squaredNorm() / rows);
  for (int k = 0; k < n; ++k) fit.coefficients.push_back(c(k) / scale(k));

  const Eigen::VectorXd with_log = A.colPivHouseholderQr().solve(b);
  fit.log_term_diagnostic = with_log(cols) / scale(cols);
  return fit;
}

TraceFit fit_asymptotics(const ModelDomain& domain, const std::vector<double>& t_grid, const FitOptions& options) {
  if (t_grid.empty()) throw std::invalid_argument("empty t grid");
  double t_min = t_grid.front();
  for (double t : t_grid) t_min = std::min(t_min, t);
  if (!(t_min > 0)) throw std::invalid_argument("t grid must lie in (0, 0.5]");
  const SpectrumModel spec = model_spectrum(domain, cutoff_for(domain, t_min));
  std::vector<double> trace;
  trace.reserve(t_grid.size());
  for (double t : t_grid) trace.push_back(heat_trace(spec, t).value);
  return fit_samples(domain.n(), t_grid, trace, options);
}

std::vector<Rational> integrated_reference(const ModelDomain& domain) {
  const int n = domain.n();
  GeometryJet jet = ball_jet(n, domain.radius, heat_jet_order(n - 1));
  jet.q[0] = Complex(domain.q);
  jet.k = domain.k;
  // vol(S^{n-2}) vol(S^{n-1}) / (2 pi)^{n-1} = 2 / (n-2)!.
  Rational area = 2 / factorial(n - 2);
  for (int j = 0; j < n - 1; ++j) area *= domain.radius;
  std::vector<Rational> out;
  for (const TaggedValue& v : heat_coefficients(jet, n - 1)) {
    out.push_back(Rational(v.coeff.real() * factorial(n - v.gamma_shift - 1) * area));
  }
  return out;
}

}  // namespace dtnheat
