#pragma once

// Numeric oracle for the xi moments: adaptive Simpson in polar coordinates.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace dtnheat::testing {

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15 * tol) return left + right + diff / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace detail

/// Splits [a, b] into `pieces` panels first so periodic integrands cannot alias the initial samples.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                               int pieces = 7) {
  double total = 0;
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + i * h, hi = lo + h;
    const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    const double whole = h / 6 * (fa + 4 * fm + fb);
    total += detail::simpson_step(f, lo, hi, fa, fm, fb, whole, tol / pieces, 40);
  }
  return total;
}

/// int_0^inf r^p e^{-r} dr.
inline double radial_moment(double p) {
  double total = 0;
  for (double a = 0; a < 120; a += 4) total += adaptive_simpson([p](double r) { return std::pow(r, p) * std::exp(-r); }, a, a + 4);
  return total;
}

/// int over S^{n-2} of prod theta_a^{beta_a}, for n = 3 (circle) or n = 4 (sphere).
inline double sphere_moment(int n, const std::vector<int>& beta) {
  constexpr double pi = std::numbers::pi;
  if (n == 3) {
    return adaptive_simpson(
        [&](double phi) { return std::pow(std::cos(phi), beta[0]) * std::pow(std::sin(phi), beta[1]); }, 0, 2 * pi);
  }
  return adaptive_simpson(
      [&](double th) {
        const double z = std::cos(th), s = std::sin(th);
        const double ring = adaptive_simpson(
            [&](double phi) { return std::pow(s * std::cos(phi), beta[0]) * std::pow(s * std::sin(phi), beta[1]); }, 0,
            2 * pi, 1e-11);
        return std::pow(z, beta[2]) * s * ring;
      },
      0, pi, 1e-10);
}

/// int over R^{n-1} of xi^beta |xi|^e e^{-|xi|}.
inline double xi_moment_numeric(int n, const std::vector<int>& beta, int e) {
  int total = 0;
  for (int b : beta) total += b;
  return sphere_moment(n, beta) * radial_moment(n - 2 + total + e);
}

}  // namespace dtnheat::testing
