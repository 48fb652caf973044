// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "dtnheat/dtn.hpp"
#include "dtnheat/heat.hpp"
#include "dtnheat/spectra.hpp"
#include "support/quadrature.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

using namespace dtnheat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

RandomJetOptions full_options() { return RandomJetOptions{true, true, true, true}; }

std::vector<std::uint64_t> seed_range(std::uint64_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 1; s <= count; ++s) out.push_back(s);
  return out;
}

Outcome exact_coefficients() {
  VerifyOptions o;
  o.n_min = 4;
  o.n_max = 10;
  o.seeds = seed_range(10);
  o.k_max = 3;
  std::map<int, std::pair<int, int>> per_k;  // k -> (equal, runs)
  for (const VerifyRun& r : verify_theorem(o)) {
    per_k[r.k].second += 1;
    if (r.equal) per_k[r.k].first += 1;
  }
  Outcome out;
  std::ostringstream s;
  for (const auto& [k, counts] : per_k) {
    s << "a" << k << " " << counts.first << "/" << counts.second << " equal; ";
    out.pass = out.pass && counts.first == counts.second;
  }
  out.detail = s.str() + "n = 4..10, 10 jets each";
  return out;
}

Outcome corollary() {
  const std::vector<CorollaryCheck> checks = verify_corollary(3, 10);
  int equal = 0;
  for (const CorollaryCheck& c : checks) equal += c.equal;
  return {equal == static_cast<int>(checks.size()) && !checks.empty(),
          std::to_string(equal) + "/" + std::to_string(checks.size()) + " space-form specializations equal"};
}

Outcome surface_a1() {
  int zero = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    zero += heat_coefficient(random_jet(2, 2, seed, full_options()), 1).coeff.is_zero();
  }
  return {zero == 20, std::to_string(zero) + "/20 random n = 2 jets with a1 = 0"};
}

Outcome magnetic_independence() {
  int equal = 0, total = 0;
  for (int n = 4; n <= 6; ++n) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const GeometryJet jet = random_jet(n, 3, 5000 + seed, full_options());
      GeometryJet other = jet;
      other.A = random_jet(n, 3, 6000 + seed, full_options()).A;
      const auto a = heat_coefficients(jet, 3);
      const auto b = heat_coefficients(other, 3);
      equal += a[2] == b[2] && a[3] == b[3];
      ++total;
    }
  }
  return {equal == total, std::to_string(equal) + "/" + std::to_string(total) + " A-pairs with equal a2 and a3"};
}

Outcome factorization() {
  int clean = 0, total = 0;
  for (int n = 3; n <= 5; ++n) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const OperatorSymbols ops = operator_symbols(random_jet(n, 4, 8000 + seed, full_options()));
      const SymbolLadder r = factorization_residual(ops, w_recursion(ops, 3));
      bool zero = r.size() == 5;
      for (const auto& [deg, part] : r) zero = zero && part.is_zero();
      clean += zero;
      ++total;
    }
  }
  return {clean == total, std::to_string(clean) + "/" + std::to_string(total) + " jets with zero residual at degrees 2..-2"};
}

double sphere_volume(int m) { return 2 * std::pow(std::numbers::pi, (m + 1) / 2.0) / std::tgamma((m + 1) / 2.0); }

Outcome moments() {
  Outcome out;
  out.pass = xi_moment(3, {0, 0}, 0, 1) == Rational(1) && xi_moment(3, {2, 0}, -2, 1) == Rational(1, 2) &&
             xi_moment(3, {2, 2}, -4, 1) == Rational(1, 8);
  double worst = 0;
  for (int n = 3; n <= 4; ++n) {
    const std::vector<std::vector<int>> betas =
        n == 3 ? std::vector<std::vector<int>>{{0, 0}, {2, 0}, {2, 2}, {4, 0}, {4, 2}, {6, 0}}
               : std::vector<std::vector<int>>{{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {2, 2, 2}, {4, 0, 2}, {6, 0, 0}};
    for (const auto& beta : betas) {
      int total = 0;
      for (int b : beta) total += b;
      const double angular = testing::sphere_moment(n, beta);
      for (int e : {-1, 0, 2}) {
        const double exact = xi_moment(n, beta, e - total, 1).get_d() * std::tgamma(n - 1) * sphere_volume(n - 2);
        const double numeric = angular * testing::radial_moment(n - 2 + e);
        worst = std::max(worst, std::abs(numeric - exact) / std::abs(exact));
      }
    }
  }
  out.pass = out.pass && worst <= 1e-8;
  std::ostringstream s;
  s << "displayed n = 3 moments exact; worst quadrature relative error " << worst;
  out.detail = s.str();
  return out;
}

std::string fit_detail(const std::vector<double>& fit, const std::vector<Rational>& ref) {
  std::ostringstream s;
  s.precision(3);
  for (std::size_t i = 0; i < ref.size(); ++i) s << (i ? ", " : "") << "|da" << i << "| = " << std::abs(fit[i] - ref[i].get_d());
  return s.str();
}

bool within(const std::vector<double>& fit, const std::vector<Rational>& ref, const std::vector<double>& tol) {
  bool ok = true;
  for (std::size_t i = 0; i < ref.size(); ++i) ok = ok && std::abs(fit[i] - ref[i].get_d()) <= tol[i];
  return ok;
}

const std::vector<double> kFitTol{1e-6, 1e-4, 1e-3};

Outcome ball_fit() {
  const TraceFit fit = fit_asymptotics(make_domain(DomainKind::Ball, 1), default_t_grid());
  const std::vector<Rational> expected{2, 1, Rational(1, 3)};
  return {within(fit.coefficients, expected, kFitTol), "unit ball: " + fit_detail(fit.coefficients, expected)};
}

Outcome disk_fit() {
  const ModelDomain disk = make_domain(DomainKind::Disk, 1);
  const double t = 1e-3;
  const TraceValue v = heat_trace(model_spectrum(disk, cutoff_for(disk, t)), t);
  const TraceFit fit = fit_asymptotics(disk, default_t_grid());
  const double lead = std::abs(t * v.value - 2);
  std::ostringstream s;
  s.precision(3);
  s << "|t T(t) - 2| = " << lead << " at t = 1e-3; |a1| = " << std::abs(fit.coefficients[1]);
  return {lead <= 1e-6 && std::abs(fit.coefficients[1]) <= 1e-4, s.str()};
}

Outcome potential_fit() {
  const ModelDomain a = make_domain(DomainKind::Ball, 1, Rational(1, 4));
  const ModelDomain b = make_domain(DomainKind::Ball, 1, Rational(1, 2), Rational(1, 2));
  const TraceFit fa = fit_asymptotics(a, default_t_grid());
  const TraceFit fb = fit_asymptotics(b, default_t_grid());
  const SpectrumModel sa = model_spectrum(a, 200), sb = model_spectrum(b, 200);
  bool same = sa.eigenvalues.size() == sb.eigenvalues.size() && fa.coefficients == fb.coefficients;
  for (std::size_t i = 0; same && i < sa.eigenvalues.size(); ++i) same = sa.eigenvalues[i].lambda == sb.eigenvalues[i].lambda;
  const double err = std::abs(fa.coefficients[2] - 1.0 / 12);
  std::ostringstream s;
  s.precision(3);
  s << "q = 1/4: |a2 - 1/12| = " << err << "; q = 1/2, k = 1/2 " << (same ? "identical" : "differs");
  return {err <= 1e-2 && same, s.str()};
}

Outcome radius_scaling() {
  Outcome out;
  for (const Rational& r : {Rational(1, 2), Rational(1), Rational(2)}) {
    const ModelDomain d = make_domain(DomainKind::Ball, r);
    const TraceFit fit = fit_asymptotics(d, default_t_grid());
    const std::vector<Rational> ref = integrated_reference(d);
    out.pass = out.pass && within(fit.coefficients, ref, kFitTol);
    out.detail += (out.detail.empty() ? "" : "; ") + std::string("r = ") + r.get_str() + ": " + fit_detail(fit.coefficients, ref);
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact a0..a3 on random jets", exact_coefficients},
      {"space-form specialization", corollary},
      {"a1 vanishes for n = 2", surface_a1},
      {"independence of the magnetic potential", magnetic_independence},
      {"factorization residual", factorization},
      {"xi moments", moments},
      {"unit ball trace fit", ball_fit},
      {"disk trace", disk_fit},
      {"constant potential", potential_fit},
      {"radius scaling", radius_scaling},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << " (" << std::lround(secs) << " s)" << std::endl;
  }
  std::cout << failed << " of " << criteria.size() << " criteria failed" << std::endl;
  return failed == 0 ? 0 : 1;
}
