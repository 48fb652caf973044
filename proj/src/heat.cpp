#include "dtnheat/heat.hpp"

#include <algorithm>

namespace dtnheat {

namespace {

Rational double_factorial_odd(int m) {
  // (2m - 1)!!
  Rational r = 1;
  for (int j = 2 * m - 1; j > 1; j -= 2) r *= j;
  return r;
}

Rational poly(int n, std::initializer_list<long> coeffs_high_to_low) {
  mpz_class v = 0;
  for (long c : coeffs_high_to_low) v = v * n + c;
  return Rational(v);
}

void check_theorem_range(int n, int k_index) {
  if (k_index < 0 || k_index > 3) throw std::domain_error("closed forms exist for k = 0..3 only");
  if (n < heat_min_dimension(k_index)) {
    throw std::domain_error("a_" + std::to_string(k_index) + " requires n >= " +
                            std::to_string(heat_min_dimension(k_index)));
  }
}

}  // namespace

Rational tau_factor(int p) {
  if (p < 1) throw std::invalid_argument("contour integral of a tau-free term");
  return Rational(-1) / factorial(p - 1);
}

Symbol tau_integral(const Symbol& s) {
  Symbol out = Symbol::zero(s.context(), s.order());
  for (const auto& [key, c] : s.terms()) {
    if (key.q == 0) throw std::invalid_argument("contour integral of a tau-free term");
    TermKey k = key;
    k.q = 0;
    out.add_term(k, c, Complex(tau_factor(key.q)));
  }
  return out;
}

Rational xi_moment(int n, const std::vector<int>& beta, int e, int gamma_shift) {
  int total = 0;
  for (int b : beta) {
    if (b % 2 != 0) return 0;
    total += b;
  }
  const int arg = n - 1 + e + total;
  if (arg <= 0) throw std::domain_error("xi moment diverges: n too small");
  Rational c = gamma_ratio(n, n - arg, gamma_shift);
  for (int b : beta) c *= double_factorial_odd(b / 2);
  for (int j = 0; j < total / 2; ++j) c /= n - 1 + 2 * j;
  return c;
}

Complex xi_integral(const Symbol& weighted, int gamma_shift) {
  const int n = weighted.context()->n();
  const int dim = n - 1;
  Complex total;
  std::vector<int> beta(dim);
  for (const auto& [key, c] : weighted.terms()) {
    if (key.q != 0) throw std::invalid_argument("xi integral of a term with an s factor");
    for (int a = 0; a < dim; ++a) beta[a] = key.beta[a];
    const Rational m = xi_moment(n, beta, key.e, gamma_shift);
    if (sgn(m) == 0) continue;
    total += c.value() * m;
  }
  return total;
}

int heat_gamma_shift(int k_index) { return std::max(k_index, 1); }

int heat_min_dimension(int k_index) { return std::max(2, k_index + 1); }

int heat_jet_order(int k_index) {
  if (k_index == 0) return 0;
  return k_index <= 2 ? 2 : k_index;
}

std::vector<TaggedValue> heat_coefficients(const GeometryJet& jet, int k_max) {
  if (k_max < 0) throw std::invalid_argument("k must be non-negative");
  if (jet.n < heat_min_dimension(k_max)) {
    throw std::domain_error("a_" + std::to_string(k_max) + " requires n >= " + std::to_string(heat_min_dimension(k_max)));
  }
  if (jet.jet_order < heat_jet_order(k_max)) {
    throw JetOrderError("order too low: a_" + std::to_string(k_max) + " needs jet order " +
                        std::to_string(heat_jet_order(k_max)));
  }
  if (auto v = validate_jet(jet); !v.ok) throw std::invalid_argument(v.message);
  const GeometryJet j = truncate_jet(jet, heat_jet_order(k_max));

  SymbolLadder s;
  if (k_max == 0) {
    auto ctx = std::make_shared<SymbolContext>(j);
    s.emplace(-1, Symbol::s(ctx));
  } else {
    const OperatorSymbols ops = operator_symbols(j);
    const SymbolLadder dtn = dtn_full_symbol(ops, w_recursion(ops, std::max(1, k_max - 1)));
    s = resolvent_symbols(dtn, k_max + 1);
  }

  std::vector<TaggedValue> out;
  for (int k = 0; k <= k_max; ++k) {
    const int shift = heat_gamma_shift(k);
    const Complex value = xi_integral(tau_integral(s.at(-1 - k).eval_x0()), shift);
    out.push_back(TaggedValue{jet.n, shift, value * Complex(kContourOrientation)});
  }
  return out;
}

TaggedValue heat_coefficient(const GeometryJet& jet, int k_index) {
  return heat_coefficients(jet, k_index).at(k_index);
}

InvariantExpression theorem_reference(int n, int k_index, bool constant_curvature) {
  check_theorem_range(n, k_index);
  InvariantExpression e;
  e.n = n;
  e.k_index = k_index;
  e.gamma_shift = heat_gamma_shift(k_index);
  const Rational n2m1 = poly(n, {1, 0, -1});
  switch (k_index) {
    case 0:
      e.add(Invariant::One, Complex(1));
      break;
    case 1:
      e.add(Invariant::H, Complex(Rational(n - 2) / (2 * (n - 1))));
      break;
    case 2: {
      const Rational pre = 1 / (24 * n2m1);
      if (constant_curvature) {
        e.add(Invariant::H2, Complex(pre * 3 * (n - 2) * poly(n, {1, -1, -4})));
        e.add(Invariant::R, Complex(pre * -4 * poly(n, {1, -3, -1})));
        e.add(Invariant::K, Complex(pre * 6 * n * (n - 2) * (n - 1) * (n - 1)));
      } else {
        e.add(Invariant::H2, Complex(pre * 3 * poly(n, {1, -4, 1, 8})));
        e.add(Invariant::SumKappa2, Complex(pre * 3 * n * (n - 3)));
        e.add(Invariant::RTilde, Complex(pre * 3 * (n + 1) * (n - 2)));
        e.add(Invariant::R, Complex(pre * -(n + 1) * (n - 4)));
      }
      e.add(Invariant::Q, Complex(pre * -12 * n2m1));
      e.add(Invariant::K2, Complex(pre * 12 * n2m1));
      break;
    }
    default: {
      const Rational pre = 1 / (48 * Rational(n + 3) * n2m1);
      auto put = [&](Invariant b, const Rational& alpha) { e.add(b, Complex(Rational(pre * alpha))); };
      if (constant_curvature) {
        put(Invariant::H3, poly(n, {1, -2, -25, 12, 164, -96}));
        put(Invariant::HK, 2 * n * (n - 2) * poly(n, {3, -12, -38, 108, -21}));
        put(Invariant::HR, -2 * poly(n, {3, -13, -44, 120, 72}));
        put(Invariant::SumKappa3, 4 * poly(n, {3, -1, -14, -12}));
      } else {
        put(Invariant::H3, poly(n, {1, -5, -10, 52, 2, -114}));
        put(Invariant::HRTilde, 3 * (n + 3) * poly(n, {1, -6, 2, 14}));
        put(Invariant::HR, -(n + 3) * poly(n, {3, -20, 12, 42}));
        put(Invariant::HSumKappa2, 3 * poly(n, {1, -1, -12, 22, 6}));
        put(Invariant::SumKappa3, Rational(-8 * (n - 2) * (n - 3)));
        put(Invariant::KappaRTildeDiag, 12 * (n + 3) * poly(n, {1, -3, 1}));
        put(Invariant::KappaRDiag, Rational(-4 * n * (n + 3) * (3 * n - 8)));
        put(Invariant::NablaRTildeNN, Rational(6 * (n + 1) * (n + 3) * (n - 2)));
      }
      put(Invariant::DqDn, -12 * (n + 3) * n2m1);
      put(Invariant::HQ, -12 * (n + 3) * (n - 4) * n2m1);
      put(Invariant::K2H, 12 * (n + 3) * (n - 4) * n2m1);
      break;
    }
  }
  return e;
}

InvariantExpression invariant_projection(const std::vector<ProjectionSample>& samples, int n, int k_index,
                                         bool constant_curvature) {
  return invariant_projection(samples, n, k_index,
                              constant_curvature ? space_form_basis(k_index) : theorem_basis(k_index));
}

InvariantExpression invariant_projection(const std::vector<ProjectionSample>& samples, int n, int k_index,
                                         const std::vector<Invariant>& basis) {
  const std::size_t m = basis.size();
  const int shift = heat_gamma_shift(k_index);

  // Reduced row echelon rows [basis values | target]; pivot_col[r] is the pivot of row r.
  std::vector<std::vector<Complex>> rows;
  std::vector<std::size_t> pivot_col;
  bool inconsistent = false;
  for (const auto& sample : samples) {
    if (sample.invariants.n != n || sample.value.n != n) throw std::invalid_argument("sample dimension mismatch");
    std::vector<Complex> row(m + 1);
    for (std::size_t j = 0; j < m; ++j) row[j] = invariant_value(basis[j], sample.invariants, sample.K);
    row[m] = sample.value.retagged(shift).coeff;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Complex f = row[pivot_col[r]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j <= m; ++j) row[j] -= f * rows[r][j];
    }
    std::size_t p = 0;
    while (p < m && row[p].is_zero()) ++p;
    if (p == m) {
      if (!row[m].is_zero()) inconsistent = true;
      continue;
    }
    const Complex inv = Complex(1) / row[p];
    for (auto& x : row) x *= inv;
    for (auto& other : rows) {
      const Complex f = other[p];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j <= m; ++j) other[j] -= f * row[j];
    }
    rows.push_back(std::move(row));
    pivot_col.push_back(p);
  }
  if (inconsistent) throw std::runtime_error("basis insufficient");
  if (rows.size() < m) throw std::runtime_error("samples not in general position");

  InvariantExpression e;
  e.n = n;
  e.k_index = k_index;
  e.gamma_shift = shift;
  for (std::size_t r = 0; r < rows.size(); ++r) e.add(basis[pivot_col[r]], rows[r][m]);
  return e;
}

std::vector<VerifyRun> verify_theorem(const VerifyOptions& options) {
  std::vector<VerifyRun> runs;
  for (int n = options.n_min; n <= options.n_max; ++n) {
    const int k_top = std::min(options.k_max, n - 1);
    if (k_top < 0) continue;
    for (std::uint64_t seed : options.seeds) {
      const GeometryJet jet = random_jet(n, std::max(2, heat_jet_order(k_top)), seed, options.jet_options);
      const std::vector<TaggedValue> engine = heat_coefficients(jet, k_top);
      const CurvatureInvariants inv = curvature_package(jet);
      for (int k = 0; k <= k_top; ++k) {
        VerifyRun run;
        run.n = n;
        run.seed = seed;
        run.k = k;
        run.engine = engine[k];
        if (options.inject && options.inject->n == n && options.inject->seed == seed && options.inject->k == k) {
          run.engine.coeff += options.inject->delta;
        }
        run.reference = theorem_reference(n, k).tagged(inv);
        run.equal = run.engine == run.reference;
        runs.push_back(std::move(run));
      }
    }
  }
  return runs;
}

std::vector<CorollaryCheck> verify_corollary(int n_min, int n_max) {
  std::vector<CorollaryCheck> out;
  for (int k = 2; k <= 3; ++k) {
    for (int n = std::max(n_min, heat_min_dimension(k)); n <= n_max; ++n) {
      CorollaryCheck c;
      c.n = n;
      c.k = k;
      c.substituted = space_form_substitute(theorem_reference(n, k));
      c.substituted.prune();
      c.reference = theorem_reference(n, k, true);
      c.equal = c.substituted == c.reference;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace dtnheat
