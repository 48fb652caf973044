#include "dtnheat/invariants.hpp"

#include <sstream>
#include <stdexcept>

namespace dtnheat {

namespace {

struct NameEntry {
  Invariant b;
  const char* name;
};

constexpr NameEntry kNames[] = {
    {Invariant::One, "1"},
    {Invariant::H, "H"},
    {Invariant::H2, "H^2"},
    {Invariant::SumKappa2, "sum_kappa2"},
    {Invariant::RTilde, "R_tilde"},
    {Invariant::R, "R"},
    {Invariant::Q, "q"},
    {Invariant::K2, "k^2"},
    {Invariant::H3, "H^3"},
    {Invariant::HRTilde, "H*R_tilde"},
    {Invariant::HR, "H*R"},
    {Invariant::HSumKappa2, "H*sum_kappa2"},
    {Invariant::SumKappa3, "sum_kappa3"},
    {Invariant::KappaRTildeDiag, "sum_kappa_R_tilde_diag"},
    {Invariant::KappaRDiag, "sum_kappa_R_diag"},
    {Invariant::NablaRTildeNN, "nabla_n_R_tilde_nn"},
    {Invariant::DqDn, "dq_dn"},
    {Invariant::HQ, "H*q"},
    {Invariant::K2H, "k^2*H"},
    {Invariant::HK, "H*K"},
    {Invariant::K, "K"},
    {Invariant::DnRTilde, "d_n_R_tilde"},
    {Invariant::LaplacianH, "Delta_H"},
};

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::string invariant_name(Invariant b) {
  for (const auto& e : kNames) {
    if (e.b == b) return e.name;
  }
  throw std::logic_error("unnamed invariant");
}

Invariant parse_invariant(const std::string& name) {
  for (const auto& e : kNames) {
    if (name == e.name) return e.b;
  }
  throw std::invalid_argument("unknown invariant '" + name + "'");
}

const std::vector<Invariant>& theorem_basis(int k_index) {
  static const std::vector<std::vector<Invariant>> bases = {
      {Invariant::One},
      {Invariant::H},
      {Invariant::H2, Invariant::SumKappa2, Invariant::RTilde, Invariant::R, Invariant::Q, Invariant::K2},
      {Invariant::H3, Invariant::HRTilde, Invariant::HR, Invariant::HSumKappa2, Invariant::SumKappa3,
       Invariant::KappaRTildeDiag, Invariant::KappaRDiag, Invariant::NablaRTildeNN, Invariant::DqDn,
       Invariant::HQ, Invariant::K2H},
  };
  return bases.at(k_index);
}

const std::vector<Invariant>& extended_basis(int k_index) {
  static const std::vector<Invariant> a3 = [] {
    std::vector<Invariant> b = theorem_basis(3);
    b.push_back(Invariant::DnRTilde);
    b.push_back(Invariant::LaplacianH);
    return b;
  }();
  return k_index == 3 ? a3 : theorem_basis(k_index);
}

const std::vector<Invariant>& space_form_basis(int k_index) {
  static const std::vector<std::vector<Invariant>> bases = {
      {Invariant::One},
      {Invariant::H},
      {Invariant::H2, Invariant::R, Invariant::K, Invariant::Q, Invariant::K2},
      {Invariant::H3, Invariant::HK, Invariant::HR, Invariant::SumKappa3, Invariant::DqDn, Invariant::HQ,
       Invariant::K2H},
  };
  return bases.at(k_index);
}

Complex invariant_value(Invariant b, const CurvatureInvariants& inv, const std::optional<Rational>& K) {
  auto need_K = [&]() -> const Rational& {
    if (!K) throw std::invalid_argument("sectional curvature K required");
    return *K;
  };
  switch (b) {
    case Invariant::One:
      return Complex(1);
    case Invariant::H:
      return Complex(inv.H);
    case Invariant::H2:
      return Complex(inv.H * inv.H);
    case Invariant::SumKappa2:
      return Complex(inv.sum_kappa2);
    case Invariant::RTilde:
      return Complex(inv.R_tilde);
    case Invariant::R:
      return Complex(inv.R_boundary);
    case Invariant::Q:
      return inv.q0;
    case Invariant::K2:
      return Complex(inv.k * inv.k);
    case Invariant::H3:
      return Complex(inv.H * inv.H * inv.H);
    case Invariant::HRTilde:
      return Complex(inv.H * inv.R_tilde);
    case Invariant::HR:
      return Complex(inv.H * inv.R_boundary);
    case Invariant::HSumKappa2:
      return Complex(inv.H * inv.sum_kappa2);
    case Invariant::SumKappa3:
      return Complex(inv.sum_kappa3);
    case Invariant::KappaRTildeDiag:
      return Complex(dot(inv.kappa, inv.R_tilde_diag));
    case Invariant::KappaRDiag:
      return Complex(dot(inv.kappa, inv.R_diag));
    case Invariant::NablaRTildeNN:
      if (!inv.nabla_n_R_tilde_nn) throw std::invalid_argument("normal derivative of Ricci not available");
      return Complex(*inv.nabla_n_R_tilde_nn);
    case Invariant::DnRTilde:
      if (!inv.dn_R_tilde) throw std::invalid_argument("normal derivative of scalar curvature not available");
      return Complex(*inv.dn_R_tilde);
    case Invariant::LaplacianH:
      if (!inv.laplacian_H) throw std::invalid_argument("Laplacian of H not available");
      return Complex(*inv.laplacian_H);
    case Invariant::DqDn:
      return inv.dq_dn;
    case Invariant::HQ:
      return inv.q0 * Complex(inv.H);
    case Invariant::K2H:
      return Complex(inv.k * inv.k * inv.H);
    case Invariant::HK:
      return Complex(inv.H * need_K());
    case Invariant::K:
      return Complex(need_K());
  }
  throw std::logic_error("unhandled invariant");
}

Rational gamma_ratio(int n, int from, int to) {
  // Gamma(a) / Gamma(b) with a = n - from, b = n - to.
  const int a = n - from;
  const int b = n - to;
  if (a < 1 || b < 1) throw std::domain_error("Gamma argument not positive");
  Rational r = 1;
  for (int j = b; j < a; ++j) r *= j;
  for (int j = a; j < b; ++j) r /= j;
  return r;
}

TaggedValue TaggedValue::retagged(int new_shift) const {
  TaggedValue out{n, new_shift, coeff * gamma_ratio(n, gamma_shift, new_shift)};
  return out;
}

std::string TaggedValue::to_string() const {
  std::ostringstream os;
  os << dtnheat::to_string(coeff) << " * Gamma(" << n - gamma_shift << ")*vol(S^" << n - 2 << ")/(2pi)^"
     << n - 1;
  return os.str();
}

bool operator==(const TaggedValue& a, const TaggedValue& b) {
  if (a.n != b.n) return false;
  if (a.gamma_shift == b.gamma_shift) return a.coeff == b.coeff;
  return a.retagged(b.gamma_shift).coeff == b.coeff;
}

void InvariantExpression::add(Invariant b, const Complex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs.emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

void InvariantExpression::prune() {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
  }
}

Complex InvariantExpression::evaluate(const CurvatureInvariants& inv, const std::optional<Rational>& K) const {
  Complex s;
  for (const auto& [b, c] : coeffs) s.add_product(c, invariant_value(b, inv, K));
  return s;
}

TaggedValue InvariantExpression::tagged(const CurvatureInvariants& inv, const std::optional<Rational>& K) const {
  return TaggedValue{n, gamma_shift, evaluate(inv, K)};
}

std::string InvariantExpression::to_string() const {
  std::ostringstream os;
  os << "Gamma(n-" << gamma_shift << ")*vol(S^{n-2})/(2pi)^{n-1} * [";
  bool first = true;
  for (const auto& [b, c] : coeffs) {
    if (!first) os << " + ";
    first = false;
    os << "(" << dtnheat::to_string(c) << ")*" << invariant_name(b);
  }
  if (first) os << "0";
  os << "]";
  return os.str();
}

bool operator==(const InvariantExpression& a, const InvariantExpression& b) {
  if (a.n != b.n) return false;
  auto strip = [](const InvariantExpression& e) {
    std::map<Invariant, Complex> m;
    for (const auto& [k, v] : e.coeffs) {
      if (!v.is_zero()) m.emplace(k, v);
    }
    return m;
  };
  auto ma = strip(a);
  auto mb = strip(b);
  if (a.gamma_shift != b.gamma_shift) {
    if (ma.empty() && mb.empty()) return true;
    const Rational r = gamma_ratio(a.n, a.gamma_shift, b.gamma_shift);
    for (auto& [k, v] : ma) v *= r;
  }
  return ma == mb;
}

}  // namespace dtnheat
