#pragma once

// Parameter-dependent symbols near a boundary point.
//
// A symbol is a finite sum of terms
//     c(x) * xi^beta * w1^e * s^q,
// where w1 = |xi'| = sqrt(Q), Q = sum g^{ab}(x) xi_a xi_b, s = (w1 - tau)^{-1},
// and c is a jet in x. Exponents e >= 2 never survive: w1^2 is expanded into
// the polynomial Q. In the printed form w1^e is written w1^eps * Q^-m with
// eps in {0, 1}.
//
// The xi-degree of a term is |beta| + e; its parametric degree, counting tau
// as degree one, is |beta| + e - q.

#include "dtnheat/geometry.hpp"
#include "dtnheat/jet.hpp"

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace dtnheat {

inline constexpr int kMaxXi = kMaxVars - 1;

struct TermKey {
  std::array<std::uint8_t, kMaxXi> beta{};
  std::int8_t e = 0;
  std::uint8_t q = 0;

  int xi_degree() const;
  int degree() const { return xi_degree() - q; }
  auto operator<=>(const TermKey&) const = default;
};

/// Metric data shared by all symbols built over one geometry jet.
class SymbolContext {
 public:
  explicit SymbolContext(const GeometryJet& jet);

  int n() const { return n_; }
  int dim() const { return n_ - 1; }
  int order() const { return order_; }
  const JetSpace& space() const { return *space_; }

  const Jet& ginv(int a, int b) const { return ginv_[a][b]; }
  /// d/dx_i of g^{ab}, i over all n coordinates.
  const Jet& dginv(int i, int a, int b) const { return dginv_[i][a][b]; }
  bool dginv_zero(int i, int a, int b) const { return dginv_zero_[i][a][b]; }
  bool ginv_zero(int a, int b) const { return ginv_zero_[a][b]; }

 private:
  int n_;
  int order_;
  const JetSpace* space_;
  JetMatrix ginv_;
  std::vector<JetMatrix> dginv_;
  std::vector<std::vector<bool>> ginv_zero_;
  std::vector<std::vector<std::vector<bool>>> dginv_zero_;
};

using ContextPtr = std::shared_ptr<const SymbolContext>;

class Symbol {
 public:
  using TermMap = std::map<TermKey, Jet>;

  Symbol() = default;
  Symbol(ContextPtr ctx, int order);

  static Symbol zero(ContextPtr ctx, int order) { return Symbol(std::move(ctx), order); }
  /// c(x) as a symbol of degree 0.
  static Symbol function(ContextPtr ctx, const Jet& c);
  static Symbol constant(ContextPtr ctx, const Complex& c);
  static Symbol w1(ContextPtr ctx);
  static Symbol s(ContextPtr ctx);
  static Symbol xi(ContextPtr ctx, int a);
  /// Q = sum g^{ab} xi_a xi_b, expanded.
  static Symbol Q(ContextPtr ctx);
  /// Single term coefficient * key; folds e >= 2.
  static Symbol term(ContextPtr ctx, const TermKey& key, const Jet& coefficient);

  const ContextPtr& context() const { return ctx_; }
  int order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Adds coefficient * key, truncating to this symbol's order; folds e >= 2 into Q.
  void add_term(const TermKey& key, const Jet& coefficient, const Complex& factor = Complex(1));

  Symbol& operator+=(const Symbol& o);
  Symbol& operator-=(const Symbol& o);
  Symbol& operator*=(const Complex& c);
  Symbol operator-() const;
  friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
  friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
  friend Symbol operator*(Symbol a, const Complex& c) { return a *= c; }
  friend Symbol operator*(const Symbol& a, const Symbol& b);

  /// Product keeping only terms whose parametric degree lies in [min_degree, max_degree].
  static Symbol mul(const Symbol& a, const Symbol& b, int min_degree, int max_degree);
  /// this += factor * a * b restricted to parametric degrees [min_degree, max_degree].
  void add_product(const Symbol& a, const Symbol& b, const Complex& factor, int min_degree, int max_degree);

  Symbol diff_xi(int a) const;
  /// Lowers the order by one; throws JetOrderError at order 0.
  Symbol diff_x(int i) const;

  Symbol homogeneous_part(int degree) const;
  /// Coefficients replaced by their values at the base point.
  Symbol eval_x0() const;
  Symbol truncated(int order) const;
  /// Multiplies every term by s^{-1}(w1 - tau)^0, i.e. lowers the s-power: (w1 - tau) * s^q = s^{q-1}.
  Symbol times_w1_minus_tau() const;
  /// Multiplies by w1^shift (shift <= 1 keeps the representation exact).
  Symbol times_w1_power(int shift) const;

  /// Lowest and highest parametric degrees present; {0, 0} when empty.
  std::pair<int, int> degree_range() const;
  bool is_homogeneous(int degree) const;
  int max_s_power() const;

  /// Canonical form in which every (s-power, parity of e, degree) class uses a single w1 exponent.
  Symbol reduced() const;
  /// Exact zero test, accounting for w1^2 = Q.
  bool is_zero() const;
  friend bool operator==(const Symbol& a, const Symbol& b) { return (a - b).is_zero(); }

  /// Text lines "coeff * xi^(b1,..) * w1^eps * Q^-m * s^q" ordered by (degree, beta, eps, m, q).
  std::string dump() const;

 private:
  void check_compatible(const Symbol& o) const;
  void lower_order(int order);
  Jet& slot(const TermKey& key);

  ContextPtr ctx_;
  int order_ = 0;
  TermMap terms_;
};

/// A symbol split into homogeneous parts, with d_xi^J and d_x^J of each part
/// memoized for repeated compositions. J is given as per-variable counts.
class ComposeOperand {
 public:
  explicit ComposeOperand(const Symbol& s);

  const ContextPtr& context() const { return ctx_; }
  int order() const { return order_; }
  const std::map<int, Symbol>& parts() const { return parts_; }
  const Symbol& xi_derivative(int degree, const std::vector<int>& counts) const;
  /// Throws JetOrderError when |J| exceeds the jet order.
  const Symbol& x_derivative(int degree, const std::vector<int>& counts) const;

 private:
  using Key = std::pair<int, std::vector<int>>;
  const Symbol& derivative(std::map<Key, Symbol>& cache, bool in_xi, int degree, const std::vector<int>& counts) const;

  ContextPtr ctx_;
  int order_ = 0;
  std::map<int, Symbol> parts_;
  mutable std::map<Key, Symbol> xi_cache_;
  mutable std::map<Key, Symbol> x_cache_;
};

/// Composition sum_J (-i)^{|J|}/J! d_xi^J f d_x^J g over tangential multi-indices J,
/// keeping parametric degrees in [min_degree, max_degree] and jet order <= max_order.
Symbol compose(const Symbol& f, const Symbol& g, int min_degree, int max_degree);
Symbol compose(const Symbol& f, const Symbol& g, int min_degree);
Symbol compose(const ComposeOperand& f, const ComposeOperand& g, int min_degree, int max_degree, int max_order);

/// Homogeneous components indexed by parametric degree.
using SymbolLadder = std::map<int, Symbol>;

/// Sum of all ladder entries.
Symbol ladder_sum(const SymbolLadder& ladder);

std::string dump_ladder(const SymbolLadder& ladder);

}  // namespace dtnheat
