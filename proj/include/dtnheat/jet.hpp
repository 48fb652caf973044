#pragma once

// Truncated multivariate Taylor polynomials ("jets") at the origin.
//
// A Jet of order N over variables x_1..x_m stores the Taylor coefficients of
// all monomials of total degree <= N, in graded order. Products truncate at
// the smaller of the two orders; each derivative lowers the order by one.

#include "dtnheat/exact.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtnheat {

inline constexpr int kMaxVars = 12;
using Exponents = std::array<std::uint8_t, kMaxVars>;

/// Raised when an operation needs more Taylor data than a jet carries.
class JetOrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monomial bookkeeping shared by all jets with the same (nvars, max_order).
class JetSpace {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  /// Interned instance; lives for the whole program.
  static const JetSpace& get(int nvars, int max_order);

  int nvars() const { return nvars_; }
  int max_order() const { return max_order_; }

  /// Number of monomials of degree <= order.
  std::size_t count(int order) const { return offsets_.at(order + 1); }
  const Exponents& exponents(std::size_t idx) const { return monomials_[idx]; }
  int degree(std::size_t idx) const { return degrees_[idx]; }
  std::size_t index_of(const Exponents& e) const;
  std::size_t unit(int var) const { return 1 + var; }

  /// Index of the product monomial, or npos when its degree exceeds max_order.
  std::size_t product(std::size_t a, std::size_t b) const {
    return product_table_[a * monomials_.size() + b];
  }
  /// d/dx_var of monomial idx = factor * monomial(result); factor 0 means zero.
  std::pair<std::size_t, int> derivative(std::size_t idx, int var) const {
    return derivative_table_[idx * nvars_ + var];
  }

  std::string monomial_text(std::size_t idx) const;

 private:
  JetSpace(int nvars, int max_order);

  int nvars_;
  int max_order_;
  std::vector<Exponents> monomials_;
  std::vector<int> degrees_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> product_table_;
  std::vector<std::pair<std::size_t, int>> derivative_table_;
};

class Jet {
 public:
  Jet() = default;
  Jet(const JetSpace& space, int order);

  static Jet constant(const JetSpace& space, int order, const Complex& c);
  static Jet variable(const JetSpace& space, int order, int var);

  const JetSpace& space() const { return *space_; }
  bool valid() const { return space_ != nullptr; }
  int order() const { return order_; }
  std::size_t size() const { return coeffs_.size(); }

  const Complex& operator[](std::size_t idx) const { return coeffs_[idx]; }
  Complex& operator[](std::size_t idx) { return coeffs_[idx]; }

  /// Coefficient of x^e; zero for monomials beyond the jet's order.
  Complex coefficient(const Exponents& e) const;
  void set(const Exponents& e, const Complex& value);
  const Complex& value() const { return coeffs_[0]; }

  bool is_zero() const;
  bool is_real() const;

  Jet truncated(int order) const;
  Jet derivative(int var) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Complex& c);
  Jet operator-() const;

  /// this += factor * a * b, truncated to this->order().
  void add_product(const Jet& a, const Jet& b, const Complex& factor);
  /// this += factor * a.
  void add_scaled(const Jet& a, const Complex& factor);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Complex& c) { return a *= c; }
  friend Jet operator*(const Jet& a, const Jet& b);

  friend bool operator==(const Jet& a, const Jet& b);

  std::string to_string() const;

 private:
  const JetSpace* space_ = nullptr;
  int order_ = 0;
  std::vector<Complex> coeffs_;
};

/// Inverse of a square matrix of jets whose value at the origin is the identity.
std::vector<std::vector<Jet>> invert_near_identity(const std::vector<std::vector<Jet>>& m);

}  // namespace dtnheat
