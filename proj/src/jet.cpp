#include "dtnheat/jet.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace dtnheat {

namespace {

void enumerate_degree(int nvars, int degree, int var, Exponents& cur, std::vector<Exponents>& out) {
  if (var == nvars - 1) {
    cur[var] = static_cast<std::uint8_t>(degree);
    out.push_back(cur);
    cur[var] = 0;
    return;
  }
  for (int d = degree; d >= 0; --d) {
    cur[var] = static_cast<std::uint8_t>(d);
    enumerate_degree(nvars, degree - d, var + 1, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

JetSpace::JetSpace(int nvars, int max_order) : nvars_(nvars), max_order_(max_order) {
  if (nvars < 1 || nvars > kMaxVars) throw std::invalid_argument("unsupported number of jet variables");
  if (max_order < 0) throw std::invalid_argument("negative jet order");
  offsets_.push_back(0);
  for (int d = 0; d <= max_order; ++d) {
    Exponents cur{};
    enumerate_degree(nvars, d, 0, cur, monomials_);
    offsets_.push_back(monomials_.size());
    degrees_.resize(monomials_.size(), d);
  }
  const std::size_t m = monomials_.size();
  std::map<Exponents, std::size_t> lookup;
  for (std::size_t k = 0; k < m; ++k) lookup.emplace(monomials_[k], k);

  product_table_.assign(m * m, npos);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (degrees_[a] + degrees_[b] > max_order) continue;
      Exponents e{};
      for (int v = 0; v < nvars; ++v) e[v] = monomials_[a][v] + monomials_[b][v];
      product_table_[a * m + b] = lookup.at(e);
    }
  }
  derivative_table_.assign(m * nvars, {0, 0});
  for (std::size_t a = 0; a < m; ++a) {
    for (int v = 0; v < nvars; ++v) {
      int p = monomials_[a][v];
      if (p == 0) continue;
      Exponents e = monomials_[a];
      e[v] -= 1;
      derivative_table_[a * nvars + v] = {lookup.at(e), p};
    }
  }
}

const JetSpace& JetSpace::get(int nvars, int max_order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{nvars, max_order}];
  if (!slot) slot.reset(new JetSpace(nvars, max_order));
  return *slot;
}

std::size_t JetSpace::index_of(const Exponents& e) const {
  int deg = 0;
  for (int v = 0; v < kMaxVars; ++v) {
    if (v >= nvars_ && e[v] != 0) throw std::out_of_range("exponent on nonexistent variable");
    deg += e[v];
  }
  if (deg > max_order_) return npos;
  auto first = monomials_.begin() + static_cast<std::ptrdiff_t>(offsets_[deg]);
  auto last = monomials_.begin() + static_cast<std::ptrdiff_t>(offsets_[deg + 1]);
  // Within a degree, monomials are sorted by descending exponent tuples.
  auto it = std::lower_bound(first, last, e, [](const Exponents& a, const Exponents& b) { return a > b; });
  if (it == last || *it != e) throw std::logic_error("monomial lookup failed");
  return static_cast<std::size_t>(it - monomials_.begin());
}

std::string JetSpace::monomial_text(std::size_t idx) const {
  std::string out;
  for (int v = 0; v < nvars_; ++v) {
    int p = monomials_[idx][v];
    if (p == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(v + 1);
    if (p > 1) out += "^" + std::to_string(p);
  }
  return out.empty() ? "1" : out;
}

Jet::Jet(const JetSpace& space, int order) : space_(&space), order_(order) {
  if (order < 0) throw JetOrderError("jet order exhausted");
  if (order > space.max_order()) order_ = space.max_order();
  coeffs_.resize(space.count(order_));
}

Jet Jet::constant(const JetSpace& space, int order, const Complex& c) {
  Jet j(space, order);
  j.coeffs_[0] = c;
  return j;
}

Jet Jet::variable(const JetSpace& space, int order, int var) {
  Jet j(space, order);
  if (order >= 1) j.coeffs_[space.unit(var)] = Complex(1);
  return j;
}

Complex Jet::coefficient(const Exponents& e) const {
  std::size_t idx = space_->index_of(e);
  if (idx == JetSpace::npos || idx >= coeffs_.size()) return Complex();
  return coeffs_[idx];
}

void Jet::set(const Exponents& e, const Complex& value) {
  std::size_t idx = space_->index_of(e);
  if (idx == JetSpace::npos || idx >= coeffs_.size()) {
    throw JetOrderError("monomial beyond jet order");
  }
  coeffs_[idx] = value;
}

bool Jet::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) { return c.is_zero(); });
}

bool Jet::is_real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) { return c.is_real(); });
}

Jet Jet::truncated(int order) const {
  if (order > order_) throw JetOrderError("cannot raise jet order by truncation");
  Jet j(*space_, order);
  std::copy_n(coeffs_.begin(), j.coeffs_.size(), j.coeffs_.begin());
  return j;
}

Jet Jet::derivative(int var) const {
  if (order_ == 0) throw JetOrderError("jet order exhausted by differentiation");
  Jet out(*space_, order_ - 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    auto [idx, factor] = space_->derivative(k, var);
    if (factor == 0) continue;
    out.coeffs_[idx] = coeffs_[k] * Rational(factor);
  }
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!o.coeffs_[k].is_zero()) coeffs_[k] += o.coeffs_[k];
  }
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!o.coeffs_[k].is_zero()) coeffs_[k] -= o.coeffs_[k];
  }
  return *this;
}

Jet& Jet::operator*=(const Complex& c) {
  for (auto& x : coeffs_) {
    if (!x.is_zero()) x *= c;
  }
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& x : out.coeffs_) x = -x;
  return out;
}

void Jet::add_scaled(const Jet& a, const Complex& factor) {
  if (a.order_ < order_) *this = truncated(a.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!a.coeffs_[k].is_zero()) coeffs_[k].add_product(a.coeffs_[k], factor);
  }
}

void Jet::add_product(const Jet& a, const Jet& b, const Complex& factor) {
  int order = std::min({order_, a.order_, b.order_});
  if (order < order_) *this = truncated(order);
  const std::size_t n = coeffs_.size();
  const bool unit = factor == Complex(1);
  Complex tmp;
  for (std::size_t i = 0; i < n && i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    const int di = space_->degree(i);
    const std::size_t jmax = space_->count(order - di);
    for (std::size_t j = 0; j < jmax; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      std::size_t k = space_->product(i, j);
      if (unit) {
        coeffs_[k].add_product(a.coeffs_[i], b.coeffs_[j]);
      } else {
        tmp = a.coeffs_[i] * b.coeffs_[j];
        coeffs_[k].add_product(tmp, factor);
      }
    }
  }
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(a.space(), std::min(a.order(), b.order()));
  out.add_product(a, b, Complex(1));
  return out;
}

bool operator==(const Jet& a, const Jet& b) {
  if (a.order_ != b.order_ || a.space_ != b.space_) return false;
  return a.coeffs_ == b.coeffs_;
}

std::string Jet::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << dtnheat::to_string(coeffs_[k]) << ")";
    if (k != 0) os << "*" << space_->monomial_text(k);
  }
  if (first) os << "0";
  os << " [O(" << order_ + 1 << ")]";
  return os.str();
}

std::vector<std::vector<Jet>> invert_near_identity(const std::vector<std::vector<Jet>>& m) {
  const std::size_t d = m.size();
  if (d == 0) return {};
  const JetSpace& space = m[0][0].space();
  int order = space.max_order();
  for (const auto& row : m) {
    for (const auto& x : row) order = std::min(order, x.order());
  }
  // m = I + E with E(0) = 0, so m^{-1} = sum_k (-E)^k terminates at k = order.
  std::vector<std::vector<Jet>> negE(d, std::vector<Jet>(d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      Jet e = m[a][b].truncated(order);
      if (a == b) e[0] -= Complex(1);
      if (!e[0].is_zero()) throw std::invalid_argument("matrix is not the identity at the origin");
      negE[a][b] = -e;
    }
  }
  std::vector<std::vector<Jet>> result(d, std::vector<Jet>(d)), power(d, std::vector<Jet>(d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      result[a][b] = Jet::constant(space, order, Complex(a == b ? 1 : 0));
      power[a][b] = result[a][b];
    }
  }
  for (int k = 1; k <= order; ++k) {
    std::vector<std::vector<Jet>> next(d, std::vector<Jet>(d, Jet(space, order)));
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t c = 0; c < d; ++c) {
        if (power[a][c].is_zero()) continue;
        for (std::size_t b = 0; b < d; ++b) next[a][b].add_product(power[a][c], negE[c][b], Complex(1));
      }
    }
    power = std::move(next);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) result[a][b] += power[a][b];
    }
  }
  return result;
}

}  // namespace dtnheat
