#include "dtnheat/symbol.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace dtnheat {

int TermKey::xi_degree() const {
  int d = e;
  for (auto b : beta) d += b;
  return d;
}

namespace {

TermKey with_xi(TermKey k, int a, int b) {
  k.beta[a] += 1;
  k.beta[b] += 1;
  return k;
}

TermKey with_xi(TermKey k, int a) {
  k.beta[a] += 1;
  return k;
}

}  // namespace

SymbolContext::SymbolContext(const GeometryJet& jet)
    : n_(jet.n), order_(jet.jet_order), space_(&jet.space()) {
  ginv_ = invert_near_identity(jet.g);
  const int d = n_ - 1;
  ginv_zero_.assign(d, std::vector<bool>(d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) ginv_zero_[a][b] = ginv_[a][b].is_zero();
  }
  if (order_ >= 1) {
    dginv_.assign(n_, JetMatrix(d, std::vector<Jet>(d)));
    dginv_zero_.assign(n_, std::vector<std::vector<bool>>(d, std::vector<bool>(d)));
    for (int i = 0; i < n_; ++i) {
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          dginv_[i][a][b] = ginv_[a][b].derivative(i);
          dginv_zero_[i][a][b] = dginv_[i][a][b].is_zero();
        }
      }
    }
  }
}

Symbol::Symbol(ContextPtr ctx, int order) : ctx_(std::move(ctx)), order_(order) {
  if (order_ < 0) throw JetOrderError("symbol order exhausted");
}

Symbol Symbol::function(ContextPtr ctx, const Jet& c) {
  Symbol s(ctx, c.order());
  s.add_term(TermKey{}, c);
  return s;
}

Symbol Symbol::constant(ContextPtr ctx, const Complex& c) {
  const int order = ctx->order();
  Jet j = Jet::constant(ctx->space(), order, c);
  return function(std::move(ctx), j);
}

Symbol Symbol::w1(ContextPtr ctx) {
  TermKey k;
  k.e = 1;
  const int order = ctx->order();
  return term(ctx, k, Jet::constant(ctx->space(), order, Complex(1)));
}

Symbol Symbol::s(ContextPtr ctx) {
  TermKey k;
  k.q = 1;
  const int order = ctx->order();
  return term(ctx, k, Jet::constant(ctx->space(), order, Complex(1)));
}

Symbol Symbol::xi(ContextPtr ctx, int a) {
  TermKey k;
  k.beta[a] = 1;
  const int order = ctx->order();
  return term(ctx, k, Jet::constant(ctx->space(), order, Complex(1)));
}

Symbol Symbol::Q(ContextPtr ctx) {
  TermKey k;
  k.e = 2;
  const int order = ctx->order();
  return term(ctx, k, Jet::constant(ctx->space(), order, Complex(1)));
}

Symbol Symbol::term(ContextPtr ctx, const TermKey& key, const Jet& coefficient) {
  Symbol s(ctx, coefficient.order());
  s.add_term(key, coefficient);
  return s;
}

void Symbol::lower_order(int order) {
  if (order >= order_) return;
  order_ = order;
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = it->second.truncated(order);
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
}

Jet& Symbol::slot(const TermKey& key) {
  auto it = terms_.find(key);
  if (it == terms_.end()) it = terms_.emplace(key, Jet(ctx_->space(), order_)).first;
  return it->second;
}

void Symbol::add_term(const TermKey& key, const Jet& coefficient, const Complex& factor) {
  if (coefficient.order() < order_) lower_order(coefficient.order());
  if (key.e >= 2) {
    const int d = ctx_->dim();
    TermKey lowered = key;
    lowered.e -= 2;
    for (int a = 0; a < d; ++a) {
      for (int b = a; b < d; ++b) {
        if (ctx_->ginv_zero(a, b)) continue;
        Jet c(ctx_->space(), order_);
        c.add_product(coefficient, ctx_->ginv(a, b), Complex(a == b ? 1 : 2));
        add_term(with_xi(lowered, a, b), c, factor);
      }
    }
    return;
  }
  Jet& s = slot(key);
  s.add_scaled(coefficient, factor);
  if (s.is_zero()) terms_.erase(key);
}

void Symbol::check_compatible(const Symbol& o) const {
  if (ctx_ != o.ctx_) throw std::invalid_argument("symbols built over different contexts");
}

Symbol& Symbol::operator+=(const Symbol& o) {
  if (!ctx_) return *this = o;
  if (!o.ctx_) return *this;
  check_compatible(o);
  lower_order(o.order_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Symbol& Symbol::operator-=(const Symbol& o) {
  if (!o.ctx_) return *this;
  if (!ctx_) return *this = -o;
  check_compatible(o);
  lower_order(o.order_);
  for (const auto& [k, c] : o.terms_) add_term(k, c, Complex(-1));
  return *this;
}

Symbol& Symbol::operator*=(const Complex& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, j] : terms_) j *= c;
  return *this;
}

Symbol Symbol::operator-() const {
  Symbol out = *this;
  for (auto& [k, j] : out.terms_) j = -j;
  return out;
}

void Symbol::add_product(const Symbol& a, const Symbol& b, const Complex& factor, int min_degree, int max_degree) {
  check_compatible(a);
  check_compatible(b);
  lower_order(std::min(a.order_, b.order_));
  const bool unit = factor == Complex(1);
  for (const auto& [ka, ca] : a.terms_) {
    const int da = ka.degree();
    for (const auto& [kb, cb] : b.terms_) {
      const int deg = da + kb.degree();
      if (deg < min_degree || deg > max_degree) continue;
      TermKey k;
      for (int v = 0; v < kMaxXi; ++v) k.beta[v] = ka.beta[v] + kb.beta[v];
      k.e = static_cast<std::int8_t>(ka.e + kb.e);
      k.q = static_cast<std::uint8_t>(ka.q + kb.q);
      if (k.e >= 2) {
        Jet prod(ctx_->space(), order_);
        prod.add_product(ca, cb, factor);
        add_term(k, prod);
        continue;
      }
      Jet& s = slot(k);
      if (unit) {
        s.add_product(ca, cb, Complex(1));
      } else {
        s.add_product(ca, cb, factor);
      }
      if (s.is_zero()) terms_.erase(k);
    }
  }
}

Symbol Symbol::mul(const Symbol& a, const Symbol& b, int min_degree, int max_degree) {
  a.check_compatible(b);
  Symbol out(a.ctx_, std::min(a.order_, b.order_));
  out.add_product(a, b, Complex(1), min_degree, max_degree);
  return out;
}

Symbol operator*(const Symbol& a, const Symbol& b) {
  return Symbol::mul(a, b, std::numeric_limits<int>::min() / 2, std::numeric_limits<int>::max() / 2);
}

Symbol Symbol::diff_xi(int a) const {
  Symbol out(ctx_, order_);
  const int d = ctx_->dim();
  for (const auto& [k, c] : terms_) {
    if (k.beta[a] > 0) {
      TermKey nk = k;
      nk.beta[a] -= 1;
      out.add_term(nk, c, Complex(Rational(k.beta[a])));
    }
    if (k.e == 0 && k.q == 0) continue;
    for (int g = 0; g < d; ++g) {
      if (ctx_->ginv_zero(a, g)) continue;
      Jet cg = c * ctx_->ginv(a, g);
      // d/dxi_a w1 = w1^{-1} sum_g g^{ag} xi_g, d s = -s^2 d w1.
      if (k.e != 0) {
        TermKey nk = with_xi(k, g);
        nk.e -= 2;
        out.add_term(nk, cg, Complex(Rational(k.e)));
      }
      if (k.q != 0) {
        TermKey nk = with_xi(k, g);
        nk.e -= 1;
        nk.q += 1;
        out.add_term(nk, cg, Complex(Rational(-k.q)));
      }
    }
  }
  return out;
}

Symbol Symbol::diff_x(int i) const {
  if (order_ == 0) throw JetOrderError("coefficient jet order exhausted by x-derivative");
  Symbol out(ctx_, order_ - 1);
  const int d = ctx_->dim();
  for (const auto& [k, c] : terms_) {
    out.add_term(k, c.derivative(i));
    if (k.e == 0 && k.q == 0) continue;
    // d_i w1 = 1/2 w1^{-1} sum d_i g^{ab} xi_a xi_b.
    for (int a = 0; a < d; ++a) {
      for (int b = a; b < d; ++b) {
        if (ctx_->dginv_zero(i, a, b)) continue;
        Jet cg(ctx_->space(), order_ - 1);
        cg.add_product(c, ctx_->dginv(i, a, b), Complex(a == b ? Rational(1, 2) : Rational(1)));
        if (k.e != 0) {
          TermKey nk = with_xi(k, a, b);
          nk.e -= 2;
          out.add_term(nk, cg, Complex(Rational(k.e)));
        }
        if (k.q != 0) {
          TermKey nk = with_xi(k, a, b);
          nk.e -= 1;
          nk.q += 1;
          out.add_term(nk, cg, Complex(Rational(-k.q)));
        }
      }
    }
  }
  return out;
}

Symbol Symbol::homogeneous_part(int degree) const {
  Symbol out(ctx_, order_);
  for (const auto& [k, c] : terms_) {
    if (k.degree() == degree) out.terms_.emplace(k, c);
  }
  return out;
}

Symbol Symbol::truncated(int order) const {
  Symbol out = *this;
  out.lower_order(order);
  return out;
}

Symbol Symbol::eval_x0() const { return truncated(0); }

Symbol Symbol::times_w1_minus_tau() const {
  Symbol out(ctx_, order_);
  for (const auto& [k, c] : terms_) {
    if (k.q == 0) throw std::logic_error("tau would appear outside a resolvent factor");
    TermKey nk = k;
    nk.q -= 1;
    out.add_term(nk, c);
  }
  return out;
}

Symbol Symbol::times_w1_power(int shift) const {
  Symbol out(ctx_, order_);
  for (const auto& [k, c] : terms_) {
    TermKey nk = k;
    nk.e = static_cast<std::int8_t>(nk.e + shift);
    out.add_term(nk, c);
  }
  return out;
}

std::pair<int, int> Symbol::degree_range() const {
  if (terms_.empty()) return {0, 0};
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  for (const auto& [k, c] : terms_) {
    lo = std::min(lo, k.degree());
    hi = std::max(hi, k.degree());
  }
  return {lo, hi};
}

bool Symbol::is_homogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.degree() == degree; });
}

int Symbol::max_s_power() const {
  int q = 0;
  for (const auto& [k, c] : terms_) q = std::max(q, static_cast<int>(k.q));
  return q;
}

Symbol Symbol::reduced() const {
  // Class of a term: (s-power, parity of e, parametric degree).
  std::map<std::tuple<int, int, int>, int> lowest;
  for (const auto& [k, c] : terms_) {
    auto cls = std::make_tuple(static_cast<int>(k.q), k.e & 1, k.degree());
    auto it = lowest.find(cls);
    if (it == lowest.end()) {
      lowest.emplace(cls, k.e);
    } else {
      it->second = std::min(it->second, static_cast<int>(k.e));
    }
  }
  Symbol out(ctx_, order_);
  const int d = ctx_->dim();
  for (const auto& [k, c] : terms_) {
    const int target = lowest.at(std::make_tuple(static_cast<int>(k.q), k.e & 1, k.degree()));
    // Write xi^beta w1^e as xi^beta Q^{(e - target)/2} w1^target with Q expanded.
    std::map<TermKey, Jet> cur;
    TermKey base = k;
    base.e = static_cast<std::int8_t>(target);
    cur.emplace(base, c);
    for (int step = 0; step < (k.e - target) / 2; ++step) {
      std::map<TermKey, Jet> next;
      for (const auto& [ck, cc] : cur) {
        for (int a = 0; a < d; ++a) {
          for (int b = a; b < d; ++b) {
            if (ctx_->ginv_zero(a, b)) continue;
            TermKey nk = with_xi(ck, a, b);
            auto it = next.find(nk);
            if (it == next.end()) it = next.emplace(nk, Jet(ctx_->space(), order_)).first;
            it->second.add_product(cc, ctx_->ginv(a, b), Complex(a == b ? 1 : 2));
          }
        }
      }
      cur = std::move(next);
    }
    for (const auto& [ck, cc] : cur) out.add_term(ck, cc);
  }
  return out;
}

bool Symbol::is_zero() const {
  if (terms_.empty()) return true;
  return reduced().terms_.empty();
}

std::string Symbol::dump() const {
  struct Line {
    int degree;
    std::array<std::uint8_t, kMaxXi> beta;
    int eps;
    int m;
    int q;
    std::string text;
  };
  std::vector<Line> lines;
  const int d = ctx_ ? ctx_->dim() : 0;
  for (const auto& [k, c] : terms_) {
    const int eps = k.e & 1;
    const int m = (eps - k.e) / 2;
    std::ostringstream os;
    os << "[" << k.degree() << "] ";
    if (c.order() == 0) {
      os << to_string(c.value());
    } else {
      os << c.to_string();
    }
    os << " * xi^(";
    for (int v = 0; v < d; ++v) os << (v ? "," : "") << static_cast<int>(k.beta[v]);
    os << ") * w1^" << eps << " * Q^-" << m << " * s^" << static_cast<int>(k.q);
    lines.push_back({k.degree(), k.beta, eps, m, k.q, os.str()});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.degree, a.beta, a.eps, a.m, a.q) < std::tie(b.degree, b.beta, b.eps, b.m, b.q);
  });
  std::string out;
  for (const auto& l : lines) out += l.text + "\n";
  return out;
}

namespace {

struct ComposeState {
  int d;
  int min_degree;
  int max_degree;
  int min_len;
  int max_len;
  int f_degree;
  int g_degree;
  const ComposeOperand* f;
  const ComposeOperand* g;
  Symbol* out;
};

void compose_rec(const ComposeState& st, int start, int len, std::vector<int>& counts) {
  const Symbol& df = st.f->xi_derivative(st.f_degree, counts);
  if (df.empty()) return;
  if (len >= st.min_len) {
    Rational jfact = 1;
    for (int c : counts) jfact *= factorial(c);
    const Symbol& dg = st.g->x_derivative(st.g_degree, counts);
    st.out->add_product(df, dg, minus_i_power(len) * Complex(Rational(1 / jfact)), st.min_degree, st.max_degree);
  }
  if (len == st.max_len) return;
  for (int a = start; a < st.d; ++a) {
    counts[a] += 1;
    compose_rec(st, a, len + 1, counts);
    counts[a] -= 1;
  }
}

}  // namespace

ComposeOperand::ComposeOperand(const Symbol& s) : ctx_(s.context()), order_(s.order()) {
  if (s.empty()) return;
  auto [lo, hi] = s.degree_range();
  for (int deg = lo; deg <= hi; ++deg) {
    Symbol p = s.homogeneous_part(deg);
    if (!p.empty()) parts_.emplace(deg, std::move(p));
  }
}

const Symbol& ComposeOperand::xi_derivative(int degree, const std::vector<int>& counts) const {
  return derivative(xi_cache_, true, degree, counts);
}

const Symbol& ComposeOperand::x_derivative(int degree, const std::vector<int>& counts) const {
  return derivative(x_cache_, false, degree, counts);
}

const Symbol& ComposeOperand::derivative(std::map<Key, Symbol>& cache, bool in_xi, int degree,
                                         const std::vector<int>& counts) const {
  int last = -1;
  for (int v = 0; v < static_cast<int>(counts.size()); ++v) {
    if (counts[v] > 0) last = v;
  }
  if (last < 0) return parts_.at(degree);
  Key key{degree, counts};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<int> parent = counts;
  parent[last] -= 1;
  const Symbol& base = derivative(cache, in_xi, degree, parent);
  Symbol d = in_xi ? base.diff_xi(last) : base.diff_x(last);
  return cache.emplace(std::move(key), std::move(d)).first->second;
}

Symbol compose(const ComposeOperand& f, const ComposeOperand& g, int min_degree, int max_degree, int max_order) {
  if (!f.context() || !g.context()) return Symbol();
  if (f.context() != g.context()) throw std::invalid_argument("symbols built over different contexts");
  Symbol out(f.context(), std::max(0, std::min({f.order(), g.order(), max_order})));
  const int dim = f.context()->dim();
  std::vector<int> counts(dim, 0);
  for (const auto& [fd, fp] : f.parts()) {
    for (const auto& [gd, gp] : g.parts()) {
      const int max_len = fd + gd - min_degree;
      if (max_len < 0) continue;
      ComposeState st{dim, min_degree, max_degree, std::max(0, fd + gd - max_degree), max_len, fd, gd, &f, &g, &out};
      compose_rec(st, 0, 0, counts);
    }
  }
  return out;
}

Symbol compose(const Symbol& f, const Symbol& g, int min_degree, int max_degree) {
  if (!f.context() || !g.context()) return Symbol();
  if (f.context() != g.context()) throw std::invalid_argument("symbols built over different contexts");
  if (f.empty() || g.empty()) return Symbol(f.context(), std::min(f.order(), g.order()));
  return compose(ComposeOperand(f), ComposeOperand(g), min_degree, max_degree, std::numeric_limits<int>::max());
}

Symbol compose(const Symbol& f, const Symbol& g, int min_degree) {
  return compose(f, g, min_degree, std::numeric_limits<int>::max() / 2);
}

Symbol ladder_sum(const SymbolLadder& ladder) {
  Symbol out;
  for (const auto& [deg, s] : ladder) out += s;
  return out;
}

std::string dump_ladder(const SymbolLadder& ladder) {
  std::string out;
  for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) {
    out += "degree " + std::to_string(it->first) + "\n";
    out += it->second.dump();
  }
  return out;
}

}  // namespace dtnheat
