#include "dtnheat/dtn.hpp"

#include <algorithm>

namespace dtnheat {

namespace {

const Complex kI = Complex::i();

const Symbol& entry(const SymbolLadder& ladder, int degree) {
  auto it = ladder.find(degree);
  if (it == ladder.end()) throw std::out_of_range("ladder has no entry of degree " + std::to_string(degree));
  return it->second;
}

using OperandLadder = std::map<int, ComposeOperand>;

OperandLadder operands_of(const SymbolLadder& ladder) {
  OperandLadder out;
  for (const auto& [deg, sym] : ladder) out.emplace(deg, ComposeOperand(sym));
  return out;
}

/// sum over degrees (i, j) of f_i o g_j restricted to degree d and jet order <= order.
void add_composition_at_degree(Symbol& acc, const OperandLadder& f, const OperandLadder& g, int d, int order) {
  for (const auto& [i, fi] : f) {
    for (const auto& [j, gj] : g) {
      if (i + j < d || fi.parts().empty() || gj.parts().empty()) continue;
      acc += compose(fi, gj, d, d, order);
    }
  }
}

/// Jet order carried by the degree-d part of the factorization residual.
int residual_order(const OperatorSymbols& ops, int d) { return std::max(0, ops.ctx->order() - 2 + d); }

Symbol residual_at_degree(const OperatorSymbols& ops, const SymbolLadder& w, const OperandLadder& wo, int d) {
  const int n = ops.ctx->n();
  Symbol r = Symbol::zero(ops.ctx, residual_order(ops, d));
  add_composition_at_degree(r, wo, wo, d, r.order());
  if (auto it = w.find(d); it != w.end()) {
    r -= ops.b * it->second;
    r -= it->second.diff_x(n - 1);
  }
  if (d == 2) r += ops.c2;
  if (d == 1) r += ops.c1;
  if (d == 0) r += ops.c0;
  return r.homogeneous_part(d);
}

/// sum over ordered index tuples (a_1..a_L) of d_xi^a f d_x^a g.
Symbol ordered_derivative_sum(const Symbol& f, const Symbol& g, int len) {
  const int dim = f.context()->dim();
  if (len == 0) return f * g;
  Symbol out = Symbol::zero(f.context(), std::min(f.order(), g.order()));
  for (int a = 0; a < dim; ++a) {
    Symbol df = f.diff_xi(a);
    if (df.empty()) continue;
    out += ordered_derivative_sum(df, g.diff_x(a), len - 1);
  }
  return out;
}

}  // namespace

OperatorSymbols operator_symbols(const GeometryJet& jet) {
  return operator_symbols(jet, std::make_shared<SymbolContext>(jet));
}

OperatorSymbols operator_symbols(const GeometryJet& jet, ContextPtr ctx) {
  if (auto v = validate_jet(jet); !v.ok) throw std::invalid_argument(v.message);
  if (jet.jet_order < 2) throw JetOrderError("order too low: operator symbols need jet order 2");
  const int n = jet.n;
  const int d = n - 1;
  const JetSpace& sp = jet.space();
  const int N = jet.jet_order;
  OperatorSymbols ops;
  ops.ctx = ctx;
  ops.A_n = jet.A[d];

  // trace_l = sum g^{ab} d_l g_{ab}
  std::vector<Jet> trace(n, Jet(sp, N - 1));
  for (int l = 0; l < n; ++l) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) trace[l].add_product(ctx->ginv(a, b), jet.g[a][b].derivative(l), Complex(1));
    }
  }

  Jet bj = trace[d] * Complex(Rational(1, 2));
  bj.add_scaled(jet.A[d], Complex(0, 2));
  ops.b = Symbol::function(ctx, bj);

  ops.c2 = -Symbol::Q(ctx);

  ops.c1 = Symbol::zero(ctx, N - 1);
  for (int b = 0; b < d; ++b) {
    Jet coeff(sp, N - 1);
    for (int a = 0; a < d; ++a) {
      coeff.add_product(ctx->ginv(a, b), trace[a], Complex(Rational(1, 2)));
      coeff += ctx->dginv(a, a, b);
    }
    coeff *= kI;
    coeff.add_scaled(jet.A[b], Complex(-2));
    TermKey k;
    k.beta[b] = 1;
    ops.c1.add_term(k, coeff);
  }

  // V = g_{jk} A_j A_k - i (d_j A_j + 1/2 trace_l A_l) + q - k^2
  Jet V(sp, N - 2);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      V.add_product(jet.g[a][b], jet.A[a] * jet.A[b], Complex(1));
    }
  }
  V.add_product(jet.A[d], jet.A[d], Complex(1));
  for (int j = 0; j < n; ++j) {
    V.add_scaled(jet.A[j].derivative(j), Complex(0, -1));
    V.add_product(trace[j], jet.A[j], Complex(Rational(0), Rational(-1, 2)));
  }
  V += jet.q;
  V[0] -= Complex(Rational(jet.k * jet.k));
  ops.c0 = -Symbol::function(ctx, V);
  return ops;
}

SymbolLadder w_recursion(const OperatorSymbols& ops, int depth) {
  if (depth < 1) throw std::invalid_argument("w recursion depth must be at least 1");
  if (ops.ctx->order() < depth + 1) {
    throw JetOrderError("order too low: w recursion to depth " + std::to_string(depth) + " needs jet order " +
                        std::to_string(depth + 1));
  }
  SymbolLadder w;
  OperandLadder wo;
  w.emplace(1, Symbol::w1(ops.ctx));
  wo.emplace(1, ComposeOperand(w.at(1)));
  for (int d = 1; d >= 1 - depth; --d) {
    Symbol r = residual_at_degree(ops, w, wo, d);
    w[d - 1] = r.times_w1_power(-1) * Complex(Rational(-1, 2));
    wo.emplace(d - 1, ComposeOperand(w.at(d - 1)));
  }
  return w;
}

SymbolLadder factorization_residual(const OperatorSymbols& ops, const SymbolLadder& w) {
  const int lowest = w.begin()->first;
  const OperandLadder wo = operands_of(w);
  SymbolLadder out;
  for (int d = 2; d >= lowest + 1; --d) out[d] = residual_at_degree(ops, w, wo, d);
  return out;
}

SymbolLadder dtn_full_symbol(const OperatorSymbols& ops, const SymbolLadder& w) {
  SymbolLadder out = w;
  Symbol shift = Symbol::function(ops.ctx, ops.A_n) * kI;
  out[0] -= shift;
  return out;
}

SymbolLadder resolvent_symbols(const SymbolLadder& dtn, int depth) {
  if (depth < 1) throw std::invalid_argument("resolvent depth must be at least 1");
  const ContextPtr& ctx = dtn.begin()->second.context();
  if (dtn.begin()->first > 2 - depth) throw std::invalid_argument("DtN ladder too short for resolvent depth");
  const OperandLadder dtno = operands_of(dtn);
  SymbolLadder s;
  OperandLadder so;
  const Symbol s1 = Symbol::s(ctx);
  s.emplace(-1, s1);
  so.emplace(-1, ComposeOperand(s1));
  for (int m = 1; m < depth; ++m) {
    Symbol acc = Symbol::zero(ctx, std::max(0, ctx->order() - m));
    add_composition_at_degree(acc, dtno, so, -m, acc.order());
    s.emplace(-1 - m, -(s1 * acc));
    so.emplace(-1 - m, ComposeOperand(s.at(-1 - m)));
  }
  return s;
}

SymbolLadder parametrix_defect(const SymbolLadder& dtn, const SymbolLadder& s) {
  const ContextPtr& ctx = dtn.begin()->second.context();
  const int lowest = s.begin()->first;
  const Symbol w1 = Symbol::w1(ctx);
  const OperandLadder dtno = operands_of(dtn);
  const OperandLadder so = operands_of(s);
  SymbolLadder out;
  for (int d = 0; d >= lowest + 1; --d) {
    Symbol acc = Symbol::zero(ctx, std::max(0, ctx->order() + d));
    add_composition_at_degree(acc, dtno, so, d, acc.order());
    const Symbol& prev = entry(s, d - 1);
    acc += prev.times_w1_minus_tau();
    acc -= w1 * prev;
    if (d == 0) acc -= Symbol::constant(ctx, Complex(1));
    out[d] = acc.homogeneous_part(d);
  }
  return out;
}

namespace closed_form {

Symbol w0(const OperatorSymbols& ops) {
  const ContextPtr& ctx = ops.ctx;
  const int n = ctx->n();
  const Symbol w1 = Symbol::w1(ctx);
  Symbol inner = ordered_derivative_sum(w1, w1, 1) * kI;
  inner += ops.b * w1;
  inner += w1.diff_x(n - 1);
  inner -= ops.c1;
  return inner.times_w1_power(-1) * Complex(Rational(1, 2));
}

Symbol w_minus1(const OperatorSymbols& ops, const Symbol& w0) {
  const ContextPtr& ctx = ops.ctx;
  const int n = ctx->n();
  const Symbol w1 = Symbol::w1(ctx);
  Symbol inner = -(w0 * w0);
  inner += (ordered_derivative_sum(w1, w0, 1) + ordered_derivative_sum(w0, w1, 1)) * kI;
  inner += ordered_derivative_sum(w1, w1, 2) * Complex(Rational(1, 2));
  inner += ops.b * w0;
  inner += w0.diff_x(n - 1);
  inner -= ops.c0;
  return inner.times_w1_power(-1) * Complex(Rational(1, 2));
}

Symbol w_minus2(const OperatorSymbols& ops, const Symbol& w0, const Symbol& wm1) {
  const ContextPtr& ctx = ops.ctx;
  const int n = ctx->n();
  const Symbol w1 = Symbol::w1(ctx);
  Symbol inner = -(w0 * wm1) * Complex(2);
  inner += (ordered_derivative_sum(w1, wm1, 1) + ordered_derivative_sum(w0, w0, 1) +
            ordered_derivative_sum(wm1, w1, 1)) *
           kI;
  inner += (ordered_derivative_sum(w1, w0, 2) + ordered_derivative_sum(w0, w1, 2)) * Complex(Rational(1, 2));
  inner -= ordered_derivative_sum(w1, w1, 3) * Complex(Rational(0), Rational(1, 6));
  inner += ops.b * wm1;
  inner += wm1.diff_x(n - 1);
  return inner.times_w1_power(-1) * Complex(Rational(1, 2));
}

Symbol dtn_degree0_at_x0(const GeometryJet& jet, const ContextPtr& ctx) {
  const int d = jet.n - 1;
  Symbol out = Symbol::zero(ctx, 0);
  Rational H = 0;
  for (const auto& k : jet.kappa) H += k;
  const JetSpace& sp = jet.space();
  out.add_term(TermKey{}, Jet::constant(sp, 0, Complex(Rational(-H / 2))));
  for (int a = 0; a < d; ++a) {
    TermKey k2;
    k2.beta[a] = 2;
    k2.e = -2;
    out.add_term(k2, Jet::constant(sp, 0, Complex(Rational(jet.kappa[a] / 2))));
    TermKey k1;
    k1.beta[a] = 1;
    k1.e = -1;
    out.add_term(k1, Jet::constant(sp, 0, jet.A[a].value()));
  }
  return out;
}

SymbolLadder resolvent(const SymbolLadder& dtn) {
  const Symbol& w1 = entry(dtn, 1);
  const Symbol& s0 = entry(dtn, 0);
  const Symbol& wm1 = entry(dtn, -1);
  const Symbol& wm2 = entry(dtn, -2);
  const ContextPtr& ctx = w1.context();
  const Symbol s1 = Symbol::s(ctx);
  const Complex half(Rational(1, 2));
  const Complex i6(Rational(0), Rational(1, 6));

  Symbol b2 = s0 * s1 - ordered_derivative_sum(w1, s1, 1) * kI;
  Symbol s2 = -(s1 * b2);

  Symbol b3 = s0 * s2 + wm1 * s1;
  b3 -= (ordered_derivative_sum(w1, s2, 1) + ordered_derivative_sum(s0, s1, 1)) * kI;
  b3 -= ordered_derivative_sum(w1, s1, 2) * half;
  Symbol s3 = -(s1 * b3);

  Symbol b4 = s0 * s3 + wm1 * s2 + wm2 * s1;
  b4 -= (ordered_derivative_sum(w1, s3, 1) + ordered_derivative_sum(s0, s2, 1) + ordered_derivative_sum(wm1, s1, 1)) *
        kI;
  b4 -= (ordered_derivative_sum(w1, s2, 2) + ordered_derivative_sum(s0, s1, 2)) * half;
  b4 += ordered_derivative_sum(w1, s1, 3) * i6;
  Symbol s4 = -(s1 * b4);

  SymbolLadder out;
  out.emplace(-1, s1);
  out.emplace(-2, s2);
  out.emplace(-3, s3);
  out.emplace(-4, s4);
  return out;
}

}  // namespace closed_form

}  // namespace dtnheat
