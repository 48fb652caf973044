#pragma once

// Factorization of the magnetic Schrodinger operator in boundary normal
// coordinates, the Dirichlet-to-Neumann symbol, and the resolvent parametrix.
//
//   -L = d_n^2 + B d_n + C,   -L = (d_n + B - W)(d_n + W),
//   sigma(M) = w_1 + (w_0 - i A_n) + w_{-1} + ...,
//   (sigma(M) - tau) o s = 1,  s = s_{-1} + s_{-2} + ...

#include "dtnheat/symbol.hpp"

namespace dtnheat {

struct OperatorSymbols {
  ContextPtr ctx;
  Symbol b;   // degree 0
  Symbol c2;  // degree 2, equals -Q
  Symbol c1;  // degree 1
  Symbol c0;  // degree 0, equals -V
  Jet A_n;
};

/// Requires jet order >= 2.
OperatorSymbols operator_symbols(const GeometryJet& jet);
OperatorSymbols operator_symbols(const GeometryJet& jet, ContextPtr ctx);

/// w_1 .. w_{-depth}, solved degree by degree from the full symbol equation.
/// Needs jet order >= depth + 1.
SymbolLadder w_recursion(const OperatorSymbols& ops, int depth);

/// Homogeneous parts of
///   sum_J (-i)^|J|/J! d_xi^J w d_x^J w - b w - d_n w + c
/// for degrees 2 down to 1 - depth, where w_{-depth} is the last ladder entry.
SymbolLadder factorization_residual(const OperatorSymbols& ops, const SymbolLadder& w);

/// w with the degree-0 entry replaced by w_0 - i A_n.
SymbolLadder dtn_full_symbol(const OperatorSymbols& ops, const SymbolLadder& w);

/// s_{-1} .. s_{-depth}. The DtN ladder must reach degree 2 - depth.
SymbolLadder resolvent_symbols(const SymbolLadder& dtn, int depth);

/// Homogeneous parts of (sigma(M) - tau) o s - 1 for degrees 0 down to 1 - depth.
SymbolLadder parametrix_defect(const SymbolLadder& dtn, const SymbolLadder& s);

// Closed forms written out term by term, used to cross-check the recursions.
namespace closed_form {

Symbol w0(const OperatorSymbols& ops);
Symbol w_minus1(const OperatorSymbols& ops, const Symbol& w0);
Symbol w_minus2(const OperatorSymbols& ops, const Symbol& w0, const Symbol& w_minus1);
/// (w_0 - i A_n) at the base point from kappa, H and A.
Symbol dtn_degree0_at_x0(const GeometryJet& jet, const ContextPtr& ctx);
/// s_{-2}, s_{-3}, s_{-4} from sigma_1, sigma_0, sigma_{-1}, sigma_{-2}.
SymbolLadder resolvent(const SymbolLadder& dtn);

}  // namespace closed_form

}  // namespace dtnheat
