#include "doctest.h"

#include "dtnheat/dtn.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace dtnheat;

namespace {

ContextPtr context_for(const GeometryJet& jet) { return std::make_shared<SymbolContext>(jet); }

RandomJetOptions full_options() {
  RandomJetOptions o;
  o.with_A = true;
  o.with_q = true;
  o.with_k = true;
  return o;
}

/// conj(f(x, -xi)) with tau real.
Symbol conj_reflect(const Symbol& f) {
  Symbol out = Symbol::zero(f.context(), f.order());
  for (const auto& [k, c] : f.terms()) {
    Jet cc = c;
    for (std::size_t i = 0; i < cc.size(); ++i) cc[i] = cc[i].conj();
    const int sign = k.xi_degree() - k.e;
    out.add_term(k, cc, Complex(sign % 2 == 0 ? 1 : -1));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("operator symbols at the base point") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GeometryJet jet = random_jet(3 + static_cast<int>(seed % 3), 3, seed, full_options());
    const OperatorSymbols ops = operator_symbols(jet);
    const int d = jet.n - 1;
    Rational H = 0;
    for (const auto& k : jet.kappa) H += k;

    Symbol b_expected = Symbol::constant(ops.ctx, Complex(Rational(-H)) + jet.A[d].value() * Complex(0, 2));
    CHECK(ops.b.eval_x0() == b_expected);

    Symbol c1_expected = Symbol::zero(ops.ctx, 0);
    for (int a = 0; a < d; ++a) c1_expected += Symbol::xi(ops.ctx, a) * Symbol::constant(ops.ctx, jet.A[a].value() * Complex(-2));
    CHECK(ops.c1.eval_x0() == c1_expected);
    CHECK(ops.c2 == -Symbol::Q(ops.ctx));
  }
}

TEST_CASE("flat half-space has a trivial ladder") {
  for (int n = 2; n <= 5; ++n) {
    const GeometryJet jet = GeometryJet::flat(n, 4);
    const OperatorSymbols ops = operator_symbols(jet);
    const SymbolLadder w = w_recursion(ops, 3);
    CHECK(w.size() == 5);
    CHECK(w.at(1) == Symbol::w1(ops.ctx));
    for (int j = 0; j >= -3; --j) CHECK(w.at(j).is_zero());
    const SymbolLadder s = resolvent_symbols(dtn_full_symbol(ops, w), 4);
    CHECK(s.at(-1) == Symbol::s(ops.ctx));
    for (int j = -2; j >= -4; --j) CHECK(s.at(j).is_zero());
  }
}

TEST_CASE("w recursion needs enough jet order") {
  const GeometryJet jet = random_jet(3, 2, 5);
  const OperatorSymbols ops = operator_symbols(jet);
  CHECK_NOTHROW(w_recursion(ops, 1));
  CHECK_THROWS_AS(w_recursion(ops, 2), JetOrderError);
  CHECK_THROWS_AS(w_recursion(ops, 0), std::invalid_argument);
  GeometryJet low = GeometryJet::flat(3, 1);
  CHECK_THROWS_AS(operator_symbols(low), JetOrderError);
}

TEST_CASE("recursion matches the closed forms") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int n = 3 + static_cast<int>(seed % 2);
    const GeometryJet jet = random_jet(n, 3, 100 + seed, full_options());
    const OperatorSymbols ops = operator_symbols(jet);
    const SymbolLadder w = w_recursion(ops, 2);
    const Symbol w0 = closed_form::w0(ops);
    const Symbol wm1 = closed_form::w_minus1(ops, w0);
    const Symbol wm2 = closed_form::w_minus2(ops, w0, wm1);
    CHECK(w.at(0) == w0);
    CHECK(w.at(-1) == wm1);
    CHECK(w.at(-2) == wm2);
    CHECK(w.at(0).is_homogeneous(0));
    CHECK(w.at(-1).is_homogeneous(-1));
    CHECK(w.at(-2).is_homogeneous(-2));

    const SymbolLadder dtn = dtn_full_symbol(ops, w);
    CHECK(dtn.at(0).eval_x0() == closed_form::dtn_degree0_at_x0(jet, ops.ctx));

    const SymbolLadder s = resolvent_symbols(dtn, 4);
    const SymbolLadder sc = closed_form::resolvent(dtn);
    for (int j = -1; j >= -4; --j) {
      CHECK(s.at(j) == sc.at(j));
      CHECK(s.at(j).is_homogeneous(j));
    }
    const Symbol s1 = Symbol::s(ops.ctx);
    CHECK(s.at(-2).eval_x0() == (-(s1 * s1) * dtn.at(0)).eval_x0());
  }
}

TEST_CASE("factorization residual vanishes to depth 3") {
  for (int n = 3; n <= 5; ++n) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const GeometryJet jet = random_jet(n, 4, 1000 * n + seed, full_options());
      const OperatorSymbols ops = operator_symbols(jet);
      const SymbolLadder w = w_recursion(ops, 3);
      const SymbolLadder r = factorization_residual(ops, w);
      CHECK(r.size() == 5);
      for (const auto& [deg, part] : r) {
        INFO("n=" << n << " degree " << deg);
        CHECK(part.is_zero());
      }
    }
  }
}

TEST_CASE("tampering with w0 is detected") {
  const GeometryJet jet = random_jet(3, 3, 77, full_options());
  const OperatorSymbols ops = operator_symbols(jet);
  SymbolLadder w = w_recursion(ops, 2);
  w[0] += Symbol::constant(ops.ctx, Complex(1));
  const SymbolLadder r = factorization_residual(ops, w);
  CHECK(r.at(2).is_zero());
  CHECK_FALSE(r.at(1).is_zero());
  CHECK(r.at(1) == Symbol::w1(ops.ctx) * Complex(2));
}

TEST_CASE("parametrix defect vanishes") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const GeometryJet jet = random_jet(3 + static_cast<int>(seed % 2), 3, 300 + seed, full_options());
    const OperatorSymbols ops = operator_symbols(jet);
    const SymbolLadder dtn = dtn_full_symbol(ops, w_recursion(ops, 2));
    const SymbolLadder s = resolvent_symbols(dtn, 4);
    const SymbolLadder defect = parametrix_defect(dtn, s);
    CHECK(defect.size() == 4);
    for (const auto& [deg, part] : defect) CHECK(part.is_zero());

    SymbolLadder broken = s;
    broken[-3] += Symbol::s(ops.ctx) * Symbol::s(ops.ctx) * Symbol::s(ops.ctx);
    CHECK_FALSE(parametrix_defect(dtn, broken).at(-2).is_zero());
  }
}

TEST_CASE("real operators give conjugation-symmetric symbols") {
  RandomJetOptions o;
  o.with_q = true;
  o.with_k = true;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const GeometryJet jet = random_jet(3 + static_cast<int>(seed % 2), 3, 500 + seed, o);
    const OperatorSymbols ops = operator_symbols(jet);
    const SymbolLadder dtn = dtn_full_symbol(ops, w_recursion(ops, 2));
    for (const auto& [deg, part] : dtn) CHECK(conj_reflect(part) == part);
    const SymbolLadder s = resolvent_symbols(dtn, 4);
    for (const auto& [deg, part] : s) CHECK(conj_reflect(part) == part);
  }
}

TEST_CASE("ball ladder matches the frozen dump") {
  const GeometryJet jet = ball_jet(3, 1, 3);
  const OperatorSymbols ops = operator_symbols(jet);
  const SymbolLadder dtn = dtn_full_symbol(ops, w_recursion(ops, 2));
  SymbolLadder at_x0;
  for (const auto& [deg, part] : dtn) at_x0.emplace(deg, part.eval_x0());
  const std::string text = dump_ladder(at_x0);
  const std::string path = std::string(DTNHEAT_GOLDEN_DIR) + "/ball3_dtn_x0.txt";
  if (std::getenv("DTNHEAT_REGENERATE_GOLDEN") != nullptr) {
    std::ofstream(path) << text;
  }
  CHECK(text == read_file(path));
}
