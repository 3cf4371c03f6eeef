#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ospyb/brauer.hpp"
#include "ospyb/matalg.hpp"
#include "ospyb/report.hpp"

namespace ospyb {

enum class GeneratorVariant { tilde, plain, abstract };

/// Matrix of representation operators G^a_b (an arity-1 operator with entries
/// in an algebra E) plus the unit of E.
template <class E>
struct GeneratorMatrix {
  OpMatrix<E> G;
  E one;
  GeneratorVariant variant = GeneratorVariant::abstract;

  const SpacePtr& space() const { return G.space(); }
};

/// L(u) = u^2 1 + u G + N.
template <class E>
struct EvaluationL {
  GeneratorMatrix<E> G;
  OpMatrix<E> N;
};

// ------------------------------------------------------- concrete matrices

/// (G~^f_g)^a_c = eps^{fa} eps_{gc} - eps (-1)^{[c][a]} delta^f_c delta^a_g,
/// stored with G^f_g as a module matrix on V.
GeneratorMatrix<MatAlg> basis_tilde_G(const SpacePtr& s);

enum class FundamentalVariant { twisted, plain };

/// twisted: G^{a1 a2}_{c1 c2} from K~ - eps P; plain: from K - eps P. Slot 1
/// carries the generator index, slot 2 the module index.
GeneratorMatrix<MatAlg> fundamental_G(const SpacePtr& s, FundamentalVariant v = FundamentalVariant::twisted);

/// G^{a1}_{c1} -> module matrix (a2, c2) taken from an arity-2 operator.
GeneratorMatrix<MatAlg> generators_from_operator(const GradedOperator& t, GeneratorVariant v);
/// Inverse of generators_from_operator (requires module size = dim V).
GradedOperator generators_as_operator(const GeneratorMatrix<MatAlg>& g);

/// Parity of a homogeneous arity-1 operator; throws SpaceError otherwise.
int operator_parity(const GradedOperator& a);
/// [A, B]_pm = AB - (-1)^{[A][B]} BA for homogeneous arity-1 operators.
GradedOperator supercommutator(const GradedOperator& a, const GradedOperator& b);

/// [A, B]_pm for algebra elements of given parities.
template <class E>
E supercommutator(const E& a, int pa, const E& b, int pb) {
  return (pa * pb) & 1 ? a * b + b * a : a * b - b * a;
}

/// Supercommutators of all pairs of basis_tilde_G elements against the
/// closed structure-constant formula.
VerificationReport verify_structure_constants(const SpacePtr& s);
/// K12 (G~31 + (-)^{12} G~32 (-)^{12}) = 0 and the right-multiplied form.
VerificationReport verify_basis_K_condition(const SpacePtr& s);
/// P12 (-)^{12} G~13 (-)^{12} = G~23 P12 and (-)^{12} G~13 (-)^{12} P12 = P12 G~23.
VerificationReport verify_basis_P_condition(const SpacePtr& s);
/// [R^(u), (-)^{12} G~13 (-)^{12} + G~23] = 0 on V^{(x)3}, slot 3 labelling the generator.
VerificationReport verify_R_invariance(const SpacePtr& s, RForm form = RForm::braid);

// ---------------------------------------------------------------- helpers

namespace osp_detail {

template <class E>
OpMatrix<E> slot1(const OpMatrix<E>& x) {
  return embed(x, 2, {1});
}

/// (-)^{12} X_2 (-)^{12}.
template <class E>
OpMatrix<E> slot2_tilde(const OpMatrix<E>& x) {
  return sign_conj(embed(x, 2, {2}), 1, 2);
}

template <class E>
OpMatrix<E> comm(const OpMatrix<E>& a, const OpMatrix<E>& b) {
  return a * b - b * a;
}

template <class E>
OpMatrix<E> scaled(const Rational& c, const OpMatrix<E>& a) {
  return scale(a, Scalar(c));
}

}  // namespace osp_detail

/// str(X) = sum_a (-1)^{[a]} X^a_a as an element of E.
template <class E>
E supertrace_of(const OpMatrix<E>& x) {
  if (x.arity() != 1) throw SpaceError("supertrace expects an arity-1 operator");
  E t;
  for (int a = 0; a < x.dim(); ++a)
    if (const E* e = x.find(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(a)))
      t += x.space()->par(a) ? -*e : *e;
  return t;
}

/// G_{ab} = eps_{ac} G^c_b.
template <class E>
OpMatrix<E> lower_first(const OpMatrix<E>& g) {
  const auto& s = *g.space();
  OpMatrix<E> r(g.space(), 1);
  for (int a = 0; a < s.dim; ++a)
    for (const auto& [c, w] : s.lower_rows[static_cast<std::size_t>(a)])
      for (int b = 0; b < s.dim; ++b)
        if (const E* x = g.find(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(b)))
          r.add(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b), Scalar(w) * *x);
  return r;
}

/// delta^a_b times an element of E.
template <class E>
OpMatrix<E> diagonal_of(const SpacePtr& s, const E& x) {
  return identity_op<E>(s, 1, x);
}

/// G - (eps/omega) str(G) delta; throws DegenerateOmegaError when omega = 0.
template <class E>
GeneratorMatrix<E> traceless_projection(const GeneratorMatrix<E>& l) {
  const auto& s = *l.space();
  s.require_nondegenerate_omega();
  const E t = supertrace_of(l.G);
  GeneratorMatrix<E> g = l;
  g.G = l.G - diagonal_of(l.space(), Scalar(Rational(s.eps) / s.omega) * t);
  return g;
}

// -------------------------------------------------------- osp relations

/// L1 (-)L2(-) - (-)L2(-) L1 - [eps P - K, (-)L2(-)].
template <class E>
OpMatrix<E> osp_comm_residual(const OpMatrix<E>& l, const E& one) {
  using namespace osp_detail;
  const auto& sp = l.space();
  const Rational eps = sp->eps;
  const auto L1 = slot1(l), L2 = slot2_tilde(l);
  const auto X = lift(scale(build_P(sp), Scalar(eps)) - build_K(sp), one);
  return comm(L1, L2) - comm(X, L2);
}

/// Same left side against [K - eps P, L1].
template <class E>
OpMatrix<E> osp_comm_alt_residual(const OpMatrix<E>& l, const E& one) {
  using namespace osp_detail;
  const auto& sp = l.space();
  const auto L1 = slot1(l), L2 = slot2_tilde(l);
  const auto X = lift(build_K(sp) - scale(build_P(sp), Scalar(sp->eps)), one);
  return comm(L1, L2) - comm(X, L1);
}

/// (-)G1(-) G2 - G2 (-)G1(-) - [eps P - K~, G2].
template <class E>
OpMatrix<E> commG_residual(const OpMatrix<E>& g, const E& one) {
  using namespace osp_detail;
  const auto& sp = g.space();
  const auto G1t = sign_conj(slot1(g), 1, 2);
  const auto G2 = embed(g, 2, {2});
  const auto X = lift(scale(build_P(sp), Scalar(sp->eps)) - sign_conj(build_K(sp), 1, 2), one);
  return comm(G1t, G2) - comm(X, G2);
}

/// K (L1 + (-)L2(-)) - (L1 + (-)L2(-)) K.
template <class E>
OpMatrix<E> ccond_residual(const OpMatrix<E>& l, const E& one) {
  using namespace osp_detail;
  const auto S = slot1(l) + slot2_tilde(l);
  return comm(lift(build_K(l.space()), one), S);
}

/// K (L1 + (-)L2(-)) - (2 eps / omega) str(L) K.
template <class E>
OpMatrix<E> consist_residual(const OpMatrix<E>& l, const E& one) {
  using namespace osp_detail;
  const auto& s = *l.space();
  s.require_nondegenerate_omega();
  const auto K = build_K(l.space());
  const auto S = slot1(l) + slot2_tilde(l);
  const E t = Scalar(Rational(2 * s.eps) / s.omega) * supertrace_of(l);
  return lift(K, one) * S - lift(K, t);
}

/// K (G1 + (-)G2(-)) and (G1 + (-)G2(-)) K.
template <class E>
std::pair<OpMatrix<E>, OpMatrix<E>> symcond_residuals(const OpMatrix<E>& g, const E& one) {
  using namespace osp_detail;
  const auto K = lift(build_K(g.space()), one);
  const auto S = slot1(g) + slot2_tilde(g);
  return {K * S, S * K};
}

/// P (-)L2(-) - L1 P and (-)L2(-) P - P L1.
template <class E>
std::pair<OpMatrix<E>, OpMatrix<E>> pll_residuals(const OpMatrix<E>& l, const E& one) {
  using namespace osp_detail;
  const auto P = lift(build_P(l.space()), one);
  const auto L1 = slot1(l), L2 = slot2_tilde(l);
  return {P * L2 - L1 * P, L2 * P - P * L1};
}

/// G_{ab} + eps (-1)^{[a][b]+[a]+[b]} G_{ba}.
template <class E>
OpMatrix<E> symmetry_residual(const OpMatrix<E>& g) {
  const auto& s = *g.space();
  const auto low = lower_first(g);
  OpMatrix<E> r = low;
  for (const auto& [k, x] : low.entries()) {
    const int a = static_cast<int>(low.out_of(k)), b = static_cast<int>(low.in_of(k));
    const int sg = s.eps * parity_sign(s.par(a) * s.par(b) + s.par(a) + s.par(b));
    r.add(static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(a), sg < 0 ? -x : x);
  }
  return r;
}

template <class E>
VerificationReport supertrace_check(std::string identity, const OpMatrix<E>& g) {
  const E t = supertrace_of(g);
  return bool_check(std::move(identity), t.is_zero(), "str = " + t.str());
}

template <class E>
VerificationReport pair_check(std::string identity, const std::pair<OpMatrix<E>, OpMatrix<E>>& r) {
  auto a = zero_check(identity, r.first);
  if (!a.passed()) {
    a.witness = "left: " + *a.witness;
    return a;
  }
  auto b = zero_check(identity, r.second);
  if (!b.passed()) b.witness = "right: " + *b.witness;
  return b;
}

/// Itemized osp checks: the commutation relation in three equivalent forms,
/// Ccond, PLL, graded symmetry and, for traceless G, SymCond and str = 0.
template <class E>
ReportList osp_relation_reports(const GeneratorMatrix<E>& g, bool traceless = true) {
  ReportList out;
  out.push_back(timed([&] { return zero_check("eq:OSpComm", osp_comm_residual(g.G, g.one)); }));
  out.push_back(timed([&] { return zero_check("osp1", osp_comm_alt_residual(g.G, g.one)); }));
  out.push_back(timed([&] { return zero_check("CommG", commG_residual(g.G, g.one)); }));
  out.push_back(timed([&] { return zero_check("Ccond", ccond_residual(g.G, g.one)); }));
  out.push_back(timed([&] { return pair_check("PLL", pll_residuals(g.G, g.one)); }));
  if (g.space()->omega != 0)
    out.push_back(timed([&] { return zero_check("Consist", consist_residual(g.G, g.one)); }));
  if (traceless) {
    out.push_back(timed([&] { return zero_check("SymmCond1", symmetry_residual(g.G)); }));
    out.push_back(timed([&] { return pair_check("SymCond", symcond_residuals(g.G, g.one)); }));
    out.push_back(timed([&] { return supertrace_check("DefG", g.G); }));
  }
  return out;
}

template <class E>
VerificationReport verify_osp_relations(const GeneratorMatrix<E>& g, bool traceless = true) {
  return combine("eq:OSpComm", osp_relation_reports(g, traceless));
}

// ------------------------------------------------------ linear evaluation

/// K((-)L2(-) L1 - beta L1) - (L1 (-)L2(-) - beta L1) K.
template <class E>
OpMatrix<E> new01_residual(const OpMatrix<E>& l, const E& one) {
  using namespace osp_detail;
  const auto& sp = l.space();
  const auto K = lift(build_K(sp), one);
  const auto L1 = slot1(l), L2 = slot2_tilde(l);
  const auto bL1 = scaled(sp->beta, L1);
  return K * (L2 * L1 - bL1) - (L1 * L2 - bL1) * K;
}

/// G^2 + beta G - (eps/omega) str(G^2) 1.
template <class E>
OpMatrix<E> quadratic_characteristic_residual(const OpMatrix<E>& g) {
  const auto& s = *g.space();
  s.require_nondegenerate_omega();
  const auto g2 = g * g;
  const E t = Scalar(Rational(s.eps) / s.omega) * supertrace_of(g2);
  return g2 + osp_detail::scaled(s.beta, g) - diagonal_of(g.space(), t);
}

/// R12(u-v) L1(u) (-)L2(v)(-) - (-)L2(v)(-) L1(u) R12(u-v) for an L-operator
/// given as a function of the spectral parameter.
template <class E, class LF>
OpMatrix<E> rll_residual(const SpacePtr& s, const E& one, LF&& L, const Scalar& u, const Scalar& v) {
  const auto R = lift(build_R(s, RForm::standard, u - v), one);
  const auto L1 = osp_detail::slot1(L(u));
  const auto L2 = osp_detail::slot2_tilde(L(v));
  return R * L1 * L2 - L2 * L1 * R;
}

template <class E, class LF>
VerificationReport verify_rll(const SpacePtr& s, const E& one, LF&& L, Mode mode = Mode::exact) {
  return check_identity("eq:RLL", mode, [&](const Scalar& u, const Scalar& v) {
    return rll_residual(s, one, L, u, v);
  });
}

/// (u + alpha) 1 + G.
template <class E>
OpMatrix<E> linear_L(const GeneratorMatrix<E>& g, const Scalar& alpha, const Scalar& u) {
  return diagonal_of(g.space(), (u + alpha) * g.one) + g.G;
}

/// Ccond, new01 (with L^{(1)} = alpha + G), Cond1 and eq:RLL for
/// L(u) = (u + alpha) 1 + G.
template <class E>
ReportList linear_evaluation_reports(const GeneratorMatrix<E>& g, const Scalar& alpha,
                                     Mode mode = Mode::exact) {
  ReportList out;
  const auto l1 = diagonal_of(g.space(), alpha * g.one) + g.G;
  out.push_back(timed([&] { return zero_check("Ccond", ccond_residual(g.G, g.one)); }));
  out.push_back(timed([&] { return zero_check("new01", new01_residual(l1, g.one)); }));
  if (g.space()->omega == 0)
    out.push_back(skipped("Cond1", "degenerate omega: the condition divides by omega = 0"));
  else
    out.push_back(timed([&] { return zero_check("Cond1", quadratic_characteristic_residual(g.G)); }));
  out.push_back(verify_rll(g.space(), g.one,
                           [&](const Scalar& u) { return linear_L(g, alpha, u); }, mode));
  return out;
}

template <class E>
VerificationReport verify_linear_evaluation(const GeneratorMatrix<E>& g, const Scalar& alpha,
                                            Mode mode = Mode::exact) {
  return combine("L01", linear_evaluation_reports(g, alpha, mode));
}

// --------------------------------------------------- quadratic evaluation

/// N = (beta/2) G + (1/2) G^2.
template <class E>
EvaluationL<E> quadratic_evaluation_L(const GeneratorMatrix<E>& g) {
  const Rational b = g.space()->beta;
  return {g, osp_detail::scaled(b / 2, g.G) + osp_detail::scaled(Rational(1, 2), g.G * g.G)};
}

/// -((beta+1)^2/4) 1 - (eps/8) str(G^2). Added to N this makes the quadratic
/// L-operator of Jordan-Schwinger generators satisfy eq:RLL; the bare N does not.
template <class E>
E quadratic_central_term(const GeneratorMatrix<E>& g) {
  const auto& s = *g.space();
  const Rational b1 = s.beta + 1;
  return Scalar(-b1 * b1 / 4) * g.one + Scalar(Rational(-s.eps, 8)) * supertrace_of(g.G * g.G);
}

/// N = (beta/2) G + (1/2) G^2 + c 1.
template <class E>
EvaluationL<E> quadratic_evaluation_L(const GeneratorMatrix<E>& g, const E& central) {
  auto l = quadratic_evaluation_L(g);
  l.N += diagonal_of(g.space(), central);
  return l;
}

template <class E>
OpMatrix<E> quadratic_L(const EvaluationL<E>& l, const Scalar& u) {
  return diagonal_of(l.G.space(), u * u * l.G.one) + scale(l.G.G, u) + l.N;
}

/// Residuals of the six conditions A..F, in order.
template <class E>
std::vector<OpMatrix<E>> quadratic_condition_residuals(const EvaluationL<E>& l) {
  using namespace osp_detail;
  const auto& sp = l.G.space();
  const E& one = l.G.one;
  const Rational b = sp->beta;
  const auto eP = lift(scale(build_P(sp), Scalar(sp->eps)), one);
  const auto K = lift(build_K(sp), one);
  const auto G1 = slot1(l.G.G), G2 = slot2_tilde(l.G.G);
  const auto N1 = slot1(l.N), N2 = slot2_tilde(l.N);
  std::vector<OpMatrix<E>> r;
  r.push_back(comm(G1, G2) - comm(eP - K, G2));
  r.push_back(comm(G1, N2) - comm(eP - K, N2));
  r.push_back(comm(N1, G2) - scaled(Rational(2), comm(G1, N2)) + scaled(b, comm(G1, G2)) -
              (comm(K - eP, N2) + scaled(b, comm(eP, G2)) - K * G1 * G2 + G2 * G1 * K));
  r.push_back(comm(N1, N2) + scaled(b, comm(G1, N2)) -
              ((eP - K) * G1 * N2 - N2 * G1 * (eP - K) + scaled(b, comm(eP, N2))));
  r.push_back(scaled(Rational(-2), comm(N1, N2)) - scaled(b, comm(G1, N2)) + scaled(b, comm(N1, G2)) -
              (eP * (N1 * G2 - G1 * N2) - (G2 * N1 - N2 * G1) * eP));
  r.push_back(scaled(b, comm(N1, N2)) -
              (scaled(b, eP * G1 * N2 - N2 * G1 * eP) - K * N1 * N2 + N2 * N1 * K));
  return r;
}

/// Conditions A..F, K N1 = K N~2 / N1 K = N~2 K, and eq:RLL for u^2 + uG + N.
template <class E>
ReportList quadratic_condition_reports(const EvaluationL<E>& l, Mode mode = Mode::exact) {
  ReportList out;
  const auto res = quadratic_condition_residuals(l);
  const char* names[] = {"Equations:A", "Equations:B", "Equations:C",
                         "Equations:D", "Equations:E", "Equations:F"};
  for (std::size_t i = 0; i < res.size(); ++i) out.push_back(zero_check(names[i], res[i]));
  out.push_back(timed([&] {
    using namespace osp_detail;
    const auto K = lift(build_K(l.G.space()), l.G.one);
    const auto N1 = slot1(l.N), N2 = slot2_tilde(l.N);
    return pair_check("eq:N", std::make_pair(K * N1 - K * N2, N1 * K - N2 * K));
  }));
  out.push_back(verify_rll(l.G.space(), l.G.one,
                           [&](const Scalar& u) { return quadratic_L(l, u); }, mode));
  return out;
}

template <class E>
VerificationReport verify_quadratic_conditions(const EvaluationL<E>& l, Mode mode = Mode::exact) {
  return combine("Equations", quadratic_condition_reports(l, mode));
}

// ---------------------------------------- anticommutator and cubic identities

/// Supersymmetrization over (b, c, d) of {G_{bc}, G_{da}}, with the tilde sign
/// rule. Returns the first nonvanishing tuple as witness.
template <class E>
VerificationReport verify_anticommutator_condition(const GeneratorMatrix<E>& g) {
  return timed([&] {
    const auto& s = *g.space();
    const int D = s.dim;
    const auto low = lower_first(g.G);
    auto at = [&](int a, int b) -> E {
      const E* x = low.find(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
      return x ? *x : E();
    };
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d)
          for (int a = 0; a < D; ++a) {
            E total;
            for (const auto& [seq, sign] : graded_symmetrizer_terms(s, {b, c, d}, SymRule::tilde)) {
              const int x = seq[0], y = seq[1], z = seq[2];
              const E gxy = at(x, y), gza = at(z, a);
              const int p = (s.par(x) + s.par(y)) * (s.par(z) + s.par(a));
              E term = gxy * gza;
              if (p & 1)
                term -= gza * gxy;
              else
                term += gza * gxy;
              if (sign < 0)
                total -= term;
              else
                total += term;
            }
            if (!total.is_zero())
              return bool_check("GG", false,
                                "(b,c,d,a) = (" + std::to_string(b + 1) + "," + std::to_string(c + 1) +
                                    "," + std::to_string(d + 1) + "," + std::to_string(a + 1) +
                                    "): " + total.str());
          }
    return bool_check("GG", true);
  });
}

/// G^3 - (omega-1) G^2 - ((eps/2) str(G^2) + 2 - omega) G + (eps/2) str(G^2) 1.
template <class E>
OpMatrix<E> cubic_characteristic_residual(const OpMatrix<E>& g, const E& one) {
  const auto& s = *g.space();
  const auto g2 = g * g;
  const auto g3 = g2 * g;
  const E t = Scalar(Rational(s.eps, 2)) * supertrace_of(g2);
  const E coeff = t + Scalar(2 - s.omega) * one;
  return g3 - osp_detail::scaled(s.omega - 1, g2) - diagonal_of(g.space(), coeff) * g +
         diagonal_of(g.space(), t);
}

template <class E>
VerificationReport verify_cubic_characteristic(const GeneratorMatrix<E>& g) {
  return timed([&] { return zero_check("M3", cubic_characteristic_residual(g.G, g.one)); });
}

// ---------------------------------------------------- Yangian expansion

/// Coefficient (k, j) of the expanded RLL relation. `levels[i-1]` is L^{(i)};
/// L^{(0)} is the identity and missing levels are zero.
template <class E>
OpMatrix<E> yangian_residual(int k, int j, const std::vector<OpMatrix<E>>& levels, const E& one) {
  if (levels.empty()) throw SpaceError("expand_yangian_relation needs at least L^(1)");
  const auto& sp = levels.front().space();
  const Rational b = sp->beta;
  const Rational eps = sp->eps;
  auto level = [&](int i) {
    if (i == 0) return identity_op<E>(sp, 1, one);
    if (i < 0 || i > static_cast<int>(levels.size())) return OpMatrix<E>(sp, 1);
    return levels[static_cast<std::size_t>(i - 1)];
  };
  auto X1 = [&](int i) { return embed(level(i), 2, {1}); };
  auto X2 = [&](int i) { return embed(level(i), 2, {2}); };
  // A(p, q) = L1^{(p)} (-) L2^{(q)}, B(q, p) = L2^{(q)} (-) L1^{(p)}.
  auto A = [&](int p, int q) { return X1(p) * left_sign(X2(q), 1, 2); };
  auto B = [&](int q, int p) { return X2(q) * left_sign(X1(p), 1, 2); };
  using osp_detail::scaled;
  const auto P = lift(build_P(sp), one);
  const auto K = lift(build_K(sp), one);

  const auto t1 = A(k, j - 2) - scaled(Rational(2), A(k - 1, j - 1)) + A(k - 2, j) +
                  scaled(b, A(k - 1, j - 2)) - scaled(b, A(k - 2, j - 1));
  const auto t2 = B(j - 2, k) - scaled(Rational(2), B(j - 1, k - 1)) + B(j, k - 2) +
                  scaled(b, B(j - 2, k - 1)) - scaled(b, B(j - 1, k - 2));
  const auto t3 = A(k - 1, j - 2) - A(k - 2, j - 1) + scaled(b, A(k - 2, j - 2));
  const auto t4 = B(j - 2, k - 1) - B(j - 1, k - 2) + scaled(b, B(j - 2, k - 2));
  const auto t5 = A(k - 1, j - 2) - A(k - 2, j - 1);
  const auto t6 = B(j - 2, k - 1) - B(j - 1, k - 2);
  return right_sign(t1, 1, 2) - left_sign(t2, 1, 2) - scaled(eps, P * right_sign(t3, 1, 2)) +
         scaled(eps, left_sign(t4, 1, 2) * P) + K * right_sign(t5, 1, 2) - left_sign(t6, 1, 2) * K;
}

template <class E>
VerificationReport expand_yangian_relation(int k, int j, const std::vector<OpMatrix<E>>& levels,
                                           const E& one) {
  return timed([&] {
    return zero_check("eq:Yangian(" + std::to_string(k) + "," + std::to_string(j) + ")",
                      yangian_residual(k, j, levels, one));
  });
}

}  // namespace ospyb
