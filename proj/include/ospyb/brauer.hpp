#pragma once

#include <optional>

#include "ospyb/graded_space.hpp"
#include "ospyb/report.hpp"

namespace ospyb {

/// Superpermutation: P^{a1a2}_{b1b2} = (-1)^{[a1][a2]} delta^{a1}_{b2} delta^{a2}_{b1}.
GradedOperator build_P(const SpacePtr& s);
/// K^{a1a2}_{b1b2} = eps^{a1a2} eps_{b1b2}.
GradedOperator build_K(const SpacePtr& s);
/// Diagonal (-1)^{[a_slot]} on V^{(x)n}.
GradedOperator parity_op(const SpacePtr& s, int n, int slot);

/// s_i = eps P_{i,i+1}, e_i = K_{i,i+1} on V^{(x)n} (index i stored at i-1).
struct BrauerRep {
  SpacePtr space;
  int n = 0;
  std::vector<GradedOperator> s;
  std::vector<GradedOperator> e;
};

BrauerRep brauer_generators(const SpacePtr& s, int n);
/// One report per relation family: "defBrauer1" and "defBrauer2".
ReportList verify_brauer(const BrauerRep& rep);

enum class RForm { standard, braid, twisted };

/// standard: u(u+beta) 1 - eps(u+beta) P + u K; braid: P R(u); twisted:
/// (-)^{12} R(u) (-)^{12}. `beta` overrides 1 - omega/2 (used to perturb).
GradedOperator build_R(const SpacePtr& s, RForm form, const Scalar& u,
                       std::optional<Rational> beta = std::nullopt);
inline GradedOperator build_R(const SpacePtr& s, RForm form) {
  return build_R(s, form, Scalar::u());
}

struct YBEOptions {
  Mode mode = Mode::exact;
  std::optional<Rational> beta;
  RForm form = RForm::standard;  // standard or twisted, graded form only
  bool omit_signs = false;
};

VerificationReport verify_braid_YBE(const SpacePtr& s, const YBEOptions& opt = {});
VerificationReport verify_graded_YBE(const SpacePtr& s, const YBEOptions& opt = {});
VerificationReport verify_unitarity(const SpacePtr& s, const YBEOptions& opt = {});
/// Itemized P/K identity catalogue on V^{(x)3}.
ReportList verify_pk_identities(const SpacePtr& s);

/// u^2 L(u) = (-)^{12} R(u) (-)^{12}, polynomial in u.
GradedOperator fundamental_L(const SpacePtr& s, const Scalar& u);
inline GradedOperator fundamental_L(const SpacePtr& s) { return fundamental_L(s, Scalar::u()); }
/// Entrywise coefficient of x^k; entries must be polynomials.
GradedOperator poly_coefficient(const GradedOperator& a, Var x, int k);
/// eq:RLL with L1(u) = u^{-2}(-)^{13}R13(u)(-)^{13} and L2(v) the same on slots 2,3,
/// denominators cleared.
VerificationReport verify_fundamental_RLL(const SpacePtr& s, Mode mode = Mode::exact);

/// Converts R to graded-unit coefficients and checks R12 R13 R23 = R23 R13 R12
/// with graded-unit products; also checks that the coordinate image of the
/// left side equals the left side of the graded Yang-Baxter equation.
VerificationReport verify_convention_equivalence(const SpacePtr& s, Mode mode = Mode::exact);

}  // namespace ospyb
