#pragma once

#include <map>
#include <vector>

#include "ospyb/brauer.hpp"
#include "ospyb/oscillator.hpp"
#include "ospyb/osp.hpp"
#include "ospyb/report.hpp"

namespace ospyb {

// ------------------------------------------------------ r coefficients

struct SpinorRCoefficients {
  SpacePtr space;
  Scalar r0{1};
  Scalar r1{1};
  std::vector<Scalar> values;  // r_0 .. r_kmax as rational functions of u
};

/// r_{k+2} = 4(u-k)/(k+2+u-omega) r_k starting from r_0, r_1.
SpinorRCoefficients r_coefficients(const SpacePtr& s, int kmax, const Scalar& r0 = Scalar(1),
                                   const Scalar& r1 = Scalar(1));

/// Checks the two-step recurrence on every stored pair.
VerificationReport verify_recurrence(const SpinorRCoefficients& r);
/// Checks r_{k+2}/r_k against the ratio of the Gamma-function solution, with
/// Gamma(x+1) = x Gamma(x) applied to the even and odd branches separately.
VerificationReport verify_gamma_ratios(const SpinorRCoefficients& r);
/// so(d) and sp(d) specializations: omega = d on (d|0,+1) and omega = -d on
/// (0|d,+1) and (d|0,-1); checked against r_{k+2} = 4(u-k)/(k+2+u-+d) r_k.
ReportList reduction_recurrences(int d, int kmax = 6);

// --------------------------------------------------------- the R-operator

/// Graded-symmetrized products c^{(a_1 ... a_k)} of one oscillator copy,
/// computed by the contraction recursion
/// c^a S(b) = S(a b) + 1/2 sum_j sign_j eps^{a b_j} S(b without b_j), memoized.
class SymmetrizedProducts {
 public:
  SymmetrizedProducts(AlgebraPtr spec, int copy);
  /// Any index order; reordered with the symmetrizer sign.
  NOE get(const std::vector<int>& idx);

 private:
  NOE sorted(const std::vector<int>& idx);
  AlgebraPtr spec_;
  int copy_;
  std::map<std::vector<int>, NOE> memo_;
};

struct SpinorROperator {
  SpinorRCoefficients coefficients;
  int kmax = 0;
  AlgebraPtr algebra;       // two-copy oscillator algebra
  std::vector<NOE> terms;   // T_k = eps_{a,b} c_1^{(a_1..a_k)} c_2^{(b_k..b_1)}, without r_k/k!

  /// sum_k r_k/k! T_k.
  NOE assembled() const;
};

/// Truncation at kmax (6 by default); for a pure Clifford algebra the series
/// ends at dim V and kmax is set to it.
SpinorROperator build_spinor_R(const SpacePtr& s, int kmax = 6);
SpinorROperator build_spinor_R(const SpinorRCoefficients& r, int kmax);

/// [T_k, F_1^{ab} + F_2^{ab}] = 0 for every k and (a, b).
VerificationReport verify_spinor_invariance(const SpinorROperator& R);
/// Same check for an arbitrary even element of the two-copy algebra.
VerificationReport verify_invariance_of(const AlgebraPtr& two_copy, const NOE& x, const std::string& id = "eq:Rcond1");

/// Expansion of an element of the two-copy algebra in products of
/// symmetrized monomials c_1^{(..)} c_2^{(..)}, keyed by normal-order monomial.
std::map<Monomial, Scalar> symmetric_basis(const NOE& x, SymmetrizedProducts& s1, SymmetrizedProducts& s2);

/// The v^0 condition u[R F_2^{ab} - F_1^{ab} R] - eps_{cd} X^{(cb)(ad)} on
/// every component of symmetric bidegree (p, q) with min(p, q) <= kmax - 2
/// (the part not touched by the truncation), plus the X symmetries.
ReportList verify_spinor_rll_conditions(const SpinorROperator& R);

/// Matrix of a two-copy element on M (x) M for a module M of the one-copy
/// algebra: c_1^a -> c^a (x) 1, c_2^a -> Gamma^{[a]} (x) c^a.
MatAlg represent_pair(const FiniteModule& mod, const AlgebraPtr& two_copy, const NOE& x);

/// Graded Kronecker product (A (x) X)(v (x) w) = (-1)^{|X||v|} A v (x) X w.
MatAlg graded_kron(const MatAlg& a, const std::vector<int>& a_state_parity, const MatAlg& x, int x_parity);

/// R(u) L_1(u+v) L_2(v) = L_1(v) L_2(u+v) R(u) with L = u - (1/2) F^{ab} (x) G_{ba},
/// as exact matrices on spinor (x) spinor (x) W; `w_parity` grades W.
VerificationReport verify_spinor_RLL_full(const SpinorROperator& R, const FiniteModule& spinor,
                                          const GeneratorMatrix<MatAlg>& G, const std::vector<int>& w_parity);

// -------------------------------------------------------------- fusion

struct FusionResult {
  SpacePtr space;
  GradedOperator T;  // T^{b1 b2}_{d1 d2}(u) in units of Tr 1, with kappa kept formal
};

/// T^{b1b2}_{d1d2} = (-1)^{(c1+d1)d2} Tr(L^{b1}_{c1}(u+lambda) c_{d2} L~^{c1}_{d1}(u+mu) c^{b2})
/// with L = u + F, L~ = u - F, lambda = kappa + (3-omega)/2, mu = kappa - 1/2
/// and Tr = 2 tau. `kappa` replaces the formal kappa when given.
FusionResult fusion_T(const SpacePtr& s, std::optional<Rational> kappa = std::nullopt);
/// (u'(u'+beta) 1 - eps (u'+beta) (-1)^{d1+d2+d1d2} delta delta + u' eps eps) with u' = u + kappa.
GradedOperator fusion_closed_form(const SpacePtr& s, std::optional<Rational> kappa = std::nullopt);
/// (-1)^{b1 d2} T (-1)^{d1 b2}.
GradedOperator fusion_decorated(const GradedOperator& T);
/// (-1)^{b1 + d1} T, to be compared with (-)^{12} R (-)^{12}.
GradedOperator fusion_decorated_twisted(const GradedOperator& T);

/// first3a, intw01 and its twisted line.
ReportList verify_fusion(const SpacePtr& s);
/// Exact T against T computed at fixed integer kappa values.
VerificationReport verify_fusion_sampled(const SpacePtr& s, const std::vector<int>& kappas = {-1, 0, 2});

/// (-1)^{[p]([b]+[c])} L^a_c(v+beta+1/2+shift) c_p L~^c_b(v-1/2)
///   = (-1)^{[a][p]} R^{ac}_{bp}(v) (-1)^{[b][c]} c_c, summed over c.
VerificationReport verify_intertwiner_identity(const SpacePtr& s, const Rational& shift = 0);

}  // namespace ospyb
