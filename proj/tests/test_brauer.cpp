#include "doctest.h"
#include "ospyb/brauer.hpp"

using namespace ospyb;

namespace {

const std::vector<std::tuple<int, int, int>> kFamily = {
    {1, 2, 1}, {3, 2, 1}, {2, 2, -1}, {2, 4, 1}, {4, 2, -1}};

// Independent oracle for P: acts on basis tensors e_c (x) e_d as the graded swap,
// P (z (x) w) = (-1)^{[z][w]} w (x) z, written out through an explicit action.
Scalar graded_swap_entry(const GradedSpace& s, int a1, int a2, int b1, int b2) {
  if (a1 != b2 || a2 != b1) return Scalar(0);
  return Scalar((s.par(b1) & s.par(b2)) ? -1 : 1);
}

}  // namespace

TEST_CASE("P matches the graded swap and squares to one") {
  for (auto [N, M, e] : kFamily) {
    auto s = make_space(N, M, e);
    const auto P = build_P(s);
    for (int a1 = 0; a1 < s->dim; ++a1)
      for (int a2 = 0; a2 < s->dim; ++a2)
        for (int b1 = 0; b1 < s->dim; ++b1)
          for (int b2 = 0; b2 < s->dim; ++b2) {
            const Scalar* x = P.find(std::uint64_t(a1 * s->dim + a2), std::uint64_t(b1 * s->dim + b2));
            CHECK((x ? *x : Scalar(0)) == graded_swap_entry(*s, a1, a2, b1, b2));
          }
    CHECK(P * P == identity_op(s, 2));
  }
}

TEST_CASE("P permutes graded coordinates") {
  // P^{ab}_{cd} w^c z^d = z^a w^b for graded-commuting z, w; checked on odd/odd
  // components where z^a w^b = -w^b z^a.
  auto s = make_space(1, 2, 1);
  const auto P = build_P(s);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const Scalar* x = P.find(std::uint64_t(a * 3 + b), std::uint64_t(b * 3 + a));
      REQUIRE(x);
      // w^b z^a = (-1)^{[a][b]} z^a w^b, so the coefficient must be that sign.
      CHECK(*x == Scalar(parity_sign(s->par(a) * s->par(b))));
    }
}

TEST_CASE("K is rank one with K^2 = omega K") {
  for (auto [N, M, e] : kFamily) {
    auto s = make_space(N, M, e);
    const auto K = build_K(s);
    CHECK(K * K == scale(K, Scalar(s->omega)));
    // Rank one: every nonzero column is proportional to the column eps^{a1a2}.
    for (const auto& [k, x] : K.entries()) {
      const auto o = K.out_index(k), i = K.in_index(k);
      CHECK(x == Scalar(s->ginv(o[0], o[1]) * s->g(i[0], i[1])));
    }
  }
}

TEST_CASE("Brauer relations for n = 3 and n = 4") {
  for (auto [N, M, e] : kFamily)
    for (int n : {3, 4}) {
      auto rep = brauer_generators(make_space(N, M, e), n);
      for (const auto& r : verify_brauer(rep)) CHECK_MESSAGE(r.passed(), r.identity, " ", r.witness.value_or(""));
    }
  auto rep = brauer_generators(make_space(2, 2, -1), 3);
  CHECK(rep.e[0] * rep.e[0] == GradedOperator(rep.space, 3));
}

TEST_CASE("R-matrix special values") {
  auto s = make_space(1, 2, 1);
  const auto R0 = build_R(s, RForm::standard, Scalar(0));
  CHECK(R0 == scale(build_P(s), Scalar(-s->eps * s->beta)));
  CHECK(build_R(s, RForm::braid) == build_P(s) * build_R(s, RForm::standard));
  const auto R = build_R(s, RForm::standard);
  for (const auto& [k, x] : R.entries()) CHECK(x.num().degree_in(Var::u) <= 2);
  CHECK(is_even(build_R(s, RForm::standard)));
}

TEST_CASE("Yang-Baxter and unitarity across the family") {
  for (auto [N, M, e] : kFamily) {
    auto s = make_space(N, M, e);
    CHECK(verify_braid_YBE(s).passed());
    CHECK(verify_graded_YBE(s).passed());
    YBEOptions tw;
    tw.form = RForm::twisted;
    CHECK(verify_graded_YBE(s, tw).passed());
    CHECK(verify_unitarity(s).passed());
  }
}

TEST_CASE("negative controls") {
  auto s = make_space(1, 2, 1);
  YBEOptions bad;
  bad.beta = s->beta + 1;
  const auto r = verify_braid_YBE(s, bad);
  CHECK_FALSE(r.passed());
  CHECK(r.witness.has_value());
  CHECK_FALSE(verify_unitarity(s, bad).passed());
  YBEOptions nosign;
  nosign.omit_signs = true;
  CHECK_FALSE(verify_graded_YBE(s, nosign).passed());
  // Without odd coordinates the signs are trivial.
  CHECK(verify_graded_YBE(make_space(4, 0, 1), nosign).passed());
}

TEST_CASE("unitarity factor at u = 1 vanishes") {
  auto s = make_space(3, 2, 1);
  const auto x = build_R(s, RForm::braid, Scalar(1)) * build_R(s, RForm::braid, Scalar(-1));
  CHECK(x.is_zero());
}

TEST_CASE("P and K product identities") {
  for (auto [N, M, e] : kFamily)
    for (const auto& r : verify_pk_identities(make_space(N, M, e)))
      CHECK_MESSAGE(r.passed(), r.identity, " ", r.witness.value_or(""));
}

TEST_CASE("fundamental L coefficients") {
  for (auto [N, M, e] : kFamily) {
    auto s = make_space(N, M, e);
    const auto L = fundamental_L(s);
    const auto P = build_P(s), K = build_K(s);
    CHECK(poly_coefficient(L, Var::u, 2) == identity_op(s, 2));
    CHECK(poly_coefficient(L, Var::u, 1) ==
          scale(identity_op(s, 2), Scalar(s->beta)) + sign_conj(K, 1, 2) - scale(P, Scalar(e)));
    CHECK(poly_coefficient(L, Var::u, 0) == scale(P, Scalar(-e * s->beta)));
    CHECK(verify_fundamental_RLL(s).passed());
  }
}

TEST_CASE("sample mode agrees with exact mode") {
  auto s = make_space(1, 2, 1);
  YBEOptions sm;
  sm.mode = Mode::sample;
  CHECK(verify_braid_YBE(s, sm).passed());
  CHECK(verify_unitarity(s, sm).passed());
  sm.beta = Rational(5, 2);
  CHECK_FALSE(verify_braid_YBE(s, sm).passed());
}

TEST_CASE("convention equivalence") {
  for (auto [N, M, e] : kFamily) CHECK(verify_convention_equivalence(make_space(N, M, e)).passed());
}
