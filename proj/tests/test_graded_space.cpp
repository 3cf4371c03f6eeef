#include "doctest.h"
#include "ospyb/graded_space.hpp"

using namespace ospyb;

TEST_CASE("omega and beta for small spaces") {
  auto a = make_space(1, 2, 1);
  CHECK(a->omega == -1);
  CHECK(a->beta == Rational(3, 2));
  auto b = make_space(3, 2, 1);
  CHECK(b->omega == 1);
  CHECK(b->beta == Rational(1, 2));
  auto c = make_space(2, 4, 1);
  CHECK(c->omega == -2);
  auto d = make_space(4, 2, -1);
  CHECK(d->omega == -2);
  auto e = make_space(2, 2, -1);
  CHECK(e->omega == 0);
  CHECK_THROWS_AS(e->require_nondegenerate_omega(), DegenerateOmegaError);
  CHECK_THROWS_AS(make_space(1, 2, -1), SpaceError);
  CHECK_THROWS_AS(make_space(2, 1, 1), SpaceError);
}

TEST_CASE("space invariants hold across the family") {
  for (auto [N, M, e] : {std::tuple{1, 2, 1}, {3, 2, 1}, {2, 2, -1}, {2, 4, 1}, {4, 2, -1},
                         {4, 0, 1}, {0, 4, 1}, {2, 2, 1}}) {
    auto s = make_space(N, M, e);
    CHECK(check_space_invariants(*s).empty());
    // The contracted metric is eps^{cd} eps_{cd}, independent of the stored omega.
    Rational w = 0;
    for (int c = 0; c < s->dim; ++c)
      for (int d = 0; d < s->dim; ++d) w += s->ginv(c, d) * s->g(c, d);
    CHECK(w == e * (N - M));
  }
}

TEST_CASE("custom metric is validated") {
  CHECK_NOTHROW(make_space_with_metric(2, 0, 1, {{2, 0}, {0, 3}}));
  CHECK_THROWS_AS(make_space_with_metric(2, 0, 1, {{0, 1}, {-1, 0}}), SpaceError);
  CHECK_THROWS_AS(make_space_with_metric(1, 2, 1, {{1, 1, 0}, {1, 0, 1}, {0, -1, 0}}), SpaceError);
}

TEST_CASE("raise after lower is the identity") {
  auto s = make_space(1, 2, 1);
  GradedVector z{s, 2, {}};
  for (std::uint64_t i = 0; i < 9; ++i) z.add(i, Scalar(static_cast<long>(i * i + 1)));
  CHECK(raise_index(lower_index(z, 1), 1) == z);
  CHECK(lower_index(raise_index(z, 2), 2) == z);
}

TEST_CASE("raising both indices of the metric") {
  // Raising both indices of eps_{cd} gives inv^{ba} = eps (-1)^{[a][b]} inv^{ab}.
  for (auto [N, M, e] : {std::tuple{1, 2, 1}, {2, 2, -1}, {3, 2, 1}}) {
    auto s = make_space(N, M, e);
    GradedVector r = raise_index(raise_index(metric_vector(s, false), 1), 2);
    GradedVector expected{s, 2, {}};
    for (int a = 0; a < s->dim; ++a)
      for (int b = 0; b < s->dim; ++b)
        expected.add(static_cast<std::uint64_t>(a * s->dim + b),
                     Scalar(Rational(e * parity_sign(s->par(a) * s->par(b))) * s->ginv(a, b)));
    CHECK(r == expected);
  }
}

TEST_CASE("sign operators square to one and commute with P-like relabelling") {
  auto s = make_space(1, 2, 1);
  const auto S = sign_operator(s, 3, 1, 3);
  CHECK(S * S == identity_op(s, 3));
  CHECK(dress_operator(identity_op(s, 1), 3, 3) == identity_op(s, 3));
}

TEST_CASE("supertrace and supertensor product") {
  auto s = make_space(1, 2, 1);
  CHECK(supertrace(identity_op(s, 1)) == Scalar(-1));
  GradedOperator a(s, 1), b(s, 1);
  a.add(0, 1, Scalar(2));
  b.add(1, 0, Scalar(3));
  const auto t = supertensor_product(a, b);
  // sign (-1)^{([a2]+[b2])[b1]} = (-1)^{(1+0)*1}
  CHECK(*t.find(std::uint64_t{0 * 3 + 1}, std::uint64_t{1 * 3 + 0}) == Scalar(-6));
}

TEST_CASE("convention change is an involution and respects products") {
  auto s = make_space(1, 2, 1);
  GradedOperator a(s, 2), b(s, 2);
  int c = 1;
  for (std::uint64_t o = 0; o < 9; ++o)
    for (std::uint64_t i = 0; i < 9; ++i) {
      const MultiIndex O = decode_index(o, 3, 2), I = decode_index(i, 3, 2);
      const int p = s->par(O[0]) + s->par(O[1]) + s->par(I[0]) + s->par(I[1]);
      if (p % 2) continue;
      a.add(o, i, Scalar(c++ % 7 - 3));
      b.add(o, i, Scalar(c++ % 5 - 2));
    }
  const auto ab = convert_convention(a, Convention::to_basis);
  CHECK(convert_convention(ab, Convention::to_coordinates) == a);
  // Component products in coordinates correspond to graded-unit products on coefficients.
  const auto lhs = convert_convention(a * b, Convention::to_basis);
  const auto rhs = graded_basis_compose(ab, convert_convention(b, Convention::to_basis));
  CHECK(lhs == rhs);
  GradedOperator odd(s, 2);
  odd.add(0, 1, Scalar(1));
  CHECK_THROWS_AS(convert_convention(odd, Convention::to_basis), SpaceError);
}
