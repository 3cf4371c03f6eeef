#include "ospyb/osp.hpp"

namespace ospyb {

GeneratorMatrix<MatAlg> generators_from_operator(const GradedOperator& t, GeneratorVariant v) {
  if (t.arity() != 2) throw SpaceError("generators_from_operator expects an arity-2 operator");
  const int D = t.dim();
  std::map<std::uint64_t, MatAlg> cells;
  for (const auto& [k, x] : t.entries()) {
    const MultiIndex o = t.out_index(k), in = t.in_index(k);
    auto [it, fresh] = cells.try_emplace(static_cast<std::uint64_t>(o[0] * D + in[0]), D);
    it->second.add(o[1], in[1], x);
  }
  GeneratorMatrix<MatAlg> g{OpMatrix<MatAlg>(t.space(), 1), MatAlg::identity(D), v};
  for (const auto& [cell, m] : cells)
    g.G.add(cell / static_cast<std::uint64_t>(D), cell % static_cast<std::uint64_t>(D), m);
  return g;
}

GradedOperator generators_as_operator(const GeneratorMatrix<MatAlg>& g) {
  const int D = g.G.dim();
  GradedOperator t(g.space(), 2);
  for (const auto& [k, m] : g.G.entries()) {
    if (m.size() != D) throw SpaceError("generators_as_operator needs module dimension dim V");
    const int a1 = static_cast<int>(g.G.out_of(k)), c1 = static_cast<int>(g.G.in_of(k));
    for (int a2 = 0; a2 < D; ++a2)
      for (const auto& [c2, x] : m.rows()[static_cast<std::size_t>(a2)])
        t.add(static_cast<std::uint64_t>(a1 * D + a2), static_cast<std::uint64_t>(c1 * D + c2), x);
  }
  return t;
}

GeneratorMatrix<MatAlg> basis_tilde_G(const SpacePtr& s) {
  const int D = s->dim;
  GeneratorMatrix<MatAlg> g{OpMatrix<MatAlg>(s, 1), MatAlg::identity(D), GeneratorVariant::tilde};
  for (int f = 0; f < D; ++f)
    for (int h = 0; h < D; ++h) {
      MatAlg m(D);
      for (int a = 0; a < D; ++a)
        for (int c = 0; c < D; ++c) {
          Rational x = s->ginv(f, a) * s->g(h, c);
          if (f == c && a == h) x -= s->eps * parity_sign(s->par(c) * s->par(a));
          m.add(a, c, Scalar(x));
        }
      g.G.add(static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(h), m);
    }
  return g;
}

GeneratorMatrix<MatAlg> fundamental_G(const SpacePtr& s, FundamentalVariant v) {
  GradedOperator K = build_K(s);
  if (v == FundamentalVariant::twisted) K = sign_conj(K, 1, 2);
  const GradedOperator t = K - scale(build_P(s), Scalar(s->eps));
  return generators_from_operator(t, v == FundamentalVariant::twisted ? GeneratorVariant::plain
                                                                      : GeneratorVariant::tilde);
}

int operator_parity(const GradedOperator& a) {
  if (a.arity() != 1) throw SpaceError("operator_parity expects an arity-1 operator");
  int p = -1;
  for (const auto& [k, x] : a.entries()) {
    const int q = (a.space()->par(static_cast<int>(a.out_of(k))) +
                   a.space()->par(static_cast<int>(a.in_of(k)))) & 1;
    if (p >= 0 && p != q) throw SpaceError("supercommutator: operator is not homogeneous");
    p = q;
  }
  return p < 0 ? 0 : p;
}

GradedOperator supercommutator(const GradedOperator& a, const GradedOperator& b) {
  const int pa = operator_parity(a), pb = operator_parity(b);
  return (pa & pb) ? a * b + b * a : a * b - b * a;
}

VerificationReport verify_structure_constants(const SpacePtr& s) {
  return timed([&] {
    const auto& sp = *s;
    const int D = sp.dim;
    const auto basis = basis_tilde_G(s);
    auto G = [&](int f, int h) {
      const MatAlg* m = basis.G.find(static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(h));
      return m ? *m : MatAlg();
    };
    // G~_{b1 b2} = eps_{b1 x} G~^x_{b2} and G~^{a2 a1} = eps^{a1 x} G~^{a2}_x.
    auto G_low = [&](int b1, int b2) {
      MatAlg r;
      for (const auto& [x, w] : sp.lower_rows[static_cast<std::size_t>(b1)]) r += Scalar(w) * G(x, b2);
      return r;
    };
    auto G_up = [&](int a2, int a1) {
      MatAlg r;
      for (const auto& [x, w] : sp.upper_rows[static_cast<std::size_t>(a1)]) r += Scalar(w) * G(a2, x);
      return r;
    };
    auto p = [&](int a) { return sp.par(a); };
    for (int a1 = 0; a1 < D; ++a1)
      for (int b1 = 0; b1 < D; ++b1)
        for (int a2 = 0; a2 < D; ++a2)
          for (int b2 = 0; b2 < D; ++b2) {
            const MatAlg lhs =
                supercommutator(G(a1, b1), p(a1) + p(b1), G(a2, b2), p(a2) + p(b2));
            MatAlg rhs;
            const int s1 = parity_sign(p(a1) * p(a2) + p(b1) * p(a2));
            rhs -= Scalar(s1 * sp.ginv(a1, a2)) * G_low(b1, b2);
            if (a2 == b1) rhs += Scalar(sp.eps * parity_sign(p(b1) * p(a2))) * G(a1, b2);
            rhs += Scalar(s1 * sp.g(b1, b2)) * G_up(a2, a1);
            if (a1 == b2)
              rhs -= Scalar(sp.eps * parity_sign(p(a1) * (p(b1) + p(a2)) + p(b1) * p(a2))) * G(a2, b1);
            if (!(lhs == rhs))
              return bool_check("osp06", false,
                                "[G~^" + std::to_string(a1 + 1) + "_" + std::to_string(b1 + 1) + ", G~^" +
                                    std::to_string(a2 + 1) + "_" + std::to_string(b2 + 1) +
                                    "]: residual " + (lhs - rhs).str());
          }
    return bool_check("osp06", true);
  });
}

VerificationReport verify_basis_K_condition(const SpacePtr& s) {
  return timed([&] {
    const auto t = generators_as_operator(basis_tilde_G(s));
    const auto K = embed(build_K(s), 3, {1, 2});
    const auto S = embed(t, 3, {3, 1}) + sign_conj(embed(t, 3, {3, 2}), 1, 2);
    return pair_check("osp08b", std::make_pair(K * S, S * K));
  });
}

VerificationReport verify_basis_P_condition(const SpacePtr& s) {
  return timed([&] {
    const auto b = basis_tilde_G(s);
    return pair_check("osp09", pll_residuals(b.G, b.one));
  });
}

VerificationReport verify_R_invariance(const SpacePtr& s, RForm form) {
  return timed([&] {
    const auto t = generators_as_operator(basis_tilde_G(s));
    const auto S = embed(t, 3, {3, 1}) + sign_conj(embed(t, 3, {3, 2}), 1, 2);
    const auto R = embed(build_R(s, form), 3, {1, 2});
    return zero_check("Rinvar2", R * S - S * R);
  });
}

}  // namespace ospyb
