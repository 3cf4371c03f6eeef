#include "ospyb/spinor.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <tuple>

namespace ospyb {

namespace {

// Runs f(0..n-1) on a small thread pool; results are indexed so the caller
// can scan them in order.
void parallel_for(int n, const std::function<void(int)>& f) {
  const int workers = std::max(1, std::min<int>(n, static_cast<int>(std::thread::hardware_concurrency())));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) f(i);
    });
  for (auto& t : pool) t.join();
}

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Sign of an adjacent swap in the symmetrizer: -eps (-1)^{[x][y]}.
int swap_sign(const GradedSpace& s, int x, int y) { return -s.eps * parity_sign(s.par(x) * s.par(y)); }

std::string idx_label(std::initializer_list<int> xs) {
  std::string r = "(";
  bool first = true;
  for (int x : xs) {
    r += (first ? "" : ",") + std::to_string(x + 1);
    first = false;
  }
  return r + ")";
}

}  // namespace

// ------------------------------------------------------ r coefficients

SpinorRCoefficients r_coefficients(const SpacePtr& s, int kmax, const Scalar& r0, const Scalar& r1) {
  SpinorRCoefficients r{s, r0, r1, {}};
  const Scalar u = Scalar::u();
  for (int k = 0; k <= kmax; ++k) {
    if (k == 0) r.values.push_back(r0);
    else if (k == 1) r.values.push_back(r1);
    else {
      const int j = k - 2;
      r.values.push_back(Scalar(4) * (u - Scalar(j)) / (Scalar(j + 2) + u - Scalar(s->omega)) *
                         r.values[static_cast<std::size_t>(j)]);
    }
  }
  return r;
}

VerificationReport verify_recurrence(const SpinorRCoefficients& r) {
  return timed([&] {
    const Scalar u = Scalar::u();
    for (std::size_t k = 0; k + 2 < r.values.size(); ++k) {
      const Scalar lhs = r.values[k + 2] * (Scalar(static_cast<long>(k) + 2) + u - Scalar(r.space->omega));
      const Scalar rhs = Scalar(4) * (u - Scalar(static_cast<long>(k))) * r.values[k];
      if (lhs != rhs) return bool_check("Rrec1", false, "k=" + std::to_string(k) + ": " + (lhs - rhs).str());
    }
    return bool_check("Rrec1", true);
  });
}

VerificationReport verify_gamma_ratios(const SpinorRCoefficients& r) {
  return timed([&] {
    const Scalar u = Scalar::u(), om(r.space->omega), half(Rational(1, 2));
    for (std::size_t k = 0; k + 2 < r.values.size(); ++k) {
      const long m = static_cast<long>(k / 2);
      // Gamma(m+1-x)/Gamma(m-x) = m - x and Gamma(m+1+y)/Gamma(m+2+y) = 1/(m+1+y).
      const Scalar x = k % 2 ? half * (u - Scalar(1)) : half * u;
      const Scalar y = k % 2 ? half * (u - om + Scalar(1)) : half * (u - om);
      const Scalar expected = Scalar(-4) * (Scalar(m) - x) / (Scalar(m + 1) + y);
      if (r.values[k].is_zero()) continue;
      const Scalar got = r.values[k + 2] / r.values[k];
      if (got != expected)
        return bool_check("sol-rm", false, "k=" + std::to_string(k) + ": " + got.str() + " vs " + expected.str());
    }
    return bool_check("sol-rm", true);
  });
}

ReportList reduction_recurrences(int d, int kmax) {
  ReportList out;
  auto check = [&](const std::string& id, const SpacePtr& s, int sign) {
    out.push_back(timed([&] {
      const auto r = r_coefficients(s, kmax);
      const Scalar u = Scalar::u();
      for (int k = 0; k + 2 <= kmax; ++k) {
        const Scalar expected = Scalar(4) * (u - Scalar(k)) / (Scalar(k + 2) + u + Scalar(sign * d)) *
                                r.values[static_cast<std::size_t>(k)];
        if (expected != r.values[static_cast<std::size_t>(k + 2)])
          return bool_check(id, false, s->label() + " k=" + std::to_string(k));
      }
      return bool_check(id, true);
    }));
  };
  check("Rrec2", make_space(d, 0, 1), -1);
  if (d % 2 == 0) {
    check("Rrec2:sp", make_space(0, d, 1), +1);
    check("Rrec2:sp", make_space(d, 0, -1), +1);
  }
  return out;
}

// --------------------------------------------------------- the R-operator

SymmetrizedProducts::SymmetrizedProducts(AlgebraPtr spec, int copy) : spec_(std::move(spec)), copy_(copy) {}

NOE SymmetrizedProducts::get(const std::vector<int>& idx) {
  const GradedSpace& s = *spec_->space;
  std::vector<int> v = idx;
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j)
      if (v[j] > v[j + 1]) {
        sign *= swap_sign(s, v[j], v[j + 1]);
        std::swap(v[j], v[j + 1]);
      }
  for (std::size_t j = 0; j + 1 < v.size(); ++j)
    if (v[j] == v[j + 1] && swap_sign(s, v[j], v[j]) < 0) return NOE(spec_);
  NOE r = sorted(v);
  return sign > 0 ? r : -r;
}

NOE SymmetrizedProducts::sorted(const std::vector<int>& idx) {
  if (auto it = memo_.find(idx); it != memo_.end()) return it->second;
  const GradedSpace& s = *spec_->space;
  NOE r;
  if (idx.empty()) {
    r = NOE(spec_, Scalar(1));
  } else {
    const int a = idx[0];
    const std::vector<int> rest(idx.begin() + 1, idx.end());
    r = osc_upper(spec_, a, copy_) * sorted(rest);
    int sigma = 1;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (j > 0) {
        // sign of moving rest[j] to the front past rest[0..j-1]
        sigma = 1;
        for (std::size_t i = 0; i < j; ++i) sigma *= swap_sign(s, rest[i], rest[j]);
      }
      const Rational e = s.ginv(a, rest[j]);
      if (e == 0) continue;
      std::vector<int> drop = rest;
      drop.erase(drop.begin() + static_cast<long>(j));
      r -= Scalar(Rational(sigma) * e / 2) * sorted(drop);
    }
  }
  memo_.emplace(idx, r);
  return r;
}

NOE SpinorROperator::assembled() const {
  NOE r(algebra);
  for (std::size_t k = 0; k < terms.size(); ++k)
    r += (coefficients.values[k] / Scalar(factorial(static_cast<int>(k)))) * terms[k];
  return r;
}

namespace {

bool pure_clifford(const AlgebraSpec& a) {
  for (int g = 0; g < a.ngen; ++g)
    if (!a.nilpotent_type(g)) return false;
  return true;
}

// Sum over b of prod_i eps_{a_i b_i} S_2(b_k .. b_1) for the reversed tuple.
NOE lowered_product(const GradedSpace& s, const std::vector<int>& a, SymmetrizedProducts& s2) {
  NOE out;
  std::vector<int> b(a.size());
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational w) {
    if (i == a.size()) {
      std::vector<int> rev(b.rbegin(), b.rend());
      out += Scalar(w) * s2.get(rev);
      return;
    }
    for (const auto& [x, e] : s.lower_rows[static_cast<std::size_t>(a[i])]) {
      b[i] = x;
      rec(i + 1, w * e);
    }
  };
  rec(0, Rational(1));
  return out;
}

}  // namespace

SpinorROperator build_spinor_R(const SpinorRCoefficients& r, int kmax) {
  const SpacePtr& s = r.space;
  SpinorROperator R;
  R.algebra = two_copy_oscillator_algebra(s);
  if (pure_clifford(*oscillator_algebra(s))) kmax = s->dim;
  R.kmax = kmax;
  R.coefficients = static_cast<int>(r.values.size()) > kmax ? r : r_coefficients(s, kmax, r.r0, r.r1);
  R.coefficients.values.resize(static_cast<std::size_t>(kmax + 1));
  SymmetrizedProducts s1(R.algebra, 0), s2(R.algebra, 1);
  const int D = s->dim;
  for (int k = 0; k <= kmax; ++k) {
    NOE t(R.algebra);
    // Symmetrized products are graded-symmetric in their indices and the
    // paired reversal picks up the same sign, so each multiset contributes
    // (number of orderings) times its sorted representative.
    std::vector<int> a(static_cast<std::size_t>(k), 0);
    std::function<void(int, int)> rec = [&](int pos, int from) {
      if (pos == k) {
        NOE left = s1.get(a);
        if (left.is_zero()) return;
        Rational mult = factorial(k);
        for (int i = 0, run = 1; i < k; ++i) {
          if (i + 1 < k && a[static_cast<std::size_t>(i + 1)] == a[static_cast<std::size_t>(i)]) {
            ++run;
          } else {
            mult /= factorial(run);
            run = 1;
          }
        }
        t += Scalar(mult) * (left * lowered_product(*s, a, s2));
        return;
      }
      for (int x = from; x < D; ++x) {
        a[static_cast<std::size_t>(pos)] = x;
        rec(pos + 1, x);
      }
    };
    rec(0, 0);
    R.terms.push_back(std::move(t));
  }
  return R;
}

SpinorROperator build_spinor_R(const SpacePtr& s, int kmax) {
  return build_spinor_R(r_coefficients(s, kmax), kmax);
}

VerificationReport verify_invariance_of(const AlgebraPtr& two_copy, const NOE& x, const std::string& id) {
  return timed([&] {
    const auto F1 = build_F_upper(two_copy, 0), F2 = build_F_upper(two_copy, 1);
    const int D = two_copy->space->dim;
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) {
        NOE f;
        if (auto p = F1.find(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b))) f += *p;
        if (auto p = F2.find(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b))) f += *p;
        const NOE c = supercommutator(x, x.parity(), f, f.parity());
        if (!c.is_zero()) return bool_check(id, false, "[x, F1+F2]^" + idx_label({a, b}) + " = " + c.str());
      }
    return bool_check(id, true);
  });
}

VerificationReport verify_spinor_invariance(const SpinorROperator& R) {
  return timed([&] {
    for (std::size_t k = 0; k < R.terms.size(); ++k) {
      auto r = verify_invariance_of(R.algebra, R.terms[k], "eq:Rcond1");
      if (!r.passed()) {
        r.witness = "k=" + std::to_string(k) + " " + *r.witness;
        return r;
      }
    }
    return bool_check("eq:Rcond1", true);
  });
}

std::map<Monomial, Scalar> symmetric_basis(const NOE& x, SymmetrizedProducts& s1, SymmetrizedProducts& s2) {
  std::map<Monomial, Scalar> out;
  if (x.is_zero()) return out;
  const AlgebraSpec& a = *x.spec();
  const int D = a.space->dim;
  int top = x.max_degree();
  std::vector<std::map<Monomial, Scalar>> by_degree(static_cast<std::size_t>(top + 1));
  for (const auto& [m, c] : x.terms()) by_degree[static_cast<std::size_t>(a.monomial_degree(m))].emplace(m, c);
  for (int d = top; d >= 0; --d) {
    auto& level = by_degree[static_cast<std::size_t>(d)];
    while (!level.empty()) {
      const Monomial m = level.begin()->first;
      const Scalar c = level.begin()->second;
      std::vector<int> t1, t2;
      for (int g = 0; g < a.ngen; ++g)
        for (int e = 0; e < m[static_cast<std::size_t>(g)]; ++e) (g < D ? t1 : t2).push_back(g < D ? g : g - D);
      const NOE w = s1.get(t1) * s2.get(t2);
      out.emplace(m, c);
      for (const auto& [mm, cc] : w.terms()) {
        auto& lv = by_degree[static_cast<std::size_t>(a.monomial_degree(mm))];
        auto [it, fresh] = lv.emplace(mm, -(c * cc));
        if (!fresh) {
          it->second -= c * cc;
          if (it->second.is_zero()) lv.erase(it);
        }
      }
    }
  }
  return out;
}

namespace {

std::pair<int, int> bidegree(const AlgebraSpec& a, const Monomial& m) {
  const int D = a.space->dim;
  int p = 0, q = 0;
  for (int g = 0; g < a.ngen; ++g) (g < D ? p : q) += m[static_cast<std::size_t>(g)];
  return {p, q};
}

NOE entry(const OpMatrix<NOE>& F, int a, int b) {
  const NOE* p = F.find(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  return p ? *p : NOE();
}

}  // namespace

ReportList verify_spinor_rll_conditions(const SpinorROperator& R) {
  ReportList out;
  const AlgebraPtr& alg = R.algebra;
  const GradedSpace& s = *alg->space;
  const int D = s.dim;
  const auto F1 = build_F_upper(alg, 0), F2 = build_F_upper(alg, 1);
  auto p = [&](int a) { return s.par(a); };
  const Scalar u = Scalar::u();

  out.push_back(timed([&] {
    std::vector<std::optional<std::pair<int, std::string>>> failures(static_cast<std::size_t>(D * D));
    parallel_for(D * D, [&](int ab) {
      const int a = ab / D, b = ab % D;
      NOE Y;
      for (int c = 0; c < D; ++c)
        for (const auto& [d, e] : s.lower_rows[static_cast<std::size_t>(c)])
          Y += Scalar(e * parity_sign((p(b) + p(c)) * (p(d) + p(a)))) * (entry(F1, c, b) * entry(F2, a, d));
      const NOE f1 = entry(F1, a, b), f2 = entry(F2, a, b);
      SymmetrizedProducts s1(alg, 0), s2(alg, 1);
      std::map<Monomial, Scalar> total;
      for (std::size_t k = 0; k < R.terms.size(); ++k) {
        const NOE& t = R.terms[k];
        const Scalar w = R.coefficients.values[k] / Scalar(factorial(static_cast<int>(k)));
        for (const auto& [m, c] : symmetric_basis(t * f2 - f1 * t, s1, s2)) total[m] += w * u * c;
        for (const auto& [m, c] : symmetric_basis(t * Y - Y * t, s1, s2)) total[m] -= w * c;
      }
      std::optional<std::pair<int, Monomial>> worst;
      for (const auto& [m, c] : total) {
        if (c.is_zero()) continue;
        const auto [pp, qq] = bidegree(*alg, m);
        const int j = std::min(pp, qq);
        if (j > R.kmax - 2) continue;
        if (!worst || j < worst->first) worst = std::make_pair(j, m);
      }
      if (worst)
        failures[static_cast<std::size_t>(ab)] = std::make_pair(
            worst->first, "component k=" + std::to_string(worst->first) + " at (a,b)=" + idx_label({a, b}) +
                              ": " + NOE::from_monomial(alg, worst->second, total.at(worst->second)).str());
    });
    // Report the lowest failing component, ties broken by (a, b).
    const std::pair<int, std::string>* first = nullptr;
    for (const auto& f : failures)
      if (f && (!first || f->first < first->first)) first = &*f;
    return first ? bool_check("eq:Rcond2al", false, first->second) : bool_check("eq:Rcond2al", true);
  }));

  out.push_back(timed([&] {
    std::vector<std::optional<std::string>> failures(static_cast<std::size_t>(D * D));
    parallel_for(D * D, [&](int cb) {
      const int c = cb / D, b = cb % D;
      for (int a = 0; a < D && !failures[static_cast<std::size_t>(cb)]; ++a)
        for (int d = 0; d < D; ++d) {
          auto X = [&](const NOE& t, int c_, int b_, int a_, int d_) {
            const NOE ff = entry(F1, c_, b_) * entry(F2, a_, d_);
            return Scalar(parity_sign((p(b_) + p(c_)) * (p(d_) + p(a_)))) * (t * ff - ff * t);
          };
          const Scalar s1(-s.eps * parity_sign(p(c) * p(b) + p(c) + p(b)));
          const Scalar s2(-s.eps * parity_sign(p(a) * p(d) + p(a) + p(d)));
          for (std::size_t k = 0; k < R.terms.size(); ++k) {
            const NOE& t = R.terms[k];
            const NOE x = X(t, c, b, a, d);
            if (!(x == s1 * X(t, b, c, a, d)) || !(x == s2 * X(t, c, b, d, a))) {
              failures[static_cast<std::size_t>(cb)] =
                  "k=" + std::to_string(k) + " X^" + idx_label({c, b}) + idx_label({a, d});
              break;
            }
          }
          if (failures[static_cast<std::size_t>(cb)]) break;
        }
    });
    for (const auto& f : failures)
      if (f) return bool_check("ssymX", false, *f);
    return bool_check("ssymX", true);
  }));
  return out;
}

// ------------------------------------------------------- matrix realizations

namespace {

MatAlg kron(const MatAlg& a, const MatAlg& b) {
  const int n = a.size(), m = b.size();
  MatAlg r(n * m);
  for (int i = 0; i < n; ++i)
    for (const auto& [j, x] : a.rows()[static_cast<std::size_t>(i)])
      for (int k = 0; k < m; ++k)
        for (const auto& [l, y] : b.rows()[static_cast<std::size_t>(k)]) r.add(i * m + k, j * m + l, x * y);
  return r;
}

MatAlg parity_matrix(const std::vector<int>& par) {
  MatAlg g(static_cast<int>(par.size()));
  for (std::size_t i = 0; i < par.size(); ++i) g.add(static_cast<int>(i), static_cast<int>(i), Scalar(parity_sign(par[i])));
  return g;
}

}  // namespace

MatAlg graded_kron(const MatAlg& a, const std::vector<int>& a_state_parity, const MatAlg& x, int x_parity) {
  return kron(x_parity & 1 ? a * parity_matrix(a_state_parity) : a, x);
}

MatAlg represent_pair(const FiniteModule& mod, const AlgebraPtr& two_copy, const NOE& x) {
  const int n = mod.dim(), D = two_copy->space->dim;
  if (mod.spec->space != two_copy->space && !mod.spec->space->same_as(*two_copy->space))
    throw AlgebraError("module and two-copy algebra live on different spaces");
  const MatAlg id = MatAlg::identity(n), gamma = parity_matrix(mod.state_parity);
  std::vector<MatAlg> gens;
  for (int a = 0; a < D; ++a) gens.push_back(kron(represent(mod, NOE::generator(mod.spec, a)), id));
  for (int a = 0; a < D; ++a)
    gens.push_back(kron(two_copy->space->par(a) ? gamma : id, represent(mod, NOE::generator(mod.spec, a))));
  MatAlg out(n * n);
  for (const auto& [m, c] : x.terms()) {
    MatAlg t = MatAlg::identity(n * n, c);
    for (int g = 0; g < 2 * D; ++g)
      for (int e = 0; e < m[static_cast<std::size_t>(g)]; ++e) t = t * gens[static_cast<std::size_t>(g)];
    out += t;
  }
  return out;
}

VerificationReport verify_spinor_RLL_full(const SpinorROperator& R, const FiniteModule& spinor,
                                          const GeneratorMatrix<MatAlg>& G, const std::vector<int>& w_parity) {
  return timed([&] {
    const GradedSpace& s = *R.algebra->space;
    const int D = s.dim, n = spinor.dim(), w = static_cast<int>(w_parity.size());
    std::vector<int> pair_parity;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pair_parity.push_back(spinor.state_parity[static_cast<std::size_t>(i)] +
                                                        spinor.state_parity[static_cast<std::size_t>(j)]);
    MatAlg Rm(n * n);
    for (std::size_t k = 0; k < R.terms.size(); ++k)
      Rm += (R.coefficients.values[k] / Scalar(factorial(static_cast<int>(k)))) *
            represent_pair(spinor, R.algebra, R.terms[k]);
    const MatAlg Rfull = kron(Rm, MatAlg::identity(w));
    const auto F1 = build_F_upper(R.algebra, 0), F2 = build_F_upper(R.algebra, 1);
    MatAlg S1(n * n * w), S2(n * n * w);
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) {
        // G_{ba} = eps_{bx} G^x_a
        MatAlg gl(w);
        for (const auto& [x, e] : s.lower_rows[static_cast<std::size_t>(b)])
          if (const MatAlg* m = G.G.find(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(a))) gl += Scalar(e) * *m;
        if (gl.is_zero()) continue;
        const int gp = s.par(a) + s.par(b);
        S1 += graded_kron(represent_pair(spinor, R.algebra, entry(F1, a, b)), pair_parity, gl, gp);
        S2 += graded_kron(represent_pair(spinor, R.algebra, entry(F2, a, b)), pair_parity, gl, gp);
      }
    const int big = n * n * w;
    const Scalar half(Rational(1, 2)), u = Scalar::u(), v = Scalar::v();
    auto L = [&](const MatAlg& S, const Scalar& x) { return MatAlg::identity(big, x) - half * S; };
    const MatAlg lhs = Rfull * L(S1, u + v) * L(S2, v);
    const MatAlg rhs = L(S1, v) * L(S2, u + v) * Rfull;
    const MatAlg diff = lhs - rhs;
    for (int i = 0; i < big; ++i)
      for (const auto& [j, x] : diff.rows()[static_cast<std::size_t>(i)])
        return bool_check("eq:RLL1", false, "entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + x.str());
    return bool_check("eq:RLL1", true);
  });
}

// -------------------------------------------------------------- fusion

namespace {

Scalar kappa_or(std::optional<Rational> kappa) { return kappa ? Scalar(*kappa) : Scalar::kappa(); }

}  // namespace

FusionResult fusion_T(const SpacePtr& s, std::optional<Rational> kappa) {
  const AlgebraPtr A = oscillator_algebra(s);
  const int D = s->dim;
  const auto F = build_F(A);
  const Scalar u = Scalar::u(), k = kappa_or(kappa);
  const Scalar lam = k + Scalar((3 - s->omega) / 2), mu = k - Scalar(Rational(1, 2));
  auto L = [&](int b, int c, const Scalar& x, int sign) {
    NOE r = Scalar(sign) * entry(F.G, b, c);
    if (b == c) r += NOE(A, x);
    return r;
  };
  // left[b1][c1][d2] = L^{b1}_{c1}(u+lambda) c_{d2}, right[c1][d1][b2] = L~^{c1}_{d1}(u+mu) c^{b2}
  std::vector<NOE> left(static_cast<std::size_t>(D * D * D)), right(static_cast<std::size_t>(D * D * D));
  for (int x = 0; x < D; ++x)
    for (int y = 0; y < D; ++y) {
      const NOE l = L(x, y, u + lam, 1), r = L(x, y, u + mu, -1);
      for (int z = 0; z < D; ++z) {
        left[static_cast<std::size_t>((x * D + y) * D + z)] = l * osc_lower(A, z);
        right[static_cast<std::size_t>((x * D + y) * D + z)] = r * osc_upper(A, z);
      }
    }
  FusionResult out{s, GradedOperator(s, 2)};
  std::vector<std::vector<std::tuple<int, int, Scalar>>> cells(static_cast<std::size_t>(D * D));
  parallel_for(D * D, [&](int bd) {
    const int b1 = bd / D, d1 = bd % D;
    for (int b2 = 0; b2 < D; ++b2)
      for (int d2 = 0; d2 < D; ++d2) {
        Scalar t;
        for (int c1 = 0; c1 < D; ++c1) {
          const NOE prod = left[static_cast<std::size_t>((b1 * D + c1) * D + d2)] *
                           right[static_cast<std::size_t>((c1 * D + d1) * D + b2)];
          t += Scalar(2 * parity_sign((s->par(c1) + s->par(d1)) * s->par(d2))) * trace_even(prod);
        }
        if (!t.is_zero()) cells[static_cast<std::size_t>(bd)].emplace_back(b2, d2, t);
      }
  });
  for (int bd = 0; bd < D * D; ++bd) {
    const int b1 = bd / D, d1 = bd % D;
    for (const auto& [b2, d2, t] : cells[static_cast<std::size_t>(bd)])
      out.T.add(static_cast<std::uint64_t>(b1 * D + b2), static_cast<std::uint64_t>(d1 * D + d2), t);
  }
  return out;
}

GradedOperator fusion_closed_form(const SpacePtr& s, std::optional<Rational> kappa) {
  const int D = s->dim;
  const Scalar up = Scalar::u() + kappa_or(kappa), beta(s->beta);
  GradedOperator T(s, 2);
  for (int b1 = 0; b1 < D; ++b1)
    for (int b2 = 0; b2 < D; ++b2)
      for (int d1 = 0; d1 < D; ++d1)
        for (int d2 = 0; d2 < D; ++d2) {
          Scalar x;
          if (b1 == d1 && b2 == d2) x += up * (up + beta);
          if (b1 == d2 && b2 == d1) {
            const int p1 = s->par(d1), p2 = s->par(d2);
            x -= Scalar(s->eps * parity_sign(p1 + p2 + p1 * p2)) * (up + beta);
          }
          const Rational kk = s->ginv(b1, b2) * s->g(d1, d2);
          if (kk != 0) x += Scalar(kk) * up;
          T.add(static_cast<std::uint64_t>(b1 * D + b2), static_cast<std::uint64_t>(d1 * D + d2), x);
        }
  return T;
}

namespace {

template <class SignF>
GradedOperator decorate(const GradedOperator& T, SignF&& sign) {
  return T.map_entries([&](std::uint64_t k, const Scalar& x) {
    const MultiIndex o = T.out_index(k), i = T.in_index(k);
    return Scalar(sign(o[0], o[1], i[0], i[1])) * x;
  });
}

}  // namespace

GradedOperator fusion_decorated(const GradedOperator& T) {
  const GradedSpace& s = *T.space();
  return decorate(T, [&](int b1, int b2, int d1, int d2) {
    return parity_sign(s.par(b1) * s.par(d2) + s.par(d1) * s.par(b2));
  });
}

GradedOperator fusion_decorated_twisted(const GradedOperator& T) {
  const GradedSpace& s = *T.space();
  return decorate(T, [&](int b1, int b2, int d1, int d2) {
    (void)b2;
    (void)d2;
    return parity_sign(s.par(b1) + s.par(d1));
  });
}

ReportList verify_fusion(const SpacePtr& s) {
  ReportList out;
  FusionResult f;
  const double ms = timed([&] {
    f = fusion_T(s);
    return bool_check("rl6", true);
  }).millis;
  const Scalar up = Scalar::u() + Scalar::kappa();
  out.push_back(timed([&] { return zero_check("first3a", f.T - fusion_closed_form(s)); }));
  out.push_back(timed([&] { return zero_check("intw01", fusion_decorated(f.T) - build_R(s, RForm::standard, up)); }));
  out.push_back(timed([&] {
    return zero_check("intw01:twisted", fusion_decorated_twisted(f.T) - build_R(s, RForm::twisted, up));
  }));
  for (auto& r : out) r.millis += ms / 3;
  return out;
}

VerificationReport verify_fusion_sampled(const SpacePtr& s, const std::vector<int>& kappas) {
  return timed([&] {
    const GradedOperator exact = fusion_T(s).T;
    for (int k : kappas) {
      const GradedOperator at = fusion_T(s, Rational(k)).T;
      const GradedOperator sub =
          exact.map_entries([&](std::uint64_t, const Scalar& x) { return x.substitute(Var::kappa, Rational(k)); });
      auto r = zero_check("rl6:sample", at - sub);
      if (!r.passed()) {
        r.witness = "kappa=" + std::to_string(k) + ": " + *r.witness;
        return r;
      }
    }
    return bool_check("rl6:sample", true);
  });
}

VerificationReport verify_intertwiner_identity(const SpacePtr& s, const Rational& shift) {
  return timed([&] {
    const AlgebraPtr A = oscillator_algebra(s);
    const int D = s->dim;
    const auto F = build_F(A);
    const Scalar v = Scalar::u();
    const Scalar x1 = v + Scalar(s->beta + Rational(1, 2) + shift), x2 = v - Scalar(Rational(1, 2));
    const GradedOperator R = build_R(s, RForm::standard, v);
    auto L = [&](int b, int c, const Scalar& x, int sign) {
      NOE r = Scalar(sign) * entry(F.G, b, c);
      if (b == c) r += NOE(A, x);
      return r;
    };
    auto p = [&](int a) { return s->par(a); };
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b)
        for (int q = 0; q < D; ++q) {
          NOE lhs(A), rhs(A);
          for (int c = 0; c < D; ++c) {
            lhs += Scalar(parity_sign(p(q) * (p(b) + p(c)))) * (L(a, c, x1, 1) * osc_lower(A, q) * L(c, b, x2, -1));
            if (const Scalar* r = R.find(static_cast<std::uint64_t>(a * D + c), static_cast<std::uint64_t>(b * D + q)))
              rhs += (Scalar(parity_sign(p(a) * p(q) + p(b) * p(c))) * *r) * osc_lower(A, c);
          }
          const NOE diff = lhs - rhs;
          if (!diff.is_zero())
            return bool_check("intw02", false, "(a,b,p)=" + idx_label({a, b, q}) + ": " + diff.str());
        }
    return bool_check("intw02", true);
  });
}

}  // namespace ospyb
