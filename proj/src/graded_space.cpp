#include "ospyb/graded_space.hpp"

#include <sstream>

namespace ospyb {

void GradedSpace::require_nondegenerate_omega() const {
  if (omega == 0) throw DegenerateOmegaError();
}

std::string GradedSpace::label() const {
  return "(" + std::to_string(N) + "|" + std::to_string(M) + "," + (eps > 0 ? "+1" : "-1") + ")";
}

std::string index_string(const MultiIndex& m) {
  std::string s;
  for (int i = 0; i < m.n; ++i) {
    if (i) s += ",";
    s += std::to_string(m[i] + 1);
  }
  return s;
}

namespace {

// Gauss-Jordan inverse over Q; throws when singular.
std::vector<Rational> invert(const std::vector<Rational>& a, int n) {
  std::vector<Rational> m = a;
  std::vector<Rational> inv(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i * n + i)] = 1;
  auto at = [n](std::vector<Rational>& v, int r, int c) -> Rational& {
    return v[static_cast<std::size_t>(r * n + c)];
  };
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (at(m, r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw SpaceError("metric is singular");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(at(m, piv, c), at(m, col, c));
        std::swap(at(inv, piv, c), at(inv, col, c));
      }
    const Rational p = at(m, col, col);
    for (int c = 0; c < n; ++c) {
      at(m, col, c) /= p;
      at(inv, col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || at(m, r, col) == 0) continue;
      const Rational f = at(m, r, col);
      for (int c = 0; c < n; ++c) {
        at(m, r, c) -= f * at(m, col, c);
        at(inv, r, c) -= f * at(inv, col, c);
      }
    }
  }
  return inv;
}

std::shared_ptr<GradedSpace> skeleton(int N, int M, int eps) {
  if (N < 0 || M < 0 || N + M == 0) throw SpaceError("space needs N + M > 0");
  if (eps != 1 && eps != -1) throw SpaceError("epsilon must be +1 or -1");
  if (N + M > 8) throw SpaceError("dimension above 8 is not supported");
  auto s = std::make_shared<GradedSpace>();
  s->N = N;
  s->M = M;
  s->eps = eps;
  s->dim = N + M;
  s->grading.assign(static_cast<std::size_t>(N + M), 0);
  for (int a = N; a < N + M; ++a) s->grading[static_cast<std::size_t>(a)] = 1;
  return s;
}

void finish(GradedSpace& s) {
  const int D = s.dim;
  s.inverse = invert(s.metric, D);
  s.lower_rows.assign(static_cast<std::size_t>(D), {});
  s.upper_rows.assign(static_cast<std::size_t>(D), {});
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      if (s.g(a, b) != 0) s.lower_rows[static_cast<std::size_t>(a)].emplace_back(b, s.g(a, b));
      if (s.ginv(a, b) != 0) s.upper_rows[static_cast<std::size_t>(a)].emplace_back(b, s.ginv(a, b));
    }
  s.omega = s.eps * (s.N - s.M);
  s.beta = 1 - s.omega / 2;
  const auto bad = check_space_invariants(s);
  if (!bad.empty()) throw SpaceError("invalid metric: " + bad.front());
}

}  // namespace

SpacePtr make_space(int N, int M, int eps) {
  if (eps == 1 && M % 2 != 0)
    throw SpaceError("parity violation: the antisymmetric (odd) block needs even M when epsilon=+1");
  if (eps == -1 && N % 2 != 0)
    throw SpaceError("parity violation: the antisymmetric (even) block needs even N when epsilon=-1");
  auto s = skeleton(N, M, eps);
  const int D = s->dim;
  s->metric.assign(static_cast<std::size_t>(D * D), 0);
  // Symmetric block gets the identity, the antisymmetric block pairs i with i+h.
  const int sym_lo = eps == 1 ? 0 : N, sym_hi = eps == 1 ? N : N + M;
  const int anti_lo = eps == 1 ? N : 0, anti_n = eps == 1 ? M : N;
  for (int a = sym_lo; a < sym_hi; ++a) s->metric[static_cast<std::size_t>(a * D + a)] = 1;
  const int h = anti_n / 2;
  for (int i = 0; i < h; ++i) {
    const int a = anti_lo + i, b = anti_lo + h + i;
    s->metric[static_cast<std::size_t>(a * D + b)] = 1;
    s->metric[static_cast<std::size_t>(b * D + a)] = -1;
  }
  finish(*s);
  return s;
}

SpacePtr make_space_with_metric(int N, int M, int eps,
                                const std::vector<std::vector<Rational>>& metric) {
  auto s = skeleton(N, M, eps);
  const int D = s->dim;
  if (static_cast<int>(metric.size()) != D) throw SpaceError("metric has wrong size");
  s->metric.clear();
  for (const auto& row : metric) {
    if (static_cast<int>(row.size()) != D) throw SpaceError("metric has wrong size");
    s->metric.insert(s->metric.end(), row.begin(), row.end());
  }
  finish(*s);
  return s;
}

std::vector<std::string> check_space_invariants(const GradedSpace& s) {
  std::vector<std::string> bad;
  const int D = s.dim;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      if (s.g(a, b) != 0 && ((s.par(a) + s.par(b)) & 1))
        bad.push_back("metric is not even at (" + std::to_string(a + 1) + "," +
                      std::to_string(b + 1) + ")");
      if (s.g(a, b) != s.eps * parity_sign(s.par(a) * s.par(b)) * s.g(b, a))
        bad.push_back("graded symmetry fails at (" + std::to_string(a + 1) + "," +
                      std::to_string(b + 1) + ")");
      Rational acc = 0;
      for (int c = 0; c < D; ++c) acc += s.ginv(a, c) * s.g(c, b);
      if (acc != (a == b ? 1 : 0)) bad.push_back("inverse relation fails");
    }
  Rational contracted = 0;
  for (int c = 0; c < D; ++c)
    for (int d = 0; d < D; ++d) contracted += s.ginv(c, d) * s.g(c, d);
  if (contracted != s.omega) bad.push_back("omega from the metric disagrees with eps*(N-M)");
  if (s.beta != 1 - s.omega / 2) bad.push_back("beta != 1 - omega/2");
  return bad;
}

GradedOperator identity_op(const SpacePtr& s, int n) { return identity_op<Scalar>(s, n, Scalar(1)); }

GradedOperator sign_operator(const SpacePtr& s, int n, int i, int j) {
  if (!(1 <= i && i < j && j <= n)) throw SpaceError("sign_operator: slot out of range");
  return left_sign(identity_op(s, n), i, j);
}

GradedOperator compose(const std::vector<GradedOperator>& ops) {
  if (ops.empty()) throw SpaceError("compose: empty list");
  GradedOperator r = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) r = r * ops[i];
  return r;
}

Scalar supertrace(const GradedOperator& a) {
  if (a.arity() != 1) throw SpaceError("supertrace expects an arity-1 operator");
  Scalar t;
  for (int i = 0; i < a.dim(); ++i)
    if (const Scalar* x = a.find(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(i)))
      t += a.space()->par(i) ? -*x : *x;
  return t;
}

std::vector<std::pair<std::vector<int>, int>> graded_symmetrizer_terms(const GradedSpace& s,
                                                                       const std::vector<int>& idx,
                                                                       SymRule rule) {
  const int k = static_cast<int>(idx.size());
  std::vector<int> start(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) start[static_cast<std::size_t>(i)] = i;
  std::map<std::vector<int>, int> seen{{start, 1}};
  std::vector<std::vector<int>> queue{start};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::vector<int> pos = queue[q];
    const int sign = seen[pos];
    for (int j = 0; j + 1 < k; ++j) {
      const int x = s.par(idx[static_cast<std::size_t>(pos[static_cast<std::size_t>(j)])]);
      const int y = s.par(idx[static_cast<std::size_t>(pos[static_cast<std::size_t>(j + 1)])]);
      int p = x * y + (rule == SymRule::tilde ? x + y : 0);
      const int next_sign = -s.eps * sign * parity_sign(p);
      std::vector<int> next = pos;
      std::swap(next[static_cast<std::size_t>(j)], next[static_cast<std::size_t>(j + 1)]);
      auto [it, fresh] = seen.emplace(next, next_sign);
      if (fresh)
        queue.push_back(next);
      else if (it->second != next_sign)
        throw SpaceError("graded symmetrizer sign is not well defined");
    }
  }
  std::vector<std::pair<std::vector<int>, int>> out;
  for (const auto& [pos, sign] : seen) {
    std::vector<int> vals;
    for (int p : pos) vals.push_back(idx[static_cast<std::size_t>(p)]);
    out.emplace_back(std::move(vals), sign);
  }
  return out;
}

void GradedVector::add(std::uint64_t i, const Scalar& x) {
  if (x.is_zero()) return;
  auto [it, fresh] = components.emplace(i, x);
  if (!fresh) {
    it->second += x;
    if (it->second.is_zero()) components.erase(it);
  }
}

namespace {

GradedVector contract_vector(const GradedVector& z, int slot, bool upper) {
  if (slot < 1 || slot > z.arity) throw SpaceError("index slot out of range");
  const auto& s = *z.space;
  GradedVector r{z.space, z.arity, {}};
  for (const auto& [code, x] : z.components) {
    MultiIndex m = decode_index(code, s.dim, z.arity);
    const int b = m[slot - 1];
    // result_a = metric(a, b) z_b: scan column b.
    for (int a = 0; a < s.dim; ++a) {
      const Rational& w = upper ? s.ginv(a, b) : s.g(a, b);
      if (w == 0) continue;
      m[slot - 1] = a;
      r.add(encode_index(m, s.dim), Scalar(w) * x);
    }
  }
  return r;
}

GradedOperator contract_operator(const GradedOperator& t, int slot, bool upper) {
  if (slot < 1 || slot > t.arity()) throw SpaceError("index slot out of range");
  const auto& s = *t.space();
  GradedOperator m(t.space(), 1);
  for (int a = 0; a < s.dim; ++a)
    for (int b = 0; b < s.dim; ++b) {
      const Rational& w = upper ? s.ginv(a, b) : s.g(a, b);
      if (w != 0) m.add(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b), Scalar(w));
    }
  return embed(m, t.arity(), {slot}) * t;
}

}  // namespace

GradedVector lower_index(const GradedVector& z, int slot) { return contract_vector(z, slot, false); }
GradedVector raise_index(const GradedVector& z, int slot) { return contract_vector(z, slot, true); }
GradedOperator lower_index(const GradedOperator& t, int slot) {
  return contract_operator(t, slot, false);
}
GradedOperator raise_index(const GradedOperator& t, int slot) {
  return contract_operator(t, slot, true);
}

GradedVector metric_vector(const SpacePtr& s, bool upper) {
  GradedVector r{s, 2, {}};
  for (int a = 0; a < s->dim; ++a)
    for (int b = 0; b < s->dim; ++b) {
      const Rational& w = upper ? s->ginv(a, b) : s->g(a, b);
      if (w != 0) r.add(static_cast<std::uint64_t>(a * s->dim + b), Scalar(w));
    }
  return r;
}

GradedOperator convert_convention(const GradedOperator& r, Convention) {
  if (r.arity() != 2 && r.arity() != 3)
    throw SpaceError("convert_convention expects arity 2 or 3");
  if (!is_even(r)) throw SpaceError("convert_convention: operator is not even");
  const auto& s = *r.space();
  // The sign is an involution, so both directions apply the same factor:
  // dual-basis sign sum_{i<j}[b_i][b_j] and bra/ket reordering sum_{i<j}[b_i][a_j].
  return sign_weight(r, [&](const MultiIndex& a, const MultiIndex& b) {
    int p = 0;
    for (int i = 0; i < a.n; ++i)
      for (int j = i + 1; j < a.n; ++j) p += s.par(b[i]) * s.par(b[j]) + s.par(b[i]) * s.par(a[j]);
    return parity_sign(p);
  });
}

GradedOperator graded_basis_compose(const GradedOperator& a, const GradedOperator& b) {
  a.check_compatible(b);
  const auto& s = *a.space();
  const auto S = a.size();
  GradedOperator r(a.space(), a.arity());
  for (const auto& [ka, xa] : a.entries()) {
    const MultiIndex ao = a.out_index(ka), ai = a.in_index(ka);
    const std::uint64_t mid = ka % S;
    for (auto it = b.entries().lower_bound(mid * S);
         it != b.entries().end() && it->first / S == mid; ++it) {
      const MultiIndex bi = b.in_index(it->first);
      int p = 0;
      for (int i = 0; i < ao.n; ++i)
        for (int j = 0; j < i; ++j)
          p += (s.par(ao[i]) + s.par(ai[i])) * (s.par(ai[j]) + s.par(bi[j]));
      Scalar x = xa * it->second;
      r.add(ka / S, it->first % S, (p & 1) ? -x : x);
    }
  }
  return r;
}

}  // namespace ospyb
