#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ospyb/scalar.hpp"

namespace ospyb {

class SpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by operations that divide by omega when omega = 0.
class DegenerateOmegaError : public SpaceError {
 public:
  DegenerateOmegaError() : SpaceError("degenerate omega: operation divides by omega = 0") {}
};

inline int parity_sign(int p) { return (p & 1) ? -1 : 1; }

/// The superspace V_(N|M) with its supermetric.
///
/// Indices are 0-based here: 0..N-1 even, N..N+M-1 odd. Printed witnesses
/// use 1-based indices.
struct GradedSpace {
  int N = 0;
  int M = 0;
  int eps = 1;
  int dim = 0;
  std::vector<int> grading;
  std::vector<Rational> metric;   // eps_{ab}, row-major
  std::vector<Rational> inverse;  // eps^{ab}, the inverse matrix
  Rational omega;
  Rational beta;
  /// Nonzero entries of eps_{ab} / eps^{ab} by row.
  std::vector<std::vector<std::pair<int, Rational>>> lower_rows;
  std::vector<std::vector<std::pair<int, Rational>>> upper_rows;

  int par(int a) const { return grading[static_cast<std::size_t>(a)]; }
  const Rational& g(int a, int b) const { return metric[static_cast<std::size_t>(a * dim + b)]; }
  const Rational& ginv(int a, int b) const {
    return inverse[static_cast<std::size_t>(a * dim + b)];
  }
  /// Throws DegenerateOmegaError when omega is zero.
  void require_nondegenerate_omega() const;
  std::string label() const;
  bool same_as(const GradedSpace& o) const {
    return N == o.N && M == o.M && eps == o.eps && metric == o.metric;
  }
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

/// Canonical metric: identity on the symmetric block, [[0, 1], [-1, 0]] blocks on the
/// antisymmetric one.
SpacePtr make_space(int N, int M, int eps);
/// Custom metric, validated against evenness, graded symmetry and invertibility.
SpacePtr make_space_with_metric(int N, int M, int eps, const std::vector<std::vector<Rational>>& metric);
/// Runs every space invariant; returns a list of violations (empty when valid).
std::vector<std::string> check_space_invariants(const GradedSpace& s);

// ------------------------------------------------------------------ indices

/// Multi-index of at most 8 slots.
struct MultiIndex {
  std::array<int, 8> v{};
  int n = 0;
  int operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
};

inline std::uint64_t ipow(int base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(base);
  return r;
}

inline MultiIndex decode_index(std::uint64_t code, int dim, int n) {
  MultiIndex m;
  m.n = n;
  for (int i = n - 1; i >= 0; --i) {
    m[i] = static_cast<int>(code % static_cast<std::uint64_t>(dim));
    code /= static_cast<std::uint64_t>(dim);
  }
  return m;
}

inline std::uint64_t encode_index(const MultiIndex& m, int dim) {
  std::uint64_t c = 0;
  for (int i = 0; i < m.n; ++i) c = c * static_cast<std::uint64_t>(dim) + static_cast<std::uint64_t>(m[i]);
  return c;
}

std::string index_string(const MultiIndex& m);

// -------------------------------------------------------------- operators

/// Sparse operator on V^{(x)n} whose entries live in an associative algebra E.
///
/// E = Scalar gives GradedOperator. Algebra-valued entries (oscillator
/// elements, module matrices) multiply in the order written, which is the
/// coordinate-grading convention: all signs are explicit sign operators.
template <class E>
class OpMatrix {
 public:
  using Key = std::uint64_t;

  OpMatrix() = default;
  OpMatrix(SpacePtr space, int arity)
      : space_(std::move(space)), arity_(arity), size_(ipow(space_->dim, arity)) {}

  const SpacePtr& space() const { return space_; }
  int arity() const { return arity_; }
  std::uint64_t size() const { return size_; }
  int dim() const { return space_->dim; }

  const std::map<Key, E>& entries() const { return entries_; }
  std::map<Key, E>& mutable_entries() { return entries_; }
  Key key(std::uint64_t out, std::uint64_t in) const { return out * size_ + in; }
  std::uint64_t out_of(Key k) const { return k / size_; }
  std::uint64_t in_of(Key k) const { return k % size_; }
  MultiIndex out_index(Key k) const { return decode_index(out_of(k), dim(), arity_); }
  MultiIndex in_index(Key k) const { return decode_index(in_of(k), dim(), arity_); }

  const E* find(std::uint64_t out, std::uint64_t in) const {
    auto it = entries_.find(key(out, in));
    return it == entries_.end() ? nullptr : &it->second;
  }
  const E* find(const MultiIndex& out, const MultiIndex& in) const {
    return find(encode_index(out, dim()), encode_index(in, dim()));
  }

  /// Adds x to the entry, erasing it if the sum vanishes.
  void add(std::uint64_t out, std::uint64_t in, const E& x) {
    if (x.is_zero()) return;
    auto [it, fresh] = entries_.emplace(key(out, in), x);
    if (!fresh) {
      it->second += x;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }
  void add(const MultiIndex& out, const MultiIndex& in, const E& x) {
    add(encode_index(out, dim()), encode_index(in, dim()), x);
  }

  bool is_zero() const { return entries_.empty(); }

  template <class F>
  OpMatrix map_entries(F&& f) const {
    OpMatrix r(space_, arity_);
    for (const auto& [k, x] : entries_) {
      E y = f(k, x);
      if (!y.is_zero()) r.entries_.emplace(k, std::move(y));
    }
    return r;
  }

  OpMatrix operator-() const {
    return map_entries([](Key, const E& x) { return -x; });
  }
  OpMatrix& operator+=(const OpMatrix& o) {
    check_compatible(o);
    for (const auto& [k, x] : o.entries_) add(out_of(k), in_of(k), x);
    return *this;
  }
  OpMatrix& operator-=(const OpMatrix& o) {
    check_compatible(o);
    for (const auto& [k, x] : o.entries_) add(out_of(k), in_of(k), -x);
    return *this;
  }
  friend OpMatrix operator+(OpMatrix a, const OpMatrix& b) { return a += b; }
  friend OpMatrix operator-(OpMatrix a, const OpMatrix& b) { return a -= b; }
  friend bool operator==(const OpMatrix& a, const OpMatrix& b) {
    return a.arity_ == b.arity_ && a.entries_ == b.entries_;
  }

  void check_compatible(const OpMatrix& o) const {
    if (arity_ != o.arity_) throw SpaceError("arity mismatch");
    if (space_ != o.space_ && !space_->same_as(*o.space_)) throw SpaceError("space mismatch");
  }

 private:
  SpacePtr space_;
  int arity_ = 0;
  std::uint64_t size_ = 0;
  std::map<Key, E> entries_;
};

using GradedOperator = OpMatrix<Scalar>;

/// Product of sparse operators; entries multiply as a(out,k) * b(k,in).
template <class A, class B>
auto operator*(const OpMatrix<A>& a, const OpMatrix<B>& b)
    -> OpMatrix<std::decay_t<decltype(std::declval<A>() * std::declval<B>())>> {
  using R = std::decay_t<decltype(std::declval<A>() * std::declval<B>())>;
  if (a.arity() != b.arity()) throw SpaceError("arity mismatch in product");
  OpMatrix<R> r(a.space(), a.arity());
  const auto S = a.size();
  const auto& be = b.entries();
  for (const auto& [ka, xa] : a.entries()) {
    const std::uint64_t out = ka / S;
    const std::uint64_t mid = ka % S;
    for (auto it = be.lower_bound(mid * S); it != be.end() && it->first / S == mid; ++it)
      r.add(out, it->first % S, xa * it->second);
  }
  return r;
}

template <class E>
OpMatrix<E> scale(const OpMatrix<E>& a, const Scalar& s) {
  if (s.is_zero()) return OpMatrix<E>(a.space(), a.arity());
  return a.map_entries([&](std::uint64_t, const E& x) { return s * x; });
}

/// Replaces every Scalar entry s by s * one.
template <class E>
OpMatrix<E> lift(const GradedOperator& a, const E& one) {
  OpMatrix<E> r(a.space(), a.arity());
  for (const auto& [k, s] : a.entries()) r.add(a.out_of(k), a.in_of(k), s * one);
  return r;
}

template <class E>
OpMatrix<E> identity_op(const SpacePtr& s, int n, const E& one) {
  OpMatrix<E> r(s, n);
  for (std::uint64_t i = 0; i < r.size(); ++i) r.add(i, i, one);
  return r;
}

GradedOperator identity_op(const SpacePtr& s, int n);

/// Plain embedding of an arity-k operator into slots (s_1..s_k) of V^{(x)n}
/// (identity elsewhere, no sign dressing).
template <class E>
OpMatrix<E> embed(const OpMatrix<E>& a, int n, const std::vector<int>& slots) {
  const int k = a.arity();
  if (static_cast<int>(slots.size()) != k) throw SpaceError("embed: slot count mismatch");
  for (int s : slots)
    if (s < 1 || s > n) throw SpaceError("embed: slot out of range");
  const int D = a.dim();
  OpMatrix<E> r(a.space(), n);
  std::vector<int> rest;
  for (int i = 1; i <= n; ++i)
    if (std::find(slots.begin(), slots.end(), i) == slots.end()) rest.push_back(i);
  const std::uint64_t nrest = ipow(D, static_cast<int>(rest.size()));
  for (const auto& [key, x] : a.entries()) {
    const MultiIndex o = a.out_index(key), in = a.in_index(key);
    for (std::uint64_t c = 0; c < nrest; ++c) {
      const MultiIndex rr = decode_index(c, D, static_cast<int>(rest.size()));
      MultiIndex O, I;
      O.n = I.n = n;
      for (int j = 0; j < k; ++j) {
        O[slots[j] - 1] = o[j];
        I[slots[j] - 1] = in[j];
      }
      for (std::size_t j = 0; j < rest.size(); ++j) {
        O[rest[j] - 1] = rr[static_cast<int>(j)];
        I[rest[j] - 1] = rr[static_cast<int>(j)];
      }
      r.add(O, I, x);
    }
  }
  return r;
}

/// Multiplies each entry by a sign computed from its (out, in) multi-indices.
template <class E, class F>
OpMatrix<E> sign_weight(const OpMatrix<E>& a, F&& sign_of) {
  return a.map_entries([&](std::uint64_t k, const E& x) {
    return sign_of(a.out_index(k), a.in_index(k)) < 0 ? -x : x;
  });
}

/// (-)^{ij} X: left multiplication by the sign operator, slots 1-based.
template <class E>
OpMatrix<E> left_sign(const OpMatrix<E>& a, int i, int j) {
  const auto& s = *a.space();
  return sign_weight(a, [&](const MultiIndex& o, const MultiIndex&) {
    return parity_sign(s.par(o[i - 1]) * s.par(o[j - 1]));
  });
}

/// X (-)^{ij}.
template <class E>
OpMatrix<E> right_sign(const OpMatrix<E>& a, int i, int j) {
  const auto& s = *a.space();
  return sign_weight(a, [&](const MultiIndex&, const MultiIndex& in) {
    return parity_sign(s.par(in[i - 1]) * s.par(in[j - 1]));
  });
}

/// (-)^{ij} X (-)^{ij}.
template <class E>
OpMatrix<E> sign_conj(const OpMatrix<E>& a, int i, int j) {
  return right_sign(left_sign(a, i, j), i, j);
}

/// Relabels slots: result^{a_{p(1)}..}_{..} = a^{a_1..}_{..} with slot t of `a`
/// moved to slot perm[t]-1 (1-based). No signs are introduced.
template <class E>
OpMatrix<E> permute_slots(const OpMatrix<E>& a, const std::vector<int>& perm) {
  const int n = a.arity();
  if (static_cast<int>(perm.size()) != n) throw SpaceError("permute_slots: size mismatch");
  OpMatrix<E> r(a.space(), n);
  for (const auto& [k, x] : a.entries()) {
    const MultiIndex o = a.out_index(k), in = a.in_index(k);
    MultiIndex O, I;
    O.n = I.n = n;
    for (int t = 0; t < n; ++t) {
      O[perm[t] - 1] = o[t];
      I[perm[t] - 1] = in[t];
    }
    r.add(O, I, x);
  }
  return r;
}

/// First nonzero entry in (out, in) lexicographic order, formatted as
/// "(a1a2..|b1b2..) = value".
template <class E>
std::optional<std::string> first_nonzero(const OpMatrix<E>& a) {
  if (a.entries().empty()) return std::nullopt;
  const auto& [k, x] = *a.entries().begin();
  return "(" + index_string(a.out_index(k)) + "|" + index_string(a.in_index(k)) + ") = " +
         x.str();
}

template <class E>
std::string op_string(const OpMatrix<E>& a) {
  std::string out;
  for (const auto& [k, x] : a.entries())
    out += "(" + index_string(a.out_index(k)) + "|" + index_string(a.in_index(k)) + ") " +
           x.str() + "\n";
  return out;
}

// ------------------------------------------------------- module operations

/// Diagonal sign operator (-)^{ij} on V^{(x)n}; slots are 1-based, i < j.
GradedOperator sign_operator(const SpacePtr& s, int n, int i, int j);

/// C_{{1..j}} = (-)^{j-1,j}..(-)^{1j} C_j (-)^{1j}..(-)^{j-1,j} on V^{(x)n}.
template <class E>
OpMatrix<E> dress_operator(const OpMatrix<E>& c, int n, int j) {
  if (c.arity() != 1) throw SpaceError("dress_operator expects an arity-1 operator");
  if (j < 1 || j > n) throw SpaceError("dress_operator: slot out of range");
  OpMatrix<E> r = embed(c, n, {j});
  for (int i = 1; i < j; ++i) r = sign_conj(r, i, j);
  return r;
}

/// Ordered product of a nonempty list of operators.
GradedOperator compose(const std::vector<GradedOperator>& ops);

/// (A (x)_s B)^{a1a2}_{b1b2} = (-1)^{([a2]+[b2])[b1]} A^{a1}_{b1} B^{a2}_{b2}.
template <class E>
OpMatrix<E> supertensor_product(const OpMatrix<E>& a, const OpMatrix<E>& b) {
  if (a.arity() != 1 || b.arity() != 1) throw SpaceError("supertensor_product expects arity 1");
  a.check_compatible(b);
  const auto& s = *a.space();
  const int D = s.dim;
  OpMatrix<E> r(a.space(), 2);
  for (const auto& [ka, xa] : a.entries()) {
    const int a1 = static_cast<int>(a.out_of(ka)), b1 = static_cast<int>(a.in_of(ka));
    for (const auto& [kb, xb] : b.entries()) {
      const int a2 = static_cast<int>(b.out_of(kb)), b2 = static_cast<int>(b.in_of(kb));
      const int sg = parity_sign((s.par(a2) + s.par(b2)) * s.par(b1));
      E x = xa * xb;
      if (sg < 0) x = -x;
      r.add(static_cast<std::uint64_t>(a1 * D + a2), static_cast<std::uint64_t>(b1 * D + b2), x);
    }
  }
  return r;
}

/// str(A) = sum_a (-1)^{[a]} A^a_a.
Scalar supertrace(const GradedOperator& a);

/// Sign rule for an elementary transposition of adjacent index values x, y:
/// hat gives (-eps)(-1)^{[x][y]}, tilde gives (-eps)(-1)^{[x][y]+[x]+[y]}.
enum class SymRule { hat, tilde };

/// Every rearrangement of `idx` together with its symmetrizer sign, built by
/// composing adjacent transpositions. Positions are permuted, so repeated
/// values give repeated sequences. Throws if two decompositions of the same
/// permutation disagree in sign.
std::vector<std::pair<std::vector<int>, int>> graded_symmetrizer_terms(const GradedSpace& s,
                                                                       const std::vector<int>& idx,
                                                                       SymRule rule);

/// Sparse vector on V^{(x)n}.
struct GradedVector {
  SpacePtr space;
  int arity = 1;
  std::map<std::uint64_t, Scalar> components;
  bool is_zero() const { return components.empty(); }
  void add(std::uint64_t i, const Scalar& x);
  friend bool operator==(const GradedVector& a, const GradedVector& b) {
    return a.arity == b.arity && a.components == b.components;
  }
};

/// z_a = eps_{ab} z^b at the given slot (1-based), left action.
GradedVector lower_index(const GradedVector& z, int slot);
/// z^a = eps^{ab} z_b at the given slot.
GradedVector raise_index(const GradedVector& z, int slot);
/// Same contraction on the output index at `slot` of an operator.
GradedOperator lower_index(const GradedOperator& t, int slot);
GradedOperator raise_index(const GradedOperator& t, int slot);

/// The metric as an arity-2 vector: entries eps_{ab} (lower) or eps^{ab} (upper).
GradedVector metric_vector(const SpacePtr& s, bool upper);

/// True when every nonzero entry has even total grading over all indices.
template <class E>
bool is_even(const OpMatrix<E>& a) {
  const auto& s = *a.space();
  for (const auto& [k, x] : a.entries()) {
    const MultiIndex o = a.out_index(k), in = a.in_index(k);
    int p = 0;
    for (int i = 0; i < o.n; ++i) p += s.par(o[i]) + s.par(in[i]);
    if (p & 1) return false;
  }
  return true;
}

enum class Convention { to_basis, to_coordinates };

/// Translates between grading-on-coordinates components R^{a1a2}_{b1b2} and
/// coefficients on the graded matrix units E_{a1}^{b1} (x) E_{a2}^{b2}. Requires
/// an even operator of arity 2 or 3.
GradedOperator convert_convention(const GradedOperator& r, Convention direction);

/// Product of two operators given by coefficients on graded matrix units,
/// using (E (x) F)(E' (x) F') = (-1)^{|F||E'|} EE' (x) FF' slotwise.
GradedOperator graded_basis_compose(const GradedOperator& a, const GradedOperator& b);

}  // namespace ospyb
