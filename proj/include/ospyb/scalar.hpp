#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ospyb {

/// Exact rational number. GMP keeps it canonical (reduced, positive denominator).
using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// Formal variables. Ordered u < v < kappa in the monomial order.
enum class Var : int { u = 0, v = 1, kappa = 2 };
constexpr int kNumVars = 3;

const char* var_name(Var x);

class ScalarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse polynomial in u, v, kappa over the rationals.
///
/// An exponent vector is packed into one 64-bit key: bits 48..63 hold the
/// total degree and then kappa, v, u follow in 16-bit fields. Comparing keys
/// as integers is exactly graded-lex order with u < v < kappa. Terms are kept
/// sorted by decreasing key and never store a zero coefficient.
class MultiPoly {
 public:
  using Key = std::uint64_t;
  using Term = std::pair<Key, Rational>;

  MultiPoly() = default;
  MultiPoly(long c);  // NOLINT(google-explicit-constructor)
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)

  static MultiPoly var(Var x);
  static MultiPoly monomial(const Rational& c, int eu, int ev, int ek);

  static Key pack(int eu, int ev, int ek);
  static int exponent(Key k, Var x);
  static int degree(Key k) { return static_cast<int>(k >> 48); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Leading term under graded lex (the first stored term).
  const Term& leading() const { return terms_.front(); }
  int total_degree() const { return is_zero() ? -1 : degree(terms_.front().first); }
  int degree_in(Var x) const;
  bool has_var(Var x) const { return degree_in(x) > 0; }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned n) const;
  Rational eval(const std::map<Var, Rational>& at) const;
  /// Substitute x := value, keeping the other variables formal.
  MultiPoly substitute(Var x, const Rational& value) const;
  /// Substitute x := p (a polynomial).
  MultiPoly compose(Var x, const MultiPoly& p) const;
  /// Coefficient of x^k, as a polynomial in the remaining variables.
  MultiPoly coeff(Var x, int k) const;

  /// Prints e.g. "u^2*v - 3/2*u"; parse() inverts it exactly.
  std::string str() const;
  static MultiPoly parse(const std::string& text);

  /// Internal: builds from unsorted terms, merging and dropping zeros.
  static MultiPoly from_terms(std::vector<Term> terms);

 private:
  std::vector<Term> terms_;
};

MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b);
/// Greatest common divisor, normalized to leading coefficient 1 (zero if both are zero).
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// Element of Q(u, v, kappa): a reduced fraction with monic denominator.
class Scalar {
 public:
  Scalar() : num_(), den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(MultiPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(const MultiPoly& num, const MultiPoly& den);

  static Scalar var(Var x) { return Scalar(MultiPoly::var(x)); }
  static Scalar u() { return var(Var::u); }
  static Scalar v() { return var(Var::v); }
  static Scalar kappa() { return var(Var::kappa); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Rational eval(const std::map<Var, Rational>& at) const;
  Scalar substitute(Var x, const Rational& value) const;
  Scalar compose(Var x, const Scalar& s) const;

  /// "p" for polynomials, "(p)/(q)" otherwise.
  std::string str() const;
  static Scalar parse(const std::string& text);

 private:
  void canonicalize();
  MultiPoly num_;
  MultiPoly den_;
};

enum class ArithOp { add, sub, mul, div };
Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op);
Rational scalar_eval(const Scalar& a, const std::map<Var, Rational>& at);
inline bool is_identically_zero(const Scalar& a) { return a.is_zero(); }

}  // namespace ospyb
