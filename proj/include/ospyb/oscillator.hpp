#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "ospyb/graded_space.hpp"
#include "ospyb/matalg.hpp"
#include "ospyb/osp.hpp"

namespace ospyb {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AlgebraFamily { oscillator, heisenberg, two_copy_oscillator };

using Monomial = std::vector<std::uint8_t>;

/// Presentation of an algebra by ordered generators g_0 < g_1 < ... with
/// g_i g_j = swap(i,j) g_j g_i + constant(i,j) for i != j. A generator with
/// swap(i,i) = -1 squares to the scalar square(i); otherwise its powers are free.
struct AlgebraSpec {
  SpacePtr space;
  AlgebraFamily family = AlgebraFamily::oscillator;
  int ngen = 0;
  std::vector<std::string> names;
  std::vector<int> parity;
  std::vector<std::vector<int>> swap;
  std::vector<std::vector<Rational>> constant;
  std::vector<Rational> square;

  bool nilpotent_type(int g) const { return swap[static_cast<std::size_t>(g)][static_cast<std::size_t>(g)] < 0; }
  int monomial_parity(const Monomial& m) const;
  int monomial_degree(const Monomial& m) const;

  /// Structure constants of the product of two normal-ordered monomials.
  const std::map<Monomial, Rational>& product(const Monomial& a, const Monomial& b) const;

 private:
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<Monomial, Monomial>, std::map<Monomial, Rational>> cache_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

/// c^a with c^a c^b + eps (-1)^{[a][b]} c^b c^a = eps^{ab}; generator a is c^{a+1}.
AlgebraPtr oscillator_algebra(const SpacePtr& s);
/// x_a (generators 0..D-1) and d_a (D..2D-1) with the graded canonical relations.
AlgebraPtr heisenberg_algebra(const SpacePtr& s);
/// Two graded-commuting copies c_1^a (0..D-1) and c_2^a (D..2D-1).
AlgebraPtr two_copy_oscillator_algebra(const SpacePtr& s);

/// Element of an AlgebraSpec in PBW normal order. A default-constructed
/// element is the zero of every algebra.
class NOE {
 public:
  NOE() = default;
  explicit NOE(AlgebraPtr spec, const Scalar& c = Scalar(0));
  static NOE generator(const AlgebraPtr& spec, int g);
  static NOE from_monomial(const AlgebraPtr& spec, Monomial m, const Scalar& c);

  const AlgebraPtr& spec() const { return spec_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of the empty monomial.
  Scalar scalar_part() const;
  /// Grading; throws AlgebraError on inhomogeneous input. Zero has grading 0.
  int parity() const;
  int max_degree() const;

  NOE operator-() const;
  NOE& operator+=(const NOE& o);
  NOE& operator-=(const NOE& o);
  friend NOE operator+(NOE a, const NOE& b) { return a += b; }
  friend NOE operator-(NOE a, const NOE& b) { return a -= b; }
  friend NOE operator*(const NOE& a, const NOE& b);
  friend NOE operator*(const Scalar& s, const NOE& a);
  friend bool operator==(const NOE& a, const NOE& b) { return a.terms_ == b.terms_; }

  /// Applies f to every coefficient.
  template <class F>
  NOE map_coefficients(F&& f) const {
    NOE r;
    r.spec_ = spec_;
    for (const auto& [m, c] : terms_) r.add(m, f(c));
    return r;
  }

  /// "coef*c[1]*c[3]^2 + ..." in PBW order; "0" for zero.
  std::string str() const;
  static NOE parse(const AlgebraPtr& spec, const std::string& text);

  void add(const Monomial& m, const Scalar& c);

 private:
  void adopt(const AlgebraPtr& s);
  AlgebraPtr spec_;
  std::map<Monomial, Scalar> terms_;
};

inline NOE normal_product(const NOE& a, const NOE& b) { return a * b; }

/// [a, b]_pm for homogeneous elements.
NOE supercommutator(const NOE& a, const NOE& b);

/// (1/k!) sum_sigma (-eps)^{p(sigma)} (-1)^{sigma-sign} c^{a_sigma(1)} ... c^{a_sigma(k)}
/// for oscillator indices `idx`; `copy` selects c_1 or c_2 in the two-copy algebra.
NOE supersymmetrize(const AlgebraPtr& spec, const std::vector<int>& idx, SymRule rule, int copy = 0);

/// c^a (copy 0/1) and c_a = eps_{ab} c^b.
NOE osc_upper(const AlgebraPtr& spec, int a, int copy = 0);
NOE osc_lower(const AlgebraPtr& spec, int a, int copy = 0);

/// F^{ab} = eps (-1)^{[b]} c^{(a} c^{b)} stored at (a, b).
OpMatrix<NOE> build_F_upper(const AlgebraPtr& spec, int copy = 0);
/// F^a_b = eps_{bc} F^{ac}.
GeneratorMatrix<NOE> build_F(const AlgebraPtr& spec, int copy = 0);

/// M_{ab} = x_a d_b - eps (-1)^{[a][b]+[a]+[b]} x_b d_a, stored at (a, b).
OpMatrix<NOE> build_M_lower(const AlgebraPtr& spec);
/// M^a_b = eps^{ac} M_{cb}.
GeneratorMatrix<NOE> build_M(const AlgebraPtr& spec);
/// H = eps^{bc} x_b d_c, x^2 = eps^{ba} x_a x_b, d^2 = eps^{ab} d_b d_a (d^b d_b).
NOE euler_operator(const AlgebraPtr& spec);
NOE x_square(const AlgebraPtr& spec);
NOE d_square(const AlgebraPtr& spec);

// ----------------------------------------------------------- modules

enum class ModuleKind { clifford_spinor, polynomial, truncated_fock };

/// Induced module A / A{annihilators} on monomials in the creators, with a
/// working block of states: all states, or a fixed polynomial degree.
struct FiniteModule {
  AlgebraPtr spec;
  ModuleKind kind = ModuleKind::clifford_spinor;
  int parameter = 0;
  std::vector<int> creators;
  std::vector<int> annihilators;
  std::vector<Monomial> basis;
  std::map<Monomial, int> index;
  std::vector<int> block;
  std::vector<int> block_position;  // basis index -> position in block, or -1
  std::vector<int> state_parity;    // per block state
  std::vector<bool> at_cap;         // per basis state

  int dim() const { return static_cast<int>(block.size()); }
};

/// clifford_spinor: pure Clifford algebra (M = 0 with eps = +1, or N = 0 with
/// eps = -1) on a metric whose two halves are isotropic (see split_space);
/// polynomial: Heisenberg algebra, degree `parameter` polynomials in x;
/// truncated_fock: oscillators with bosonic occupation capped at `parameter`.
FiniteModule finite_module(const AlgebraPtr& spec, ModuleKind kind, int parameter = 0);

/// The space (N|M, eps) with the symmetric block written in hyperbolic pairs
/// eps_{i,i+h} = eps_{i+h,i} = 1, which admits rational spinor modules.
SpacePtr split_space(int N, int M, int eps);

/// Matrix of an element on the module's working block. Throws AlgebraError if
/// the element leaves the block or the truncation; `overflow` (if given)
/// collects columns that hit the cap instead of throwing.
MatAlg represent(const FiniteModule& mod, const NOE& e, std::set<int>* overflow = nullptr);
/// Matrix of one generator on the full basis, dropping images beyond the cap.
MatAlg generator_matrix(const FiniteModule& mod, int g);
/// Checks every defining relation with generator matrices on the states where
/// no cap is touched; returns the failures and the number of states skipped.
struct ModuleRelationReport {
  std::vector<std::string> failures;
  int skipped_states = 0;
};
ModuleRelationReport verify_module_relations(const FiniteModule& mod);

GeneratorMatrix<MatAlg> represent_generators(const GeneratorMatrix<NOE>& g, const FiniteModule& mod);

// ------------------------------------------------------------ traces

/// Coefficient of Tr 1 in Tr(c^a c^b) = eps^{ab}.
Rational trace2(const GradedSpace& s, int a, int b);
/// (1/2)(eps^{ab} eps^{cd} - eps (-1)^{[a][b]} eps^{ac} eps^{bd} + eps^{ad} eps^{bc}).
Rational trace4(const GradedSpace& s, int a, int b, int c, int d);
/// Linear functional tau with tau(1) = 1 and Wick contraction
/// tau(c^a c^b) = eps^{ab}/2 on words; applied to an oscillator element of
/// even degree. trace2 and trace4 equal 2 tau on the same words.
Scalar trace_even(const NOE& e);
/// tau of the word c^{w_1} ... c^{w_k} (oscillator indices).
Rational trace_word(const GradedSpace& s, const std::vector<int>& word);

}  // namespace ospyb
