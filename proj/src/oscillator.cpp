#include "ospyb/oscillator.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace ospyb {

namespace {

std::shared_ptr<AlgebraSpec> blank_spec(const SpacePtr& s, AlgebraFamily family, int ngen) {
  auto p = std::make_shared<AlgebraSpec>();
  AlgebraSpec& a = *p;
  a.space = s;
  a.family = family;
  a.ngen = ngen;
  a.names.resize(static_cast<std::size_t>(ngen));
  a.parity.resize(static_cast<std::size_t>(ngen));
  a.swap.assign(static_cast<std::size_t>(ngen), std::vector<int>(static_cast<std::size_t>(ngen), 1));
  a.constant.assign(static_cast<std::size_t>(ngen), std::vector<Rational>(static_cast<std::size_t>(ngen)));
  a.square.assign(static_cast<std::size_t>(ngen), Rational(0));
  return p;
}

// Sets g_i g_j = s g_j g_i + c and the reversed relation.
void relate(AlgebraSpec& a, int i, int j, int s, const Rational& c) {
  const auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
  a.swap[I][J] = s;
  a.constant[I][J] = c;
  a.swap[J][I] = s;
  a.constant[J][I] = -s * c;
}

void set_self(AlgebraSpec& a, int i, int s, const Rational& sq) {
  const auto I = static_cast<std::size_t>(i);
  a.swap[I][I] = s;
  a.square[I] = s < 0 ? sq : Rational(0);
}

// Oscillator relations for generators offset..offset+D-1.
void oscillator_block(AlgebraSpec& a, int offset, const std::string& prefix) {
  const auto& s = *a.space;
  for (int x = 0; x < s.dim; ++x) {
    a.names[static_cast<std::size_t>(offset + x)] = prefix + "[" + std::to_string(x + 1) + "]";
    a.parity[static_cast<std::size_t>(offset + x)] = s.par(x);
    const int self = -s.eps * parity_sign(s.par(x));
    if (self > 0 && s.ginv(x, x) != 0) throw AlgebraError("bosonic oscillator with nonzero self-pairing");
    set_self(a, offset + x, self, s.ginv(x, x) / 2);
    for (int y = 0; y < x; ++y)
      relate(a, offset + x, offset + y, -s.eps * parity_sign(s.par(x) * s.par(y)), s.ginv(x, y));
  }
}

Monomial unit(int ngen, int g) {
  Monomial m(static_cast<std::size_t>(ngen), 0);
  m[static_cast<std::size_t>(g)] = 1;
  return m;
}

using RMap = std::map<Monomial, Rational>;

void radd(RMap& r, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = r.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) r.erase(it);
  }
}

// Normal-ordered form of m * g_g.
RMap times_generator(const AlgebraSpec& a, const Monomial& m, int g) {
  int last = -1;
  for (int i = a.ngen - 1; i >= 0; --i)
    if (m[static_cast<std::size_t>(i)]) {
      last = i;
      break;
    }
  RMap out;
  if (last < g) {
    Monomial n = m;
    ++n[static_cast<std::size_t>(g)];
    out.emplace(std::move(n), 1);
    return out;
  }
  if (last == g) {
    Monomial n = m;
    if (!a.nilpotent_type(g)) {
      if (n[static_cast<std::size_t>(g)] == 255) throw AlgebraError("exponent overflow");
      ++n[static_cast<std::size_t>(g)];
      out.emplace(std::move(n), 1);
    } else {
      --n[static_cast<std::size_t>(g)];
      radd(out, n, a.square[static_cast<std::size_t>(g)]);
    }
    return out;
  }
  Monomial rest = m;
  --rest[static_cast<std::size_t>(last)];
  const auto L = static_cast<std::size_t>(last), G = static_cast<std::size_t>(g);
  radd(out, rest, a.constant[L][G]);
  for (const auto& [n, c] : times_generator(a, rest, g))
    for (const auto& [n2, c2] : times_generator(a, n, last)) radd(out, n2, c * c2 * a.swap[L][G]);
  return out;
}

}  // namespace

int AlgebraSpec::monomial_parity(const Monomial& m) const {
  int p = 0;
  for (int i = 0; i < ngen; ++i) p += m[static_cast<std::size_t>(i)] * parity[static_cast<std::size_t>(i)];
  return p & 1;
}

int AlgebraSpec::monomial_degree(const Monomial& m) const {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

const std::map<Monomial, Rational>& AlgebraSpec::product(const Monomial& a, const Monomial& b) const {
  const auto key = std::make_pair(a, b);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  RMap cur{{a, Rational(1)}};
  for (int g = 0; g < ngen; ++g)
    for (int e = 0; e < b[static_cast<std::size_t>(g)]; ++e) {
      RMap next;
      for (const auto& [m, c] : cur)
        for (const auto& [n, c2] : times_generator(*this, m, g)) radd(next, n, c * c2);
      cur = std::move(next);
    }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.emplace(key, std::move(cur)).first->second;
}

AlgebraPtr oscillator_algebra(const SpacePtr& s) {
  auto a = blank_spec(s, AlgebraFamily::oscillator, s->dim);
  oscillator_block(*a, 0, "c");
  return a;
}

AlgebraPtr two_copy_oscillator_algebra(const SpacePtr& s) {
  const int D = s->dim;
  auto a = blank_spec(s, AlgebraFamily::two_copy_oscillator, 2 * D);
  oscillator_block(*a, 0, "c1");
  oscillator_block(*a, D, "c2");
  for (int x = 0; x < D; ++x)
    for (int y = 0; y < D; ++y) relate(*a, D + y, x, parity_sign(s->par(x) * s->par(y)), Rational(0));
  return a;
}

AlgebraPtr heisenberg_algebra(const SpacePtr& s) {
  const int D = s->dim;
  auto a = blank_spec(s, AlgebraFamily::heisenberg, 2 * D);
  for (int x = 0; x < D; ++x) {
    a->names[static_cast<std::size_t>(x)] = "x[" + std::to_string(x + 1) + "]";
    a->names[static_cast<std::size_t>(D + x)] = "d[" + std::to_string(x + 1) + "]";
    a->parity[static_cast<std::size_t>(x)] = a->parity[static_cast<std::size_t>(D + x)] = s->par(x);
    const int self = s->eps * parity_sign(s->par(x));
    set_self(*a, x, self, 0);
    set_self(*a, D + x, self, 0);
  }
  for (int x = 0; x < D; ++x)
    for (int y = 0; y < D; ++y) {
      const int sg = s->eps * parity_sign(s->par(x) * s->par(y));
      if (y < x) {
        relate(*a, x, y, sg, 0);
        relate(*a, D + x, D + y, sg, 0);
      }
      relate(*a, D + x, y, sg, s->g(x, y));
    }
  return a;
}

// ------------------------------------------------------------------ NOE

NOE::NOE(AlgebraPtr spec, const Scalar& c) : spec_(std::move(spec)) {
  if (!spec_) throw AlgebraError("NOE needs an algebra");
  add(Monomial(static_cast<std::size_t>(spec_->ngen), 0), c);
}

NOE NOE::generator(const AlgebraPtr& spec, int g) {
  if (g < 0 || g >= spec->ngen) throw AlgebraError("generator index out of range");
  return from_monomial(spec, unit(spec->ngen, g), Scalar(1));
}

NOE NOE::from_monomial(const AlgebraPtr& spec, Monomial m, const Scalar& c) {
  if (static_cast<int>(m.size()) != spec->ngen) throw AlgebraError("monomial length mismatch");
  NOE r;
  r.spec_ = spec;
  for (int g = 0; g < spec->ngen; ++g)
    if (spec->nilpotent_type(g) && m[static_cast<std::size_t>(g)] > 1)
      throw AlgebraError("monomial is not normal ordered: " + spec->names[static_cast<std::size_t>(g)] + "^2");
  r.add(m, c);
  return r;
}

void NOE::add(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void NOE::adopt(const AlgebraPtr& s) {
  if (!s) return;
  if (!spec_) {
    spec_ = s;
    return;
  }
  if (spec_ != s) throw AlgebraError("elements of different algebras");
}

Scalar NOE::scalar_part() const {
  if (!spec_) return Scalar(0);
  auto it = terms_.find(Monomial(static_cast<std::size_t>(spec_->ngen), 0));
  return it == terms_.end() ? Scalar(0) : it->second;
}

int NOE::parity() const {
  int p = -1;
  for (const auto& [m, c] : terms_) {
    const int q = spec_->monomial_parity(m);
    if (p >= 0 && p != q) throw AlgebraError("element is not homogeneous");
    p = q;
  }
  return p < 0 ? 0 : p;
}

int NOE::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, spec_->monomial_degree(m));
  return d;
}

NOE NOE::operator-() const {
  NOE r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

NOE& NOE::operator+=(const NOE& o) {
  adopt(o.spec_);
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

NOE& NOE::operator-=(const NOE& o) {
  adopt(o.spec_);
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

NOE operator*(const NOE& a, const NOE& b) {
  NOE r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.spec_ != b.spec_) throw AlgebraError("elements of different algebras");
  r.spec_ = a.spec_;
  // Group by structure constant first so each Scalar product is formed once.
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      const auto& prod = a.spec_->product(ma, mb);
      if (prod.empty()) continue;
      const Scalar c = ca * cb;
      for (const auto& [m, q] : prod) r.add(m, q == 1 ? c : Scalar(q) * c);
    }
  return r;
}

NOE operator*(const Scalar& s, const NOE& a) {
  if (s.is_zero()) return NOE();
  NOE r = a;
  for (auto& [m, c] : r.terms_) c = s * c;
  return r;
}

std::string NOE::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (int g = 0; g < spec_->ngen; ++g) {
      const int e = m[static_cast<std::size_t>(g)];
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += spec_->names[static_cast<std::size_t>(g)];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    std::string coef;
    bool negative = false;
    if (c.is_constant()) {
      Rational q = c.constant_value();
      if (q < 0) {
        negative = true;
        q = -q;
      }
      coef = (q == 1 && !mono.empty()) ? "" : to_string(q);
    } else {
      coef = "(" + c.str() + ")";
    }
    std::string term = coef;
    if (!mono.empty()) term += (coef.empty() ? "" : "*") + mono;
    if (first)
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

namespace {

class NOEParser {
 public:
  NOEParser(const AlgebraPtr& spec, const std::string& text) : spec_(spec), t_(text) {
    for (int g = 0; g < spec->ngen; ++g) names_[spec->names[static_cast<std::size_t>(g)]] = g;
  }

  NOE run() {
    NOE r = expr();
    skip();
    if (p_ != t_.size()) fail("unexpected '" + std::string(1, t_[p_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw AlgebraError("cannot parse element at position " + std::to_string(p_) + ": " + what);
  }
  void skip() {
    while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < t_.size() && t_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  NOE constant(const Scalar& s) const { return NOE(spec_, s); }

  NOE expr() {
    NOE r;
    bool any = false;
    bool neg = eat('-');
    if (!neg) eat('+');
    while (true) {
      NOE t = term();
      r += neg ? -t : t;
      any = true;
      if (eat('+'))
        neg = false;
      else if (eat('-'))
        neg = true;
      else
        break;
    }
    if (!any) fail("empty expression");
    return r;
  }

  NOE term() {
    NOE r = factor();
    while (true) {
      if (eat('*')) {
        r = r * factor();
      } else if (eat('/')) {
        const NOE d = factor();
        if (d.max_degree() > 0 || d.is_zero()) fail("division by a non-scalar or zero");
        r = (Scalar(1) / d.scalar_part()) * r;
      } else {
        return r;
      }
    }
  }

  NOE factor() {
    NOE base = atom();
    if (eat('^')) {
      skip();
      const std::size_t s = p_;
      while (p_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p_]))) ++p_;
      if (s == p_) fail("exponent expected");
      const int e = std::stoi(t_.substr(s, p_ - s));
      NOE r = constant(Scalar(1));
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  NOE atom() {
    skip();
    if (p_ >= t_.size()) fail("unexpected end");
    const char c = t_[p_];
    if (c == '(') {
      ++p_;
      NOE r = expr();
      if (!eat(')')) fail("')' expected");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t s = p_;
      while (p_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p_]))) ++p_;
      return constant(Scalar(Rational(t_.substr(s, p_ - s))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t s = p_;
      while (p_ < t_.size() && std::isalnum(static_cast<unsigned char>(t_[p_]))) ++p_;
      const std::string id = t_.substr(s, p_ - s);
      if (id == "u") return constant(Scalar::u());
      if (id == "v") return constant(Scalar::v());
      if (id == "kappa") return constant(Scalar::kappa());
      if (!eat('[')) fail("unknown symbol '" + id + "'");
      skip();
      const std::size_t ns = p_;
      while (p_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p_]))) ++p_;
      const std::string name = id + "[" + t_.substr(ns, p_ - ns) + "]";
      if (!eat(']')) fail("']' expected");
      auto it = names_.find(name);
      if (it == names_.end()) fail("unknown generator " + name);
      return NOE::generator(spec_, it->second);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  AlgebraPtr spec_;
  std::string t_;
  std::size_t p_ = 0;
  std::map<std::string, int> names_;
};

}  // namespace

NOE NOE::parse(const AlgebraPtr& spec, const std::string& text) { return NOEParser(spec, text).run(); }

NOE supercommutator(const NOE& a, const NOE& b) { return supercommutator(a, a.parity(), b, b.parity()); }

// ------------------------------------------------------------- builders

namespace {

int copy_offset(const AlgebraSpec& a, int copy) {
  if (a.family == AlgebraFamily::heisenberg) throw AlgebraError("oscillator generators need an oscillator algebra");
  if (copy < 0 || copy > (a.family == AlgebraFamily::two_copy_oscillator ? 1 : 0))
    throw AlgebraError("no such oscillator copy");
  return copy * a.space->dim;
}

}  // namespace

NOE osc_upper(const AlgebraPtr& spec, int a, int copy) {
  return NOE::generator(spec, copy_offset(*spec, copy) + a);
}

NOE osc_lower(const AlgebraPtr& spec, int a, int copy) {
  NOE r;
  for (const auto& [b, w] : spec->space->lower_rows[static_cast<std::size_t>(a)])
    r += Scalar(w) * osc_upper(spec, b, copy);
  return r;
}

NOE supersymmetrize(const AlgebraPtr& spec, const std::vector<int>& idx, SymRule rule, int copy) {
  const int off = copy_offset(*spec, copy);
  Rational fact = 1;
  for (std::size_t i = 2; i <= idx.size(); ++i) fact *= static_cast<long>(i);
  NOE r;
  for (const auto& [word, sign] : graded_symmetrizer_terms(*spec->space, idx, rule)) {
    NOE t(spec, Scalar(Rational(sign) / fact));
    for (int a : word) t = t * NOE::generator(spec, off + a);
    r += t;
  }
  return r;
}

OpMatrix<NOE> build_F_upper(const AlgebraPtr& spec, int copy) {
  const auto& s = spec->space;
  OpMatrix<NOE> F(s, 1);
  for (int a = 0; a < s->dim; ++a)
    for (int b = 0; b < s->dim; ++b)
      F.add(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b),
            Scalar(s->eps * parity_sign(s->par(b))) * supersymmetrize(spec, {a, b}, SymRule::hat, copy));
  return F;
}

GeneratorMatrix<NOE> build_F(const AlgebraPtr& spec, int copy) {
  const auto& s = spec->space;
  const auto Fu = build_F_upper(spec, copy);
  GeneratorMatrix<NOE> g{OpMatrix<NOE>(s, 1), NOE(spec, Scalar(1)), GeneratorVariant::abstract};
  for (const auto& [k, x] : Fu.entries()) {
    const int a = static_cast<int>(Fu.out_of(k)), c = static_cast<int>(Fu.in_of(k));
    for (int b = 0; b < s->dim; ++b)
      if (s->g(b, c) != 0) g.G.add(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b), Scalar(s->g(b, c)) * x);
  }
  return g;
}

OpMatrix<NOE> build_M_lower(const AlgebraPtr& spec) {
  if (spec->family != AlgebraFamily::heisenberg) throw AlgebraError("M needs the Heisenberg algebra");
  const auto& s = spec->space;
  const int D = s->dim;
  auto x = [&](int a) { return NOE::generator(spec, a); };
  auto d = [&](int a) { return NOE::generator(spec, D + a); };
  OpMatrix<NOE> M(s, 1);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      const int pa = s->par(a), pb = s->par(b);
      M.add(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b),
            x(a) * d(b) - Scalar(s->eps * parity_sign(pa * pb + pa + pb)) * (x(b) * d(a)));
    }
  return M;
}

GeneratorMatrix<NOE> build_M(const AlgebraPtr& spec) {
  const auto& s = spec->space;
  const auto Ml = build_M_lower(spec);
  GeneratorMatrix<NOE> g{OpMatrix<NOE>(s, 1), NOE(spec, Scalar(1)), GeneratorVariant::abstract};
  for (const auto& [k, m] : Ml.entries()) {
    const int c = static_cast<int>(Ml.out_of(k)), b = static_cast<int>(Ml.in_of(k));
    for (int a = 0; a < s->dim; ++a)
      if (s->ginv(a, c) != 0) g.G.add(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b), Scalar(s->ginv(a, c)) * m);
  }
  return g;
}

NOE euler_operator(const AlgebraPtr& spec) {
  const auto& s = *spec->space;
  NOE r;
  for (int b = 0; b < s.dim; ++b)
    for (const auto& [c, w] : s.upper_rows[static_cast<std::size_t>(b)])
      r += Scalar(w) * (NOE::generator(spec, b) * NOE::generator(spec, s.dim + c));
  return r;
}

NOE x_square(const AlgebraPtr& spec) {
  const auto& s = *spec->space;
  NOE r;
  for (int b = 0; b < s.dim; ++b)
    for (const auto& [a, w] : s.upper_rows[static_cast<std::size_t>(b)])
      r += Scalar(w) * (NOE::generator(spec, a) * NOE::generator(spec, b));
  return r;
}

NOE d_square(const AlgebraPtr& spec) {
  const auto& s = *spec->space;
  NOE r;
  for (int a = 0; a < s.dim; ++a)
    for (const auto& [b, w] : s.upper_rows[static_cast<std::size_t>(a)])
      r += Scalar(w) * (NOE::generator(spec, s.dim + b) * NOE::generator(spec, s.dim + a));
  return r;
}

// -------------------------------------------------------------- modules

SpacePtr split_space(int N, int M, int eps) {
  const int D = N + M;
  const int sym_lo = eps > 0 ? 0 : N, sym_n = eps > 0 ? N : M;
  const int asym_lo = eps > 0 ? N : 0, asym_n = eps > 0 ? M : N;
  if (sym_n % 2) throw SpaceError("split metric needs an even symmetric block");
  if (asym_n % 2) throw SpaceError("antisymmetric block must have even dimension");
  std::vector<std::vector<Rational>> g(static_cast<std::size_t>(D), std::vector<Rational>(static_cast<std::size_t>(D)));
  auto set = [&](int i, int j, int x) { g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x; };
  const int hs = sym_n / 2, ha = asym_n / 2;
  for (int i = 0; i < hs; ++i) {
    set(sym_lo + i, sym_lo + hs + i, 1);
    set(sym_lo + hs + i, sym_lo + i, 1);
  }
  for (int i = 0; i < ha; ++i) {
    set(asym_lo + i, asym_lo + ha + i, 1);
    set(asym_lo + ha + i, asym_lo + i, -1);
  }
  return make_space_with_metric(N, M, eps, g);
}

namespace {

bool isotropic(const GradedSpace& s, const std::vector<int>& set) {
  for (int a : set)
    for (int b : set)
      if (s.ginv(a, b) != 0) return false;
  return true;
}

// Splits `gens` (oscillator indices) into creator and annihilator halves.
bool split_halves(const GradedSpace& s, const std::vector<int>& gens, std::vector<int>& cre, std::vector<int>& ann) {
  if (gens.size() % 2) return false;
  const std::vector<int> lo(gens.begin(), gens.begin() + static_cast<long>(gens.size() / 2));
  const std::vector<int> hi(gens.begin() + static_cast<long>(gens.size() / 2), gens.end());
  if (!isotropic(s, lo) || !isotropic(s, hi)) return false;
  cre.insert(cre.end(), lo.begin(), lo.end());
  ann.insert(ann.end(), hi.begin(), hi.end());
  return true;
}

int free_degree(const AlgebraSpec& a, const Monomial& m) {
  int d = 0;
  for (int g = 0; g < a.ngen; ++g)
    if (!a.nilpotent_type(g)) d += m[static_cast<std::size_t>(g)];
  return d;
}

// All creator monomials with `weight` at most `cap` (cap < 0: no bound needed).
void enumerate(const AlgebraSpec& a, const std::vector<int>& cre, std::size_t i, Monomial& m, int cap,
               const std::function<int(const Monomial&)>& weight, std::vector<Monomial>& out) {
  if (i == cre.size()) {
    out.push_back(m);
    return;
  }
  const int g = cre[i];
  const int top = a.nilpotent_type(g) ? 1 : cap;
  for (int e = 0; e <= top; ++e) {
    m[static_cast<std::size_t>(g)] = static_cast<std::uint8_t>(e);
    if (weight(m) > cap) break;
    enumerate(a, cre, i + 1, m, cap, weight, out);
  }
  m[static_cast<std::size_t>(g)] = 0;
}

// g acting on the state |m>, unreduced (may leave the basis).
RMap act(const FiniteModule& mod, int g, const Monomial& m) {
  const AlgebraSpec& a = *mod.spec;
  const bool creator = std::find(mod.creators.begin(), mod.creators.end(), g) != mod.creators.end();
  if (creator) return a.product(unit(a.ngen, g), m);
  RMap out;
  int h = -1;
  for (int i = 0; i < a.ngen; ++i)
    if (m[static_cast<std::size_t>(i)]) {
      h = i;
      break;
    }
  if (h < 0) return out;
  Monomial rest = m;
  --rest[static_cast<std::size_t>(h)];
  const auto G = static_cast<std::size_t>(g), H = static_cast<std::size_t>(h);
  radd(out, rest, a.constant[G][H]);
  for (const auto& [n, c] : act(mod, g, rest))
    for (const auto& [n2, c2] : a.product(unit(a.ngen, h), n)) radd(out, n2, c * c2 * a.swap[G][H]);
  return out;
}

}  // namespace

FiniteModule finite_module(const AlgebraPtr& spec, ModuleKind kind, int parameter) {
  FiniteModule mod;
  mod.spec = spec;
  mod.kind = kind;
  mod.parameter = parameter;
  const AlgebraSpec& a = *spec;
  const GradedSpace& s = *a.space;
  std::function<int(const Monomial&)> weight;
  int cap = 0;
  switch (kind) {
    case ModuleKind::clifford_spinor: {
      if (a.family != AlgebraFamily::oscillator) throw AlgebraError("spinor module needs the oscillator algebra");
      std::vector<int> all;
      for (int g = 0; g < a.ngen; ++g) {
        if (!a.nilpotent_type(g)) throw AlgebraError("spinor module needs a purely Clifford algebra");
        all.push_back(g);
      }
      if (!split_halves(s, all, mod.creators, mod.annihilators))
        throw AlgebraError("no rational spinor module for this metric; use split_space");
      weight = [](const Monomial&) { return 0; };
      break;
    }
    case ModuleKind::polynomial: {
      if (a.family != AlgebraFamily::heisenberg) throw AlgebraError("polynomial module needs the Heisenberg algebra");
      if (parameter < 0) throw AlgebraError("degree must be non-negative");
      for (int x = 0; x < s.dim; ++x) {
        mod.creators.push_back(x);
        mod.annihilators.push_back(s.dim + x);
      }
      weight = [&a](const Monomial& m) { return a.monomial_degree(m); };
      cap = parameter;
      break;
    }
    case ModuleKind::truncated_fock: {
      if (a.family != AlgebraFamily::oscillator) throw AlgebraError("Fock module needs the oscillator algebra");
      if (parameter < 1) throw AlgebraError("occupation cap must be positive");
      std::vector<int> cliff, bos;
      for (int g = 0; g < a.ngen; ++g) (a.nilpotent_type(g) ? cliff : bos).push_back(g);
      if (!split_halves(s, bos, mod.creators, mod.annihilators))
        throw AlgebraError("bosonic oscillators need isotropic halves");
      if (!split_halves(s, cliff, mod.creators, mod.annihilators))
        mod.creators.insert(mod.creators.end(), cliff.begin(), cliff.end());
      std::sort(mod.creators.begin(), mod.creators.end());
      weight = [&a](const Monomial& m) { return free_degree(a, m); };
      cap = parameter;
      break;
    }
  }
  Monomial m(static_cast<std::size_t>(a.ngen), 0);
  enumerate(a, mod.creators, 0, m, cap, weight, mod.basis);
  std::sort(mod.basis.begin(), mod.basis.end(), [&](const Monomial& x, const Monomial& y) {
    const int dx = a.monomial_degree(x), dy = a.monomial_degree(y);
    return dx != dy ? dx < dy : x > y;
  });
  mod.block_position.assign(mod.basis.size(), -1);
  for (std::size_t i = 0; i < mod.basis.size(); ++i) {
    mod.index[mod.basis[i]] = static_cast<int>(i);
    const int w = weight(mod.basis[i]);
    mod.at_cap.push_back(kind != ModuleKind::clifford_spinor && w == cap);
    const bool in_block = kind != ModuleKind::polynomial || w == cap;
    if (in_block) {
      mod.block_position[i] = static_cast<int>(mod.block.size());
      mod.block.push_back(static_cast<int>(i));
      mod.state_parity.push_back(a.monomial_parity(mod.basis[i]));
    }
  }
  return mod;
}

MatAlg represent(const FiniteModule& mod, const NOE& e, std::set<int>* overflow) {
  MatAlg out(mod.dim());
  if (e.is_zero()) return out;
  if (e.spec() != mod.spec) throw AlgebraError("element and module belong to different algebras");
  const AlgebraSpec& a = *mod.spec;
  for (int col = 0; col < mod.dim(); ++col) {
    const Monomial& state = mod.basis[static_cast<std::size_t>(mod.block[static_cast<std::size_t>(col)])];
    std::map<int, Scalar> column;
    bool over = false;
    for (const auto& [mono, coeff] : e.terms()) {
      RMap vec{{state, Rational(1)}};
      for (int g = a.ngen - 1; g >= 0 && !vec.empty() && !over; --g)
        for (int k = 0; k < mono[static_cast<std::size_t>(g)] && !vec.empty() && !over; ++k) {
          RMap next;
          for (const auto& [st, c] : vec)
            for (const auto& [st2, c2] : act(mod, g, st)) {
              if (!mod.index.count(st2)) {
                over = true;
                break;
              }
              radd(next, st2, c * c2);
            }
          vec = std::move(next);
        }
      if (over) break;
      for (const auto& [st, c] : vec) {
        const int pos = mod.block_position[static_cast<std::size_t>(mod.index.at(st))];
        if (pos < 0) throw AlgebraError("element does not preserve the module block");
        auto [it, fresh] = column.emplace(pos, coeff * Scalar(c));
        if (!fresh) it->second += coeff * Scalar(c);
      }
    }
    if (over) {
      if (!overflow) throw AlgebraError("element leaves the truncated module");
      overflow->insert(col);
      continue;
    }
    for (const auto& [row, x] : column) out.add(row, col, x);
  }
  return out;
}

MatAlg generator_matrix(const FiniteModule& mod, int g) {
  const int n = static_cast<int>(mod.basis.size());
  MatAlg out(n);
  for (int col = 0; col < n; ++col)
    for (const auto& [st, c] : act(mod, g, mod.basis[static_cast<std::size_t>(col)])) {
      auto it = mod.index.find(st);
      if (it != mod.index.end()) out.add(it->second, col, Scalar(c));
    }
  return out;
}

ModuleRelationReport verify_module_relations(const FiniteModule& mod) {
  const AlgebraSpec& a = *mod.spec;
  ModuleRelationReport rep;
  const int n = static_cast<int>(mod.basis.size());
  std::vector<int> safe;
  for (int i = 0; i < n; ++i) {
    if (mod.at_cap[static_cast<std::size_t>(i)])
      ++rep.skipped_states;
    else
      safe.push_back(i);
  }
  std::vector<MatAlg> gm;
  for (int g = 0; g < a.ngen; ++g) gm.push_back(generator_matrix(mod, g));
  auto column_zero = [&](const MatAlg& m) {
    for (int r = 0; r < m.size(); ++r)
      for (int c : safe)
        if (m.find(r, c)) return false;
    return true;
  };
  const MatAlg one = MatAlg::identity(n);
  for (int i = 0; i < a.ngen; ++i)
    for (int j = 0; j < a.ngen; ++j) {
      const auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
      MatAlg r;
      if (i != j)
        r = gm[I] * gm[J] - Scalar(a.swap[I][J]) * (gm[J] * gm[I]) - Scalar(a.constant[I][J]) * one;
      else if (a.nilpotent_type(i))
        r = gm[I] * gm[I] - Scalar(a.square[I]) * one;
      else
        continue;
      if (!column_zero(r)) rep.failures.push_back(a.names[I] + " " + a.names[J]);
    }
  return rep;
}

GeneratorMatrix<MatAlg> represent_generators(const GeneratorMatrix<NOE>& g, const FiniteModule& mod) {
  GeneratorMatrix<MatAlg> out{OpMatrix<MatAlg>(g.space(), 1), MatAlg::identity(mod.dim()), g.variant};
  for (const auto& [k, x] : g.G.entries()) out.G.add(g.G.out_of(k), g.G.in_of(k), represent(mod, x));
  return out;
}

// --------------------------------------------------------------- traces

Rational trace2(const GradedSpace& s, int a, int b) { return s.ginv(a, b); }

Rational trace4(const GradedSpace& s, int a, int b, int c, int d) {
  return (s.ginv(a, b) * s.ginv(c, d) -
          s.eps * parity_sign(s.par(a) * s.par(b)) * s.ginv(a, c) * s.ginv(b, d) +
          s.ginv(a, d) * s.ginv(b, c)) /
         2;
}

Rational trace_word(const GradedSpace& s, const std::vector<int>& word) {
  if (word.empty()) return 1;
  if (word.size() % 2) return 0;
  Rational total = 0;
  const int a = word[0];
  for (std::size_t j = 1; j < word.size(); ++j) {
    const int b = word[j];
    if (s.ginv(a, b) == 0) continue;
    // Sign of moving c^b left past c^{w_2} ... c^{w_{j-1}}.
    int sign = 1;
    std::vector<int> rest;
    for (std::size_t k = 1; k < word.size(); ++k) {
      if (k == j) continue;
      if (k < j) sign *= -s.eps * parity_sign(s.par(b) * s.par(word[k]));
      rest.push_back(word[k]);
    }
    total += sign * s.ginv(a, b) / 2 * trace_word(s, rest);
  }
  return total;
}

Scalar trace_even(const NOE& e) {
  Scalar r;
  if (e.is_zero()) return r;
  const AlgebraSpec& a = *e.spec();
  if (a.family != AlgebraFamily::oscillator) throw AlgebraError("trace needs the oscillator algebra");
  for (const auto& [m, c] : e.terms()) {
    std::vector<int> word;
    for (int g = 0; g < a.ngen; ++g)
      for (int k = 0; k < m[static_cast<std::size_t>(g)]; ++k) word.push_back(g);
    if (word.size() % 2) throw AlgebraError("trace of an odd-degree element");
    const Rational t = trace_word(*a.space, word);
    if (t != 0) r += Scalar(t) * c;
  }
  return r;
}

}  // namespace ospyb
