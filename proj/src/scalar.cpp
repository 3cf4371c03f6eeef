#include "ospyb/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ospyb {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw ScalarError("bad rational: " + text);
  q.canonicalize();
  if (q.get_den() == 0) throw ScalarError("zero denominator: " + text);
  return q;
}

const char* var_name(Var x) {
  switch (x) {
    case Var::u: return "u";
    case Var::v: return "v";
    case Var::kappa: return "kappa";
  }
  return "?";
}

namespace {

constexpr int kShift[kNumVars] = {0, 16, 32};

MultiPoly::Key var_key(Var x, int e) {
  int ex[kNumVars] = {0, 0, 0};
  ex[static_cast<int>(x)] = e;
  return MultiPoly::pack(ex[0], ex[1], ex[2]);
}

}  // namespace

MultiPoly::Key MultiPoly::pack(int eu, int ev, int ek) {
  if (eu < 0 || ev < 0 || ek < 0 || eu > 0xffff || ev > 0xffff || ek > 0xffff)
    throw ScalarError("exponent out of range");
  const Key d = static_cast<Key>(eu + ev + ek);
  return (d << 48) | (static_cast<Key>(ek) << 32) | (static_cast<Key>(ev) << 16) |
         static_cast<Key>(eu);
}

int MultiPoly::exponent(Key k, Var x) {
  return static_cast<int>((k >> kShift[static_cast<int>(x)]) & 0xffff);
}

MultiPoly::MultiPoly(long c) {
  if (c != 0) terms_.emplace_back(0, Rational(c));
}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) {
    terms_.emplace_back(0, c);
    terms_.back().second.canonicalize();
  }
}

MultiPoly MultiPoly::var(Var x) { return monomial(1, x == Var::u, x == Var::v, x == Var::kappa); }

MultiPoly MultiPoly::monomial(const Rational& c, int eu, int ev, int ek) {
  MultiPoly p;
  if (c != 0) {
    p.terms_.emplace_back(pack(eu, ev, ek), c);
    p.terms_.back().second.canonicalize();
  }
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first > b.first; });
  MultiPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      t.second.canonicalize();
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

Rational MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().first == 0) return terms_.back().second;
  return 0;
}

int MultiPoly::degree_in(Var x) const {
  int d = is_zero() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, exponent(t.first, x));
  return d;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

// Merge of two descending term lists with sign on the second operand.
std::vector<MultiPoly::Term> merge(const std::vector<MultiPoly::Term>& a,
                                   const std::vector<MultiPoly::Term>& b, bool negate_b) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first > a[i].first) {
      out.emplace_back(b[j].first, negate_b ? Rational(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rational c = negate_b ? Rational(a[i].second - b[j].second)
                            : Rational(a[i].second + b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.is_zero()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.terms_.size() == 1 && b.terms_[0].first == 0) return a * b.terms_[0].second;
  if (a.terms_.size() == 1 && a.terms_[0].first == 0) return b * a.terms_[0].second;
  std::vector<MultiPoly::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) out.emplace_back(x.first + y.first, x.second * y.second);
  return MultiPoly::from_terms(std::move(out));
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly r(1);
  MultiPoly base = *this;
  while (n) {
    if (n & 1u) r = r * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return r;
}

Rational MultiPoly::eval(const std::map<Var, Rational>& at) const {
  Rational total = 0;
  for (const auto& [key, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < kNumVars; ++i) {
      const int e = exponent(key, static_cast<Var>(i));
      if (e == 0) continue;
      auto it = at.find(static_cast<Var>(i));
      if (it == at.end())
        throw ScalarError(std::string("no value for variable ") + var_name(static_cast<Var>(i)));
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), it->second.get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(p.get_den_mpz_t(), it->second.get_den_mpz_t(), static_cast<unsigned long>(e));
      p.canonicalize();
      term *= p;
    }
    total += term;
  }
  return total;
}

MultiPoly MultiPoly::substitute(Var x, const Rational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) {
    const int e = exponent(key, x);
    if (e == 0) {
      out.emplace_back(key, c);
      continue;
    }
    Rational p;
    mpz_pow_ui(p.get_num_mpz_t(), value.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(p.get_den_mpz_t(), value.get_den_mpz_t(), static_cast<unsigned long>(e));
    p.canonicalize();
    out.emplace_back(key - var_key(x, e), c * p);
  }
  return from_terms(std::move(out));
}

MultiPoly MultiPoly::compose(Var x, const MultiPoly& p) const {
  MultiPoly r;
  const int d = degree_in(x);
  if (d < 0) return r;
  std::vector<MultiPoly> powers(static_cast<std::size_t>(d) + 1);
  powers[0] = MultiPoly(1);
  for (int i = 1; i <= d; ++i) powers[i] = powers[i - 1] * p;
  for (int i = 0; i <= d; ++i) {
    MultiPoly c = coeff(x, i);
    if (!c.is_zero()) r += c * powers[i];
  }
  return r;
}

MultiPoly MultiPoly::coeff(Var x, int k) const {
  std::vector<Term> out;
  for (const auto& [key, c] : terms_)
    if (exponent(key, x) == k) out.emplace_back(key - var_key(x, k), c);
  return from_terms(std::move(out));
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    const bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    Rational a = neg ? Rational(-c) : c;
    std::string mono;
    for (int i = 0; i < kNumVars; ++i) {
      const int e = exponent(key, static_cast<Var>(i));
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(static_cast<Var>(i));
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      os << a.get_str();
    } else if (a == 1) {
      os << mono;
    } else {
      os << a.get_str() << "*" << mono;
    }
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  MultiPoly parse_all() {
    MultiPoly r = parse_sum();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

  MultiPoly parse_sum() {
    skip();
    MultiPoly total;
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = get() == '-';
    MultiPoly t = parse_product();
    total += neg ? -t : t;
    for (;;) {
      skip();
      const char c = peek();
      if (c != '+' && c != '-') break;
      get();
      t = parse_product();
      total += c == '-' ? -t : t;
    }
    return total;
  }

 private:
  MultiPoly parse_product() {
    MultiPoly r = parse_factor();
    for (;;) {
      skip();
      if (peek() != '*') break;
      get();
      r = r * parse_factor();
    }
    return r;
  }

  MultiPoly parse_factor() {
    skip();
    const char c = peek();
    if (c == '(') {
      get();
      MultiPoly r = parse_sum();
      skip();
      if (get() != ')') fail("expected ')'");
      return with_power(r);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) get();
      if (peek() == '/') {
        get();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("bad fraction");
        while (std::isdigit(static_cast<unsigned char>(peek()))) get();
      }
      return MultiPoly(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80) {
      std::size_t start = pos_;
      while (std::isalpha(static_cast<unsigned char>(peek())) ||
             static_cast<unsigned char>(peek()) >= 0x80)
        get();
      const std::string name = s_.substr(start, pos_ - start);
      Var x;
      if (name == "u") {
        x = Var::u;
      } else if (name == "v") {
        x = Var::v;
      } else if (name == "kappa" || name == "k" || name == "\xce\xba") {
        x = Var::kappa;
      } else {
        fail("unknown variable '" + name + "'");
      }
      return with_power(MultiPoly::var(x));
    }
    fail("unexpected character");
    return {};
  }

  MultiPoly with_power(const MultiPoly& base) {
    skip();
    if (peek() != '^') return base;
    get();
    skip();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) get();
    if (start == pos_) fail("expected exponent");
    return base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
  [[noreturn]] void fail(const std::string& why) const {
    throw ScalarError("parse error at " + std::to_string(pos_) + ": " + why + " in '" + s_ + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text) { return PolyParser(text).parse_all(); }

MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw ScalarError("division by the zero polynomial");
  if (b.is_constant()) return a * Rational(1 / b.constant_term());
  MultiPoly rem = a;
  std::vector<MultiPoly::Term> quot;
  const auto& [lk, lc] = b.leading();
  while (!rem.is_zero()) {
    const auto& [rk, rc] = rem.leading();
    for (int i = 0; i < kNumVars; ++i)
      if (MultiPoly::exponent(rk, static_cast<Var>(i)) <
          MultiPoly::exponent(lk, static_cast<Var>(i)))
        throw ScalarError("polynomial division is not exact");
    MultiPoly::Term q{rk - lk, rc / lc};
    rem -= b * MultiPoly::monomial(q.second, MultiPoly::exponent(q.first, Var::u),
                                   MultiPoly::exponent(q.first, Var::v),
                                   MultiPoly::exponent(q.first, Var::kappa));
    quot.push_back(std::move(q));
  }
  return MultiPoly::from_terms(std::move(quot));
}

namespace {

MultiPoly monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading().second);
}

int main_var(const MultiPoly& p) {
  for (int i = kNumVars - 1; i >= 0; --i)
    if (p.has_var(static_cast<Var>(i))) return i;
  return -1;
}

MultiPoly content_in(const MultiPoly& p, Var x) {
  MultiPoly g;
  const int d = p.degree_in(x);
  for (int k = 0; k <= d; ++k) {
    MultiPoly c = p.coeff(x, k);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return MultiPoly(1);
  }
  return g;
}

MultiPoly pseudo_remainder(MultiPoly r, const MultiPoly& b, Var x) {
  const int db = b.degree_in(x);
  const MultiPoly lb = b.coeff(x, db);
  while (!r.is_zero()) {
    const int dr = r.degree_in(x);
    if (dr < db) break;
    int ex[kNumVars] = {0, 0, 0};
    ex[static_cast<int>(x)] = dr - db;
    const MultiPoly shift = r.coeff(x, dr) * MultiPoly::monomial(1, ex[0], ex[1], ex[2]);
    r = r * lb - shift * b;
  }
  return r;
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly(1);
  const Var x = static_cast<Var>(std::max(main_var(a), main_var(b)));
  if (!a.has_var(x)) return gcd(a, content_in(b, x));
  if (!b.has_var(x)) return gcd(content_in(a, x), b);
  const MultiPoly ca = content_in(a, x);
  const MultiPoly cb = content_in(b, x);
  const MultiPoly g = gcd(ca, cb);
  MultiPoly p = exact_divide(a, ca);
  MultiPoly q = exact_divide(b, cb);
  if (p.degree_in(x) < q.degree_in(x)) std::swap(p, q);
  while (!q.is_zero()) {
    MultiPoly r = pseudo_remainder(p, q, x);
    p = std::move(q);
    q = r.is_zero() ? r : exact_divide(r, content_in(r, x));
  }
  if (p.degree_in(x) <= 0) return monic(g);
  p = exact_divide(p, content_in(p, x));
  return monic(p * g);
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const MultiPoly& num, const MultiPoly& den) : num_(num), den_(den) {
  canonicalize();
}

void Scalar::canonicalize() {
  if (den_.is_zero()) throw ScalarError("division by the zero scalar");
  if (num_.is_zero()) {
    den_ = MultiPoly(1);
    return;
  }
  if (den_.is_constant()) {
    const Rational c = den_.constant_term();
    if (c != 1) num_ *= Rational(1 / c);
    den_ = MultiPoly(1);
    return;
  }
  const MultiPoly g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = exact_divide(num_, g);
    den_ = exact_divide(den_, g);
  }
  const Rational lc = den_.leading().second;
  if (lc != 1) {
    const Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
  if (den_.is_constant()) den_ = MultiPoly(1);
}

namespace {
bool is_one(const MultiPoly& p) {
  return p.terms().size() == 1 && p.terms()[0].first == 0 && p.terms()[0].second == 1;
}
}  // namespace

Rational Scalar::constant_value() const {
  if (!is_constant()) throw ScalarError("scalar is not constant: " + str());
  return num_.constant_term();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_one(den_) && is_one(o.den_)) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_one(den_) && is_one(o.den_)) {
    num_ = num_ * o.num_;
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw ScalarError("division by the zero scalar");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  canonicalize();
  return *this;
}

Rational Scalar::eval(const std::map<Var, Rational>& at) const {
  const Rational d = den_.eval(at);
  if (d == 0) throw ScalarError("pole: denominator vanishes at the assignment");
  return num_.eval(at) / d;
}

Scalar Scalar::substitute(Var x, const Rational& value) const {
  MultiPoly d = den_.substitute(x, value);
  if (d.is_zero()) throw ScalarError("pole: denominator vanishes at the assignment");
  return Scalar(num_.substitute(x, value), d);
}

Scalar Scalar::compose(Var x, const Scalar& s) const {
  // Homogenize: p(s) = sum c_k (sn/sd)^k, clear with sd^deg.
  auto lift = [&](const MultiPoly& p, int deg) {
    MultiPoly r;
    for (int k = 0; k <= deg; ++k) {
      MultiPoly c = p.coeff(x, k);
      if (c.is_zero()) continue;
      r += c * s.num().pow(static_cast<unsigned>(k)) *
           s.den().pow(static_cast<unsigned>(deg - k));
    }
    return r;
  };
  const int dn = std::max(num_.degree_in(x), 0);
  const int dd = std::max(den_.degree_in(x), 0);
  const int d = std::max(dn, dd);
  return Scalar(lift(num_, d), lift(den_, d));
}

std::string Scalar::str() const {
  if (is_one(den_)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

Scalar Scalar::parse(const std::string& text) {
  // Top-level "(p)/(q)" or a plain polynomial expression.
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '/' && depth == 0 && i > 0 && text[i - 1] == ')')
      return Scalar(MultiPoly::parse(text.substr(0, i)), MultiPoly::parse(text.substr(i + 1)));
  }
  return Scalar(MultiPoly::parse(text));
}

Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw ScalarError("unknown operation");
}

Rational scalar_eval(const Scalar& a, const std::map<Var, Rational>& at) { return a.eval(at); }

}  // namespace ospyb
