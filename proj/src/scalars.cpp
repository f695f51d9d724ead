#include "capq/scalars.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

namespace capq {

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(const Rational& constant) {
  Rational c = constant;
  c.canonicalize();  // two-argument mpq construction does not canonicalize
  if (c != 0) {
    lo_ = 0;
    coeffs_.push_back(c);
  }
}

LaurentPoly::LaurentPoly(long constant) : LaurentPoly(Rational(constant)) {}

LaurentPoly LaurentPoly::monomial(int exp, const Rational& coeff) {
  Rational c = coeff;
  c.canonicalize();
  LaurentPoly p;
  if (c != 0) {
    p.lo_ = exp;
    p.coeffs_.push_back(c);
  }
  return p;
}

bool LaurentPoly::is_one() const {
  return coeffs_.size() == 1 && lo_ == 0 && coeffs_[0] == 1;
}

int LaurentPoly::lo() const {
  assert(!is_zero());
  return lo_;
}

int LaurentPoly::hi() const {
  assert(!is_zero());
  return lo_ + static_cast<int>(coeffs_.size()) - 1;
}

Rational LaurentPoly::coeff(int exp) const {
  if (is_zero() || exp < lo_ || exp > hi()) return Rational(0);
  return coeffs_[exp - lo_];
}

void LaurentPoly::trim() {
  size_t a = 0, b = coeffs_.size();
  while (b > a && coeffs_[b - 1] == 0) --b;
  while (a < b && coeffs_[a] == 0) ++a;
  if (a == b) {
    coeffs_.clear();
    lo_ = 0;
    return;
  }
  if (a > 0 || b < coeffs_.size()) {
    std::vector<Rational> out(coeffs_.begin() + a, coeffs_.begin() + b);
    coeffs_.swap(out);
    lo_ += static_cast<int>(a);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  int lo = std::min(lo_, o.lo_);
  int hi_exp = std::max(hi(), o.hi());
  LaurentPoly r;
  r.lo_ = lo;
  r.coeffs_.assign(hi_exp - lo + 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[lo_ - lo + i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) r.coeffs_[o.lo_ - lo + i] += o.coeffs_[i];
  r.trim();
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return LaurentPoly();
  LaurentPoly r;
  r.lo_ = lo_ + o.lo_;
  r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      if (o.coeffs_[j] == 0) continue;
      r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  r.trim();
  return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  return lo_ == o.lo_ && coeffs_ == o.coeffs_;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r(*this);
  if (!r.is_zero()) r.lo_ += k;
  return r;
}

Rational LaurentPoly::eval(const Rational& q0) const {
  if (is_zero()) return Rational(0);
  if (q0 == 0) {
    if (lo_ < 0) throw PoleError("evaluation of negative q-power at q0 = 0");
    return coeff(0);
  }
  // Horner over the window, then multiply by q0^lo.
  Rational acc(0);
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * q0 + coeffs_[i];
  Rational p(1);
  int e = lo_;
  Rational base = e < 0 ? Rational(1) / q0 : q0;
  for (int k = 0; k < std::abs(e); ++k) p *= base;
  return acc * p;
}

Rational LaurentPoly::content() const {
  if (is_zero()) return Rational(1);
  Int num_gcd(0), den_lcm(1);
  for (const auto& c : coeffs_) {
    if (c == 0) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational r(num_gcd, den_lcm);
  r.canonicalize();
  return r;
}

LaurentPoly LaurentPoly::divided_by(const Rational& c) const {
  assert(c != 0);
  LaurentPoly r(*this);
  for (auto& x : r.coeffs_) x /= c;
  return r;
}

LaurentPoly LaurentPoly::divexact(const LaurentPoly& d) const {
  assert(!d.is_zero());
  if (is_zero()) return LaurentPoly();
  assert(coeffs_.size() >= d.coeffs_.size());
  const Rational& dlead = d.coeffs_.back();
  LaurentPoly rem(*this);
  LaurentPoly quot;
  quot.lo_ = lo_ - d.lo_;
  quot.coeffs_.assign(coeffs_.size() - d.coeffs_.size() + 1, Rational(0));
  while (!rem.is_zero() && rem.coeffs_.size() >= d.coeffs_.size()) {
    Rational f = rem.coeffs_.back() / dlead;
    int top_shift = rem.hi() - d.hi();  // multiply d by q^top_shift
    size_t qi = static_cast<size_t>(top_shift - quot.lo_);
    assert(qi < quot.coeffs_.size());
    quot.coeffs_[qi] += f;
    rem = rem - (d.shifted(top_shift) * LaurentPoly(f));
  }
  assert(rem.is_zero() && "divexact: inexact division");
  quot.trim();
  return quot;
}

std::vector<std::pair<int, Rational>> LaurentPoly::terms_desc() const {
  std::vector<std::pair<int, Rational>> out;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] != 0) out.emplace_back(lo_ + static_cast<int>(i), coeffs_[i]);
  }
  return out;
}

size_t LaurentPoly::hash() const {
  size_t h = 0x9e3779b97f4a7c15ull;
  h ^= static_cast<size_t>(lo_) + (h << 6) + (h >> 2);
  for (const auto& c : coeffs_) {
    h ^= std::hash<double>{}(c.get_d()) + 0x9e3779b9 + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// gcd

namespace {

// Ordinary integer polynomial as coefficient vector, constant term first.
using ZPoly = std::vector<Int>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Int zcontent(const ZPoly& p) {
  Int g(0);
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

void zdiv_scalar(ZPoly& p, const Int& d) {
  for (auto& c : p) {
    Int q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    c = q;
  }
}

// Pseudo-remainder of a by b (lead(b)^(da-db+1) * a mod b), in place on a copy.
ZPoly zprem(ZPoly a, const ZPoly& b) {
  assert(!b.empty());
  const Int& lb = b.back();
  while (a.size() >= b.size()) {
    Int la = a.back();
    size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= la * b[i];
    ztrim(a);
    if (a.empty()) break;
  }
  return a;
}

// Primitive pseudo-remainder sequence gcd over Z[x]; fraction free.
ZPoly zgcd(ZPoly a, ZPoly b) {
  ztrim(a);
  ztrim(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  Int ca = zcontent(a), cb = zcontent(b);
  zdiv_scalar(a, ca);
  zdiv_scalar(b, cb);
  Int cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (a.size() < b.size()) a.swap(b);
  while (true) {
    ZPoly r = zprem(a, b);
    if (r.empty()) break;
    Int cr = zcontent(r);
    zdiv_scalar(r, cr);
    a.swap(b);
    b.swap(r);
  }
  for (auto& c : b) c *= cg;
  if (b.back() < 0)
    for (auto& c : b) c = -c;
  return b;
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  auto to_z = [](const LaurentPoly& p) -> ZPoly {
    ZPoly out;
    if (p.is_zero()) return out;
    Rational cont = p.content();
    int lo = p.lo();
    out.assign(p.hi() - lo + 1, Int(0));
    for (int e = lo; e <= p.hi(); ++e) {
      Rational c = p.coeff(e) / cont;
      assert(c.get_den() == 1);
      out[e - lo] = c.get_num();
    }
    return out;
  };
  ZPoly g = zgcd(to_z(a), to_z(b));
  LaurentPoly out;
  if (g.empty()) return out;
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i] != 0) out = out + LaurentPoly::monomial(static_cast<int>(i), Rational(g[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// QField

QField QField::symbolic() { return QField(QMode::symbolic, Rational(0)); }

QField QField::specialized(const Rational& q0_in) {
  Rational q0 = q0_in;
  q0.canonicalize();
  if (q0 == 0 || q0 == 1 || q0 == -1)
    throw ConfigError("specialized q0 must avoid 0, 1 and -1; got " + [&] {
      std::ostringstream os;
      os << q0;
      return os.str();
    }());
  return QField(QMode::specialized, q0);
}

bool QField::operator==(const QField& o) const {
  return mode_ == o.mode_ && (mode_ == QMode::symbolic || q0_ == o.q0_);
}

QScalar QField::zero() const { return integer(0); }
QScalar QField::one() const { return integer(1); }

QScalar QField::integer(long v) const { return rational(Rational(v)); }

QScalar QField::rational(const Rational& v) const {
  Rational c = v;
  c.canonicalize();
  if (mode_ == QMode::specialized) return QScalar::make_specialized(std::move(c));
  return QScalar::make_symbolic(LaurentPoly(c), LaurentPoly(1L));
}

QScalar QField::q(int power) const {
  if (mode_ == QMode::symbolic)
    return QScalar::make_symbolic(LaurentPoly::monomial(power), LaurentPoly(1L));
  Rational r(1);
  Rational base = power < 0 ? Rational(1) / q0_ : q0_;
  for (int k = 0; k < std::abs(power); ++k) r *= base;
  return QScalar::make_specialized(r);
}

QScalar QField::qnum(int c) const {
  // [c]_q expands to the geometric sum q^{c-1} + q^{c-3} + ... + q^{1-c}.
  if (c == 0) return zero();
  int a = std::abs(c);
  QScalar sum = zero();
  for (int j = 0; j < a; ++j) sum += q(a - 1 - 2 * j);
  return c > 0 ? sum : -sum;
}

QScalar QField::jm_eigenvalue(int c) const { return q(2 * c); }

std::string QField::describe() const {
  if (mode_ == QMode::symbolic) return "symbolic";
  std::ostringstream os;
  os << q0_;
  return os.str();
}

// ---------------------------------------------------------------------------
// QScalar

QScalar QScalar::make_specialized(Rational v) {
  QScalar s;
  s.mode_ = QMode::specialized;
  s.rat_ = std::move(v);
  return s;
}

QScalar QScalar::make_symbolic(LaurentPoly num, LaurentPoly den) {
  QScalar s;
  s.mode_ = QMode::symbolic;
  s.num_ = std::move(num);
  s.den_ = std::move(den);
  s.normalize_symbolic();
  return s;
}

void QScalar::normalize_symbolic() {
  assert(!den_.is_zero());
  if (num_.is_zero()) {
    den_ = LaurentPoly(1L);
    return;
  }
  // Cancel q-power and polynomial gcd, then make contents coprime integers.
  int shift = -den_.lo();
  num_ = num_.shifted(shift);
  den_ = den_.shifted(shift);
  if (!den_.is_one()) {
    LaurentPoly g = poly_gcd(num_, den_);
    if (!g.is_zero() && !(g.hi() == 0 && g.coeff(0) == 1)) {
      // gcd is an ordinary polynomial with lowest exponent >= 0; align
      // windows before exact division.
      num_ = num_.divexact(g);
      den_ = den_.divexact(g);
      int s2 = -den_.lo();
      num_ = num_.shifted(s2);
      den_ = den_.shifted(s2);
    }
  }
  Rational cn = num_.content();
  Rational cd = den_.content();
  Rational ratio = cn / cd;  // canonical p/r with r > 0
  num_ = num_.divided_by(cn) * LaurentPoly(Rational(ratio.get_num()));
  den_ = den_.divided_by(cd) * LaurentPoly(Rational(ratio.get_den()));
  if (den_.coeff(den_.hi()) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

bool QScalar::is_zero() const {
  return mode_ == QMode::specialized ? rat_ == 0 : num_.is_zero();
}

bool QScalar::is_one() const {
  if (mode_ == QMode::specialized) return rat_ == 1;
  return num_.is_one() && den_.is_one();
}

QScalar QScalar::operator+(const QScalar& o) const {
  assert(mode_ == o.mode_);
  if (mode_ == QMode::specialized) return make_specialized(rat_ + o.rat_);
  if (den_ == o.den_) return make_symbolic(num_ + o.num_, den_);
  return make_symbolic(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

QScalar QScalar::operator-(const QScalar& o) const { return *this + (-o); }

QScalar QScalar::operator-() const {
  QScalar s(*this);
  if (mode_ == QMode::specialized)
    s.rat_ = -s.rat_;
  else
    s.num_ = -s.num_;
  return s;
}

QScalar QScalar::operator*(const QScalar& o) const {
  assert(mode_ == o.mode_);
  if (mode_ == QMode::specialized) return make_specialized(rat_ * o.rat_);
  if (is_zero() || o.is_zero()) return make_symbolic(LaurentPoly(), LaurentPoly(1L));
  return make_symbolic(num_ * o.num_, den_ * o.den_);
}

QScalar QScalar::operator/(const QScalar& o) const { return *this * o.inverse(); }

QScalar& QScalar::operator+=(const QScalar& o) {
  *this = *this + o;
  return *this;
}

bool QScalar::operator==(const QScalar& o) const {
  assert(mode_ == o.mode_);
  if (mode_ == QMode::specialized) return rat_ == o.rat_;
  return num_ == o.num_ && den_ == o.den_;
}

QScalar QScalar::inverse() const {
  assert(!is_zero());
  if (mode_ == QMode::specialized) return make_specialized(Rational(1) / rat_);
  return make_symbolic(den_, num_);
}

QScalar QScalar::pow(int e) const {
  if (e == 0) {
    return mode_ == QMode::specialized
               ? make_specialized(Rational(1))
               : make_symbolic(LaurentPoly(1L), LaurentPoly(1L));
  }
  QScalar base = e < 0 ? inverse() : *this;
  QScalar acc = base;
  for (int k = 1; k < std::abs(e); ++k) acc = acc * base;
  return acc;
}

Rational QScalar::eval_at(const Rational& q0) const {
  if (mode_ != QMode::symbolic) throw Error("eval_at requires a symbolic scalar");
  Rational d = den_.eval(q0);
  if (d == 0) {
    throw PoleError("denominator " + [&] {
      std::ostringstream os;
      os << "vanishes at q0 = " << q0;
      return os.str();
    }());
  }
  return num_.eval(q0) / d;
}

const Rational& QScalar::rational_value() const {
  assert(mode_ == QMode::specialized);
  return rat_;
}

namespace {

std::string poly_str(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms_desc()) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? "-" : "+");
      if (a < 0) a = -a;
    }
    first = false;
    if (e == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "q";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace

std::string QScalar::str() const {
  std::ostringstream os;
  if (mode_ == QMode::specialized) {
    os << rat_;
    return os.str();
  }
  if (den_.is_one()) return poly_str(num_);
  return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

size_t QScalar::hash() const {
  if (mode_ == QMode::specialized) {
    return std::hash<double>{}(rat_.get_d()) ^ 0x51ed270b;
  }
  return num_.hash() * 31 + den_.hash();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;
  const QField& field;

  explicit Parser(const std::string& text, const QField& f) : s(text), field(f) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("scalar parse error at position " + std::to_string(i) + ": " + what +
                     " in \"" + s + "\"");
  }

  Int integer() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++digits;
    }
    if (digits == 0) fail("expected integer");
    return Int(s.substr(start, i - start));
  }

  // expr := product (('+'|'-') product)*
  QScalar expr() {
    QScalar v = product();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++i;
        v = v + product();
      } else if (c == '-') {
        ++i;
        v = v - product();
      } else {
        return v;
      }
    }
  }

  // product := factor (('*'|'/') factor)*
  QScalar product() {
    QScalar v = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++i;
        v = v * factor();
      } else if (c == '/') {
        ++i;
        QScalar d = factor();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  // factor := ['+'|'-'] atom ['^' int]
  QScalar factor() {
    char c = peek();
    bool neg = false;
    if (c == '-') {
      neg = true;
      ++i;
    } else if (c == '+') {
      ++i;
    }
    QScalar v = atom();
    if (peek() == '^') {
      ++i;
      Int e = integer();
      if (!e.fits_sint_p()) fail("exponent out of range");
      long ei = e.get_si();
      if (v.is_zero() && ei < 0) fail("negative power of zero");
      v = v.pow(static_cast<int>(ei));
    }
    return neg ? -v : v;
  }

  // atom := INT | 'q' | '(' expr ')'
  QScalar atom() {
    char c = peek();
    if (c == '(') {
      ++i;
      QScalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'q') {
      ++i;
      return field.q(1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return field.rational(Rational(integer()));
    }
    fail("expected number, 'q' or '('");
  }
};

}  // namespace

QScalar QField::parse(const std::string& text) const {
  Parser p(text, *this);
  QScalar v = p.expr();
  p.skip_ws();
  if (p.i != text.size()) p.fail("trailing input");
  return v;
}

}  // namespace capq
