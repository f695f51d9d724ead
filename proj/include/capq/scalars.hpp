#ifndef CAPQ_SCALARS_HPP
#define CAPQ_SCALARS_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "capq/errors.hpp"

namespace capq {

using Int = mpz_class;
using Rational = mpq_class;

/// Laurent polynomial in q with rational coefficients.
///
/// Stored densely over the exponent window [lo, lo+size), trimmed so that the
/// first and last stored coefficients are nonzero. The zero polynomial has an
/// empty coefficient vector.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& constant);
  explicit LaurentPoly(long constant);

  /// coeff * q^exp
  static LaurentPoly monomial(int exp, const Rational& coeff = Rational(1));

  bool is_zero() const { return coeffs_.size() == 0; }
  bool is_one() const;

  /// Lowest/highest exponent with nonzero coefficient; invalid on zero.
  int lo() const;
  int hi() const;

  Rational coeff(int exp) const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const;

  /// Multiply by q^k.
  LaurentPoly shifted(int k) const;

  Rational eval(const Rational& q0) const;  // PoleError if q0=0 and lo<0

  /// Positive rational c such that (*this)/c has coprime integer
  /// coefficients. Zero polynomial yields 1.
  Rational content() const;

  LaurentPoly divided_by(const Rational& c) const;

  /// Exact polynomial division; asserts divisibility.
  LaurentPoly divexact(const LaurentPoly& d) const;

  /// Pairs (exponent, coefficient) from highest to lowest, zeros skipped.
  std::vector<std::pair<int, Rational>> terms_desc() const;

  size_t hash() const;

 private:
  void trim();

  int lo_ = 0;
  std::vector<Rational> coeffs_;
};

/// Monic-free gcd: primitive integer-coefficient gcd via a fraction-free
/// (primitive pseudo-remainder) sequence, normalized to lowest exponent 0
/// and positive leading coefficient. gcd(0, p) is the normalization of p.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

enum class QMode { specialized, symbolic };

class QScalar;

/// Session coefficient field: either Q (with a fixed generic rational value
/// for q) or the field of rational functions Q(q). Immutable value type,
/// threaded through the APIs that construct scalars.
class QField {
 public:
  static QField symbolic();
  static QField specialized(const Rational& q0);  // ConfigError on 0, 1, -1

  QMode mode() const { return mode_; }
  const Rational& q0() const { return q0_; }

  bool operator==(const QField& o) const;

  QScalar zero() const;
  QScalar one() const;
  QScalar integer(long v) const;
  QScalar rational(const Rational& v) const;

  /// q^power in the session field.
  QScalar q(int power = 1) const;

  /// The q-number [c]_q = (q^c - q^{-c})/(q - q^{-1}).
  QScalar qnum(int c) const;

  /// Jucys-Murphy eigenvalue q^{2c} on the idempotent labeled by a tableau
  /// whose cell number k has content c.
  QScalar jm_eigenvalue(int c) const;

  QScalar parse(const std::string& text) const;  // ParseError

  std::string describe() const;

 private:
  QField(QMode mode, Rational q0) : mode_(mode), q0_(std::move(q0)) {}

  QMode mode_;
  Rational q0_;
};

/// Element of the session coefficient field. Exact, immutable, canonical:
/// equal values always compare equal structurally.
///
/// Symbolic values are kept as num/den with integer coefficients, the pair
/// reduced by their polynomial gcd and by the gcd of their contents, the
/// denominator shifted to lowest exponent 0 with positive leading
/// coefficient.
class QScalar {
 public:
  QScalar() : mode_(QMode::specialized), rat_(0) {}  // specialized zero

  QMode mode() const { return mode_; }
  bool is_zero() const;
  bool is_one() const;

  QScalar operator+(const QScalar& o) const;
  QScalar operator-(const QScalar& o) const;
  QScalar operator*(const QScalar& o) const;
  QScalar operator/(const QScalar& o) const;  // asserts o nonzero
  QScalar operator-() const;
  QScalar& operator+=(const QScalar& o);
  bool operator==(const QScalar& o) const;
  bool operator!=(const QScalar& o) const { return !(*this == o); }

  QScalar inverse() const;
  QScalar pow(int e) const;

  /// Exact value at q = q0; symbolic mode only.
  Rational eval_at(const Rational& q0) const;

  /// Specialized-mode value.
  const Rational& rational_value() const;

  std::string str() const;

  size_t hash() const;

 private:
  friend class QField;
  static QScalar make_specialized(Rational v);
  static QScalar make_symbolic(LaurentPoly num, LaurentPoly den);
  void normalize_symbolic();

  QMode mode_;
  Rational rat_;       // specialized
  LaurentPoly num_;    // symbolic
  LaurentPoly den_;    // symbolic
};

}  // namespace capq

#endif
