#ifndef CAPQ_NCPOLY_HPP
#define CAPQ_NCPOLY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "capq/errors.hpp"
#include "capq/scalars.hpp"

namespace capq {

/// Generator alphabets. x/d_cl are the classical coordinates and derivatives,
/// m/d_q their quantum counterparts, lhat the abstract generators of the
/// modified reflection-equation algebra.
enum class GenKind : uint8_t { lhat = 0, x = 1, m = 2, d_cl = 3, d_q = 4 };

std::string kind_name(GenKind k);

/// One generator: kind plus 1-based matrix position, rows/cols up to 4.
struct GenId {
  GenKind kind;
  int row;
  int col;

  bool operator==(const GenId& o) const {
    return kind == o.kind && row == o.row && col == o.col;
  }
  std::string str() const;  // e.g. "m(1,2)"
};

inline GenId gen_x(int i, int j) { return {GenKind::x, i, j}; }
inline GenId gen_d_cl(int i, int j) { return {GenKind::d_cl, i, j}; }
inline GenId gen_m(int i, int j) { return {GenKind::m, i, j}; }
inline GenId gen_d_q(int i, int j) { return {GenKind::d_q, i, j}; }
inline GenId gen_lhat(int i, int j) { return {GenKind::lhat, i, j}; }

/// A word in the free monoid over GenId. Letters are packed one per byte in a
/// fixed canonical encoding that is monotone in (kind precedence, row, col),
/// so byte-wise comparison realizes the default deg-lex order. The empty word
/// is the unit monomial; total degree equals length.
class Word {
 public:
  static constexpr int kMaxLen = 16;

  Word() = default;
  Word(std::initializer_list<GenId> letters);
  static Word single(GenId g);

  int size() const { return len_; }
  bool empty() const { return len_ == 0; }
  GenId at(int i) const;

  Word concat(const Word& o) const;  // DegreeOverflow past kMaxLen
  Word prefix(int n) const;
  Word suffix_from(int n) const;
  bool matches_at(const Word& pattern, int pos) const;

  bool operator==(const Word& o) const;
  bool operator!=(const Word& o) const { return !(*this == o); }

  /// Canonical deg-lex comparison (the default generator precedence).
  bool canonical_less(const Word& o) const;

  uint8_t byte(int i) const { return b_[i]; }
  size_t hash() const;
  std::string str() const;  // "m(1,1) d_q(1,2)"; empty word -> "1"

 private:
  std::array<uint8_t, kMaxLen> b_{};
  uint8_t len_ = 0;
};

/// Deg-lex monomial order: total degree first, then letter precedence left to
/// right. The precedence between kinds is configurable (the default places
/// d-kinds above m/x-kinds above lhat; within a kind, row-major), but every
/// system in this project uses the default.
class MonomialOrder {
 public:
  MonomialOrder();  // lhat < x < m < d_cl < d_q
  explicit MonomialOrder(const std::array<GenKind, 5>& ascending);

  bool less(const Word& u, const Word& v) const;
  bool is_default() const { return is_default_; }
  const std::string& tag() const { return tag_; }
  bool operator==(const MonomialOrder& o) const { return tag_ == o.tag_; }

 private:
  std::array<uint8_t, 5> rank_{};  // indexed by canonical kind value
  bool is_default_ = true;
  std::string tag_;
};

/// Element of the free associative algebra over the session field: a finite
/// QScalar-linear combination of words. Terms are kept sorted descending in
/// the canonical word order with no zero coefficients, so equal values have
/// equal representations.
class NCPoly {
 public:
  using Term = std::pair<Word, QScalar>;

  NCPoly() = default;  // zero
  explicit NCPoly(const QScalar& constant);
  NCPoly(const Word& w, const QScalar& coeff);

  static NCPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // max word length; 0 for the zero polynomial
  const std::vector<Term>& terms() const { return terms_; }

  /// Largest term under the given order (linear scan; the canonical order
  /// short-circuits to the stored front term). Asserts nonzero.
  const Term& lead(const MonomialOrder& order) const;

  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator-(const NCPoly& o) const;
  NCPoly operator-() const;
  NCPoly operator*(const NCPoly& o) const;
  NCPoly scaled(const QScalar& c) const;

  bool operator==(const NCPoly& o) const;
  bool operator!=(const NCPoly& o) const { return !(*this == o); }

  size_t hash() const;
  std::string str() const;

 private:
  std::vector<Term> terms_;
};

/// Concatenation product extended bilinearly.
NCPoly nc_mul(const NCPoly& a, const NCPoly& b);

/// One rewrite rule head -> tail with every tail term strictly below the head.
struct RewriteRule {
  Word head;
  NCPoly tail;
};

/// A degree-truncated rewriting system: rules sorted ascending by head, an
/// order, the truncation bound, and the session field mode. `confluent` is
/// set once the overlap audit below the bound has passed.
struct RewriteSystem {
  std::vector<RewriteRule> rules;
  MonomialOrder order;
  int degree_bound = 0;
  QMode mode = QMode::symbolic;
  bool confluent = false;
};

/// Reduce p to its normal form: no term contains any rule head as a subword.
/// Strategy: largest reducible term, leftmost matching position, first
/// matching rule in the stored rule order. Throws DegreeOverflow if p (or a
/// reduction request) exceeds S.degree_bound.
NCPoly normal_form(const NCPoly& p, const RewriteSystem& S);

struct CompletionOptions {
  size_t max_rules = 4096;  // RuleExplosion beyond this
};

/// Degree-truncated noncommutative Buchberger completion: saturate the rule
/// set under overlap/containment S-polynomials of total degree <= bound,
/// inter-reduce, and audit. The result decides ideal membership for
/// polynomials of degree <= bound via normal_form.
RewriteSystem complete(const std::vector<NCPoly>& relations,
                       const MonomialOrder& order, int degree_bound,
                       const CompletionOptions& opts = {});

/// All nonzero reduced overlap S-polynomials of degree <= bound. Empty means
/// the system is confluent below its bound.
std::vector<NCPoly> confluence_defects(const RewriteSystem& S);

}  // namespace capq

#endif
