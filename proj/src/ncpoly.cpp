#include "capq/ncpoly.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <queue>
#include <sstream>

namespace capq {

namespace {

// Canonical letter encoding: high nibble = kind precedence + 1 (so no letter
// encodes to zero), low nibble = row-major position. Monotone in
// (precedence, row, col), so byte order realizes the default deg-lex order.
uint8_t encode_letter(GenId g) {
  assert(g.row >= 1 && g.row <= 4 && g.col >= 1 && g.col <= 4);
  return static_cast<uint8_t>(((static_cast<int>(g.kind) + 1) << 4) |
                              ((g.row - 1) * 4 + (g.col - 1)));
}

GenId decode_letter(uint8_t b) {
  int pos = b & 0xF;
  return {static_cast<GenKind>((b >> 4) - 1), pos / 4 + 1, pos % 4 + 1};
}

}  // namespace

std::string kind_name(GenKind k) {
  switch (k) {
    case GenKind::lhat: return "lhat";
    case GenKind::x: return "x";
    case GenKind::m: return "m";
    case GenKind::d_cl: return "d_cl";
    case GenKind::d_q: return "d_q";
  }
  assert(false);
  return "?";
}

std::string GenId::str() const {
  std::ostringstream os;
  os << kind_name(kind) << "(" << row << "," << col << ")";
  return os.str();
}

Word::Word(std::initializer_list<GenId> letters) {
  if (static_cast<int>(letters.size()) > kMaxLen)
    throw DegreeOverflow("word length exceeds the representation cap");
  for (GenId g : letters) b_[len_++] = encode_letter(g);
}

Word Word::single(GenId g) {
  Word w;
  w.b_[0] = encode_letter(g);
  w.len_ = 1;
  return w;
}

GenId Word::at(int i) const {
  assert(i >= 0 && i < len_);
  return decode_letter(b_[i]);
}

Word Word::concat(const Word& o) const {
  if (len_ + o.len_ > kMaxLen)
    throw DegreeOverflow("word of degree " + std::to_string(len_ + o.len_) +
                         " exceeds the representation cap of " +
                         std::to_string(kMaxLen));
  Word r = *this;
  std::memcpy(r.b_.data() + len_, o.b_.data(), o.len_);
  r.len_ = static_cast<uint8_t>(len_ + o.len_);
  return r;
}

Word Word::prefix(int n) const {
  assert(n >= 0 && n <= len_);
  Word r;
  std::memcpy(r.b_.data(), b_.data(), n);
  r.len_ = static_cast<uint8_t>(n);
  return r;
}

Word Word::suffix_from(int n) const {
  assert(n >= 0 && n <= len_);
  Word r;
  std::memcpy(r.b_.data(), b_.data() + n, len_ - n);
  r.len_ = static_cast<uint8_t>(len_ - n);
  return r;
}

bool Word::matches_at(const Word& pattern, int pos) const {
  if (pos < 0 || pos + pattern.len_ > len_) return false;
  return std::memcmp(b_.data() + pos, pattern.b_.data(), pattern.len_) == 0;
}

bool Word::operator==(const Word& o) const {
  return len_ == o.len_ && std::memcmp(b_.data(), o.b_.data(), len_) == 0;
}

bool Word::canonical_less(const Word& o) const {
  if (len_ != o.len_) return len_ < o.len_;
  return std::memcmp(b_.data(), o.b_.data(), len_) < 0;
}

size_t Word::hash() const {
  size_t h = 1469598103934665603ull;
  for (int i = 0; i < len_; ++i) {
    h ^= b_[i];
    h *= 1099511628211ull;
  }
  return h ^ len_;
}

std::string Word::str() const {
  if (len_ == 0) return "1";
  std::string s;
  for (int i = 0; i < len_; ++i) {
    if (i) s += " ";
    s += at(i).str();
  }
  return s;
}

MonomialOrder::MonomialOrder() {
  for (int i = 0; i < 5; ++i) rank_[i] = static_cast<uint8_t>(i);
  tag_ = "deglex:lhat<x<m<d_cl<d_q";
}

MonomialOrder::MonomialOrder(const std::array<GenKind, 5>& ascending) {
  std::array<bool, 5> seen{};
  for (int r = 0; r < 5; ++r) {
    int k = static_cast<int>(ascending[r]);
    if (k < 0 || k > 4 || seen[k])
      throw ConfigError("monomial order precedence must list each kind once");
    seen[k] = true;
    rank_[k] = static_cast<uint8_t>(r);
  }
  is_default_ = true;
  for (int i = 0; i < 5; ++i) is_default_ &= (rank_[i] == i);
  tag_ = "deglex:";
  for (int r = 0; r < 5; ++r) {
    if (r) tag_ += "<";
    tag_ += kind_name(ascending[r]);
  }
}

bool MonomialOrder::less(const Word& u, const Word& v) const {
  if (u.size() != v.size()) return u.size() < v.size();
  if (is_default_) return u.canonical_less(v);
  for (int i = 0; i < u.size(); ++i) {
    uint8_t a = u.byte(i), b = v.byte(i);
    int ka = rank_[(a >> 4) - 1], kb = rank_[(b >> 4) - 1];
    if (ka != kb) return ka < kb;
    if ((a & 0xF) != (b & 0xF)) return (a & 0xF) < (b & 0xF);
  }
  return false;
}

NCPoly::NCPoly(const QScalar& constant) {
  if (!constant.is_zero()) terms_.push_back({Word(), constant});
}

NCPoly::NCPoly(const Word& w, const QScalar& coeff) {
  if (!coeff.is_zero()) terms_.push_back({w, coeff});
}

NCPoly NCPoly::from_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return b.first.canonical_less(a.first);
  });
  NCPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second = p.terms_.back().second + t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

int NCPoly::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.size());
  return d;
}

const NCPoly::Term& NCPoly::lead(const MonomialOrder& order) const {
  assert(!terms_.empty());
  if (order.is_default()) return terms_.front();
  const Term* best = &terms_.front();
  for (const auto& t : terms_)
    if (order.less(best->first, t.first)) best = &t;
  return *best;
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  NCPoly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    const Term& a = terms_[i];
    const Term& b = o.terms_[j];
    if (a.first == b.first) {
      QScalar c = a.second + b.second;
      if (!c.is_zero()) r.terms_.push_back({a.first, std::move(c)});
      ++i, ++j;
    } else if (b.first.canonical_less(a.first)) {
      r.terms_.push_back(a);
      ++i;
    } else {
      r.terms_.push_back(b);
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

NCPoly NCPoly::operator-() const {
  NCPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const { return *this + (-o); }

NCPoly NCPoly::operator*(const NCPoly& o) const {
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      prod.push_back({a.first.concat(b.first), a.second * b.second});
  return from_terms(std::move(prod));
}

NCPoly NCPoly::scaled(const QScalar& c) const {
  if (c.is_zero()) return NCPoly();
  NCPoly r = *this;
  for (auto& t : r.terms_) t.second = t.second * c;
  return r;
}

bool NCPoly::operator==(const NCPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].first == o.terms_[i].first) ||
        !(terms_[i].second == o.terms_[i].second))
      return false;
  return true;
}

size_t NCPoly::hash() const {
  size_t h = 14695981039346656037ull;
  for (const auto& t : terms_) {
    h ^= t.first.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= t.second.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string NCPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += " + ";
    const auto& [w, c] = terms_[i];
    if (w.empty()) {
      s += "(" + c.str() + ")";
    } else if (c.is_one()) {
      s += w.str();
    } else {
      s += "(" + c.str() + ") " + w.str();
    }
  }
  return s;
}

NCPoly nc_mul(const NCPoly& a, const NCPoly& b) { return a * b; }

namespace {

// a * t * b with a, b monomial words of coefficient one.
NCPoly word_sandwich(const Word& a, const NCPoly& t, const Word& b) {
  std::vector<NCPoly::Term> terms;
  terms.reserve(t.terms().size());
  for (const auto& [w, c] : t.terms())
    terms.push_back({a.concat(w).concat(b), c});
  return NCPoly::from_terms(std::move(terms));
}

// Rules bucketed by leading letter for fast matching; bucket order = stored
// rule order, so "first matching rule" is preserved.
struct RuleIndex {
  std::array<std::vector<int>, 256> by_first_byte;

  explicit RuleIndex(const std::vector<RewriteRule>& rules) {
    for (size_t r = 0; r < rules.size(); ++r) {
      assert(rules[r].head.size() > 0);
      by_first_byte[rules[r].head.byte(0)].push_back(static_cast<int>(r));
    }
  }
};

// Leftmost position, then first matching rule in stored order.
bool find_redex(const Word& w, const std::vector<RewriteRule>& rules,
                const RuleIndex& index, int* pos_out, int* rule_out) {
  for (int pos = 0; pos < w.size(); ++pos) {
    for (int r : index.by_first_byte[w.byte(pos)]) {
      if (w.matches_at(rules[r].head, pos)) {
        *pos_out = pos;
        *rule_out = r;
        return true;
      }
    }
  }
  return false;
}

NCPoly normal_form_indexed(const NCPoly& p, const RewriteSystem& S,
                           const RuleIndex& index) {
  if (p.degree() > S.degree_bound)
    throw DegreeOverflow("normal form requested at degree " +
                         std::to_string(p.degree()) + " above the bound " +
                         std::to_string(S.degree_bound));
  NCPoly work = p;
  std::vector<NCPoly::Term> done;
  while (!work.is_zero()) {
    const auto& [w, c] = work.lead(S.order);
    int pos = 0, r = 0;
    if (!find_redex(w, S.rules, index, &pos, &r)) {
      // Largest remaining term is irreducible: rewrites only produce smaller
      // words, so it can never be touched again.
      done.push_back({w, c});
      work = work - NCPoly(w, c);
      continue;
    }
    const RewriteRule& rule = S.rules[r];
    Word a = w.prefix(pos);
    Word b = w.suffix_from(pos + rule.head.size());
    NCPoly replaced = word_sandwich(a, rule.tail, b).scaled(c);
    work = work - NCPoly(w, c) + replaced;
  }
  return NCPoly::from_terms(std::move(done));
}

}  // namespace

NCPoly normal_form(const NCPoly& p, const RewriteSystem& S) {
  RuleIndex index(S.rules);
  return normal_form_indexed(p, S, index);
}

namespace {

struct Candidate {
  Word key;  // overlap word that spawned this S-polynomial
  uint64_t seq;
  NCPoly poly;
};

// head -> tail rule from a nonzero polynomial: lead becomes the head, the
// negated rest divided by the lead coefficient becomes the tail.
RewriteRule make_rule(const NCPoly& p, const MonomialOrder& order) {
  const auto& [w, c] = p.lead(order);
  RewriteRule r;
  r.head = w;
  r.tail = (NCPoly(w, c) - p).scaled(c.inverse());
  return r;
}

// All S-polynomials between rules r and s whose ambiguity word fits the
// bound: proper overlaps (a suffix of r.head equals a prefix of s.head, both
// directions via caller symmetry) and containments of s.head inside r.head.
void push_pairs(const RewriteRule& r, const RewriteRule& s, bool same_rule,
                int bound, uint64_t* seq,
                std::vector<Candidate>* out) {
  const Word& u = r.head;
  const Word& v = s.head;
  int t_max = std::min(u.size(), v.size()) - 1;
  for (int t = 1; t <= t_max; ++t) {
    // suffix of u of length t vs prefix of v
    if (u.size() + v.size() - t > bound) continue;
    if (!(u.suffix_from(u.size() - t) == v.prefix(t))) continue;
    Word a = u.prefix(u.size() - t);
    Word c = v.suffix_from(t);
    out->push_back({u.concat(c), (*seq)++,
                    word_sandwich(Word(), r.tail, c) -
                        word_sandwich(a, s.tail, Word())});
  }
  if (!same_rule && v.size() < u.size()) {
    for (int pos = 0; pos + v.size() <= u.size(); ++pos) {
      if (!u.matches_at(v, pos)) continue;
      if (u.size() > bound) continue;
      Word a = u.prefix(pos);
      Word b = u.suffix_from(pos + v.size());
      out->push_back({u, (*seq)++, r.tail - word_sandwich(a, s.tail, b)});
    }
  }
}

}  // namespace

RewriteSystem complete(const std::vector<NCPoly>& relations,
                       const MonomialOrder& order, int degree_bound,
                       const CompletionOptions& opts) {
  if (degree_bound < 1 || degree_bound > Word::kMaxLen / 2)
    throw ConfigError("completion degree bound must be between 1 and " +
                      std::to_string(Word::kMaxLen / 2));

  RewriteSystem S;
  S.order = order;
  S.degree_bound = degree_bound;

  uint64_t seq = 0;
  std::vector<Candidate> pending;
  for (const NCPoly& rel : relations) {
    if (rel.is_zero()) continue;
    if (rel.degree() > degree_bound)
      throw DegreeOverflow("relation of degree " + std::to_string(rel.degree()) +
                           " above the completion bound");
    S.mode = rel.terms().front().second.mode();
    pending.push_back({rel.lead(order).first, seq++, rel});
  }

  // Smallest ambiguity first (deg-lex on the key, then arrival order):
  // the normal selection strategy, and fully deterministic.
  auto cmp = [&order](const Candidate& a, const Candidate& b) {
    if (a.key != b.key) return order.less(b.key, a.key);
    return a.seq > b.seq;
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(cmp)> queue(
      cmp, std::move(pending));

  while (!queue.empty()) {
    Candidate cand = queue.top();
    queue.pop();
    RuleIndex index(S.rules);
    NCPoly p = normal_form_indexed(cand.poly, S, index);
    if (p.is_zero()) continue;

    RewriteRule r = make_rule(p, order);
    QScalar one = p.lead(order).second / p.lead(order).second;

    // Inter-reduce: heads containing the new head leave the rule set and
    // their content is re-queued for reduction against it.
    for (size_t i = S.rules.size(); i-- > 0;) {
      const RewriteRule& s = S.rules[i];
      bool contains = false;
      for (int pos = 0; pos + r.head.size() <= s.head.size() && !contains; ++pos)
        contains = s.head.matches_at(r.head, pos);
      if (!contains) continue;
      queue.push({s.head, seq++, NCPoly(s.head, one) - s.tail});
      S.rules.erase(S.rules.begin() + i);
    }

    auto at = std::upper_bound(
        S.rules.begin(), S.rules.end(), r,
        [&order](const RewriteRule& a, const RewriteRule& b) {
          return order.less(a.head, b.head);
        });
    size_t r_idx = static_cast<size_t>(at - S.rules.begin());
    S.rules.insert(at, std::move(r));
    if (S.rules.size() > opts.max_rules)
      throw RuleExplosion("completion exceeded " +
                          std::to_string(opts.max_rules) + " rules");

    std::vector<Candidate> fresh;
    const RewriteRule& just_added = S.rules[r_idx];
    for (size_t i = 0; i < S.rules.size(); ++i) {
      bool self = (i == r_idx);
      push_pairs(just_added, S.rules[i], self, degree_bound, &seq, &fresh);
      if (!self) push_pairs(S.rules[i], just_added, false, degree_bound, &seq, &fresh);
    }
    for (auto& c : fresh) queue.push(std::move(c));
  }

  // Tail-normalize against the finished rule set (tails stay below their
  // heads, so self-application is impossible).
  RuleIndex index(S.rules);
  for (auto& rule : S.rules) rule.tail = normal_form_indexed(rule.tail, S, index);

  S.confluent = confluence_defects(S).empty();
  return S;
}

std::vector<NCPoly> confluence_defects(const RewriteSystem& S) {
  uint64_t seq = 0;
  std::vector<Candidate> pairs;
  for (size_t i = 0; i < S.rules.size(); ++i)
    for (size_t j = 0; j < S.rules.size(); ++j)
      push_pairs(S.rules[i], S.rules[j], i == j, S.degree_bound, &seq, &pairs);

  RuleIndex index(S.rules);
  std::vector<NCPoly> defects;
  for (const auto& c : pairs) {
    NCPoly nf = normal_form_indexed(c.poly, S, index);
    if (!nf.is_zero()) defects.push_back(std::move(nf));
  }
  return defects;
}

}  // namespace capq
