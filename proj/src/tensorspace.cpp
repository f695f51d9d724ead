#include "capq/tensorspace.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace capq {

int pack_index(const MultiIndex& idx, int N) {
  int lin = 0;
  for (int v : idx) {
    assert(v >= 1 && v <= N);
    lin = lin * N + (v - 1);
  }
  return lin;
}

MultiIndex unpack_index(int linear, int N, int k) {
  MultiIndex idx(k);
  for (int s = k - 1; s >= 0; --s) {
    idx[s] = linear % N + 1;
    linear /= N;
  }
  assert(linear == 0);
  return idx;
}

TensorMat::TensorMat(int N, int k) : N_(N), k_(k) {
  if (N < 1 || N > 4) throw ConfigError("tensor dimension N must be 1..4");
  if (k < 0 || k > 8) throw ConfigError("tensor width k must be 0..8");
}

TensorMat TensorMat::identity(int N, int k, const QField& f) {
  TensorMat r(N, k);
  NCPoly one(f.one());
  for (int i = 0; i < r.dim(); ++i) r.entries_[{i, i}] = one;
  return r;
}

int TensorMat::dim() const {
  int d = 1;
  for (int s = 0; s < k_; ++s) d *= N_;
  return d;
}

void TensorMat::set(int row, int col, NCPoly value) {
  assert(row >= 0 && row < dim() && col >= 0 && col < dim());
  if (value.is_zero())
    entries_.erase({row, col});
  else
    entries_[{row, col}] = std::move(value);
}

const NCPoly& TensorMat::at(int row, int col) const {
  static const NCPoly kZero;
  auto it = entries_.find({row, col});
  return it == entries_.end() ? kZero : it->second;
}

bool TensorMat::is_scalar() const {
  for (const auto& [rc, p] : entries_)
    if (p.degree() > 0) return false;
  return true;
}

TensorMat TensorMat::operator+(const TensorMat& o) const {
  if (N_ != o.N_ || k_ != o.k_)
    throw ValidationError("tensor shape mismatch in addition");
  TensorMat r = *this;
  for (const auto& [rc, p] : o.entries_) {
    auto it = r.entries_.find(rc);
    if (it == r.entries_.end()) {
      r.entries_[rc] = p;
    } else {
      it->second = it->second + p;
      if (it->second.is_zero()) r.entries_.erase(it);
    }
  }
  return r;
}

TensorMat TensorMat::operator-() const {
  TensorMat r = *this;
  for (auto& [rc, p] : r.entries_) p = -p;
  return r;
}

TensorMat TensorMat::operator-(const TensorMat& o) const {
  return *this + (-o);
}

TensorMat TensorMat::scaled(const QScalar& c) const {
  TensorMat r(N_, k_);
  if (c.is_zero()) return r;
  for (const auto& [rc, p] : entries_) r.entries_[rc] = p.scaled(c);
  return r;
}

TensorMat TensorMat::scaled_left(const NCPoly& p) const {
  TensorMat r(N_, k_);
  if (p.is_zero()) return r;
  for (const auto& [rc, e] : entries_) {
    NCPoly prod = p * e;
    if (!prod.is_zero()) r.entries_[rc] = std::move(prod);
  }
  return r;
}

bool TensorMat::operator==(const TensorMat& o) const {
  return N_ == o.N_ && k_ == o.k_ && entries_ == o.entries_;
}

TensorMat tmul(const TensorMat& a, const TensorMat& b) {
  if (a.N() != b.N() || a.k() != b.k())
    throw ValidationError("tensor shape mismatch in tmul");
  // row index of b -> its entries, for sparse row lookup
  std::map<int, std::vector<std::pair<int, const NCPoly*>>> b_rows;
  for (const auto& [rc, p] : b.entries()) b_rows[rc.first].push_back({rc.second, &p});

  TensorMat r(a.N(), a.k());
  std::map<std::pair<int, int>, NCPoly> acc;
  for (const auto& [rc, p] : a.entries()) {
    auto it = b_rows.find(rc.second);
    if (it == b_rows.end()) continue;
    for (const auto& [col, q] : it->second) {
      NCPoly prod = p * (*q);
      if (prod.is_zero()) continue;
      auto [slot, fresh] = acc.try_emplace({rc.first, col}, prod);
      if (!fresh) slot->second = slot->second + prod;
    }
  }
  for (auto& [rc, p] : acc)
    if (!p.is_zero()) r.set(rc.first, rc.second, std::move(p));
  return r;
}

TensorMat embed(const TensorMat& a, const std::vector<int>& slots, int width) {
  if (static_cast<int>(slots.size()) != a.k())
    throw ValidationError("embed: slot count must equal operator width");
  for (size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] < 1 || slots[i] > width)
      throw ValidationError("embed: slot out of range");
    if (i > 0 && slots[i] <= slots[i - 1])
      throw ValidationError("embed: slots must be strictly increasing");
  }
  int N = a.N();
  TensorMat r(N, width);

  // enumerate assignments of the complementary slots
  std::vector<int> rest;
  for (int s = 1; s <= width; ++s)
    if (std::find(slots.begin(), slots.end(), s) == slots.end())
      rest.push_back(s);
  int combos = 1;
  for (size_t i = 0; i < rest.size(); ++i) combos *= N;

  for (const auto& [rc, p] : a.entries()) {
    MultiIndex ra = unpack_index(rc.first, N, a.k());
    MultiIndex ca = unpack_index(rc.second, N, a.k());
    for (int c = 0; c < combos; ++c) {
      MultiIndex fill = unpack_index(c, N, static_cast<int>(rest.size()));
      MultiIndex row(width), col(width);
      for (size_t i = 0; i < slots.size(); ++i) {
        row[slots[i] - 1] = ra[i];
        col[slots[i] - 1] = ca[i];
      }
      for (size_t i = 0; i < rest.size(); ++i) {
        row[rest[i] - 1] = fill[i];
        col[rest[i] - 1] = fill[i];
      }
      r.set(pack_index(row, N), pack_index(col, N), p);
    }
  }
  return r;
}

TensorMat embed_at(const TensorMat& a, int pos, int width) {
  if (a.k() != 1) throw ValidationError("embed_at expects a k=1 operator");
  return embed(a, {pos}, width);
}

TensorMat perm_matrix(int i, int j, int width, int N, const QField& f) {
  if (i == j || i < 1 || j < 1 || i > width || j > width)
    throw ValidationError("perm_matrix: need two distinct slots within width");
  TensorMat r(N, width);
  NCPoly one(f.one());
  for (int lin = 0; lin < r.dim(); ++lin) {
    MultiIndex idx = unpack_index(lin, N, width);
    std::swap(idx[i - 1], idx[j - 1]);
    r.set(lin, pack_index(idx, N), one);
  }
  return r;
}

TensorMat trace_slots(const TensorMat& a, const std::set<int>& slots) {
  for (int s : slots)
    if (s < 1 || s > a.k()) throw ValidationError("trace_slots: slot out of range");
  int N = a.N();
  int k_out = a.k() - static_cast<int>(slots.size());
  TensorMat r(N, k_out);
  std::map<std::pair<int, int>, NCPoly> acc;
  for (const auto& [rc, p] : a.entries()) {
    MultiIndex row = unpack_index(rc.first, N, a.k());
    MultiIndex col = unpack_index(rc.second, N, a.k());
    bool diagonal = true;
    for (int s : slots) diagonal &= (row[s - 1] == col[s - 1]);
    if (!diagonal) continue;
    MultiIndex row_out, col_out;
    for (int s = 1; s <= a.k(); ++s) {
      if (slots.count(s)) continue;
      row_out.push_back(row[s - 1]);
      col_out.push_back(col[s - 1]);
    }
    std::pair<int, int> key{pack_index(row_out, N), pack_index(col_out, N)};
    auto [slot, fresh] = acc.try_emplace(key, p);
    if (!fresh) slot->second = slot->second + p;
  }
  for (auto& [rc, p] : acc)
    if (!p.is_zero()) r.set(rc.first, rc.second, std::move(p));
  return r;
}

TensorMat r_trace(const TensorMat& a, const std::set<int>& slots,
                  const TensorMat& C) {
  if (C.k() != 1 || C.N() != a.N())
    throw ValidationError("r_trace: C must be a k=1 weight matrix of matching N");
  TensorMat weighted = a;
  for (int s : slots) weighted = tmul(weighted, embed_at(C, s, a.k()));
  return trace_slots(weighted, slots);
}

TensorMat bar_conjugate(const TensorMat& a, int kslot, int width,
                        const TensorMat& R, const TensorMat& Rinv) {
  if (a.k() != 1) throw ValidationError("bar_conjugate expects a k=1 operator");
  if (kslot < 1 || kslot > width)
    throw ValidationError("bar_conjugate: slot out of range");
  TensorMat result = embed_at(a, 1, width);
  for (int i = 1; i < kslot; ++i) {
    TensorMat Ri = embed(R, {i, i + 1}, width);
    TensorMat Ri_inv = embed(Rinv, {i, i + 1}, width);
    result = tmul(Ri, tmul(result, Ri_inv));
  }
  return result;
}

namespace {

QScalar entry_scalar(const NCPoly& p, const QField& f) {
  if (p.is_zero()) return f.zero();
  if (p.degree() > 0)
    throw ValidationError("operator entry is not a scalar");
  return p.terms().front().second;
}

}  // namespace

TensorMat scalar_inverse(const TensorMat& a, const QField& f) {
  int n = a.dim();
  // augmented [A | I] over the session field
  std::vector<std::vector<QScalar>> t(n, std::vector<QScalar>(2 * n, f.zero()));
  for (const auto& [rc, p] : a.entries())
    t[rc.first][rc.second] = entry_scalar(p, f);
  for (int i = 0; i < n; ++i) t[i][n + i] = f.one();

  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n && pivot < 0; ++row)
      if (!t[row][col].is_zero()) pivot = row;
    if (pivot < 0) throw ValidationError("scalar_inverse: matrix is singular");
    std::swap(t[col], t[pivot]);
    QScalar inv = t[col][col].inverse();
    for (int j = col; j < 2 * n; ++j) t[col][j] = t[col][j] * inv;
    for (int row = 0; row < n; ++row) {
      if (row == col || t[row][col].is_zero()) continue;
      QScalar factor = t[row][col];
      for (int j = col; j < 2 * n; ++j)
        t[row][j] = t[row][j] - factor * t[col][j];
    }
  }

  TensorMat r(a.N(), a.k());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!t[i][n + j].is_zero()) r.set(i, j, NCPoly(t[i][n + j]));
  return r;
}

std::string dump(const TensorMat& a) {
  std::ostringstream os;
  auto render = [&](int lin) {
    if (a.k() == 0) return std::string("-");
    std::string s;
    for (int v : unpack_index(lin, a.N(), a.k())) s += std::to_string(v);
    return s;
  };
  for (const auto& [rc, p] : a.entries())
    os << render(rc.first) << " " << render(rc.second) << " " << p.str() << "\n";
  return os.str();
}

}  // namespace capq
