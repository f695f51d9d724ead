#include "capq/combinatorics.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace capq {

bool is_partition(const Partition& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1) return false;
    if (i > 0 && p[i] > p[i - 1]) return false;
  }
  return true;
}

std::vector<Partition> partitions(int n) {
  if (n < 1) throw ConfigError("partitions: n must be positive");
  std::vector<Partition> out;
  Partition current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      rec(remaining - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

int StdTableau::content(int k) const {
  assert(k >= 1 && k <= n());
  return cells[k - 1].second - cells[k - 1].first;
}

std::vector<int> StdTableau::contents() const {
  std::vector<int> c;
  for (int k = 1; k <= n(); ++k) c.push_back(content(k));
  return c;
}

Partition StdTableau::subshape(int k) const {
  std::vector<int> rows;
  for (int e = 1; e <= k; ++e) {
    int r = cells[e - 1].first;
    if (static_cast<int>(rows.size()) < r) rows.resize(r, 0);
    rows[r - 1] += 1;
  }
  return rows;
}

std::string StdTableau::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) os << ",";
    os << shape[i];
  }
  os << ")|";
  for (size_t r = 0; r < shape.size(); ++r) {
    if (r) os << "/";
    std::vector<int> row(shape[r]);
    for (int k = 1; k <= n(); ++k)
      if (cells[k - 1].first == static_cast<int>(r) + 1)
        row[cells[k - 1].second - 1] = k;
    for (int c = 0; c < shape[r]; ++c) {
      if (c) os << ",";
      os << row[c];
    }
  }
  return os.str();
}

std::vector<StdTableau> standard_tableaux(const Partition& shape) {
  if (shape.empty() || !is_partition(shape))
    throw ConfigError("standard_tableaux: malformed partition");
  int n = 0;
  for (int part : shape) n += part;

  std::vector<StdTableau> out;
  StdTableau t;
  t.shape = shape;
  std::vector<int> fill(shape.size(), 0);  // cells used per row so far

  std::function<void(int)> place = [&](int k) {
    if (k > n) {
      out.push_back(t);
      return;
    }
    for (size_t r = 0; r < shape.size(); ++r) {
      if (fill[r] >= shape[r]) continue;                  // row full
      if (r > 0 && fill[r] >= fill[r - 1]) continue;      // column growth
      t.cells.push_back({static_cast<int>(r) + 1, fill[r] + 1});
      fill[r] += 1;
      place(k + 1);
      fill[r] -= 1;
      t.cells.pop_back();
    }
  };
  place(1);

  std::sort(out.begin(), out.end(), [](const StdTableau& a, const StdTableau& b) {
    return a.contents() < b.contents();
  });
  return out;
}

std::vector<int> addable_contents(const Partition& shape) {
  std::vector<int> contents;
  int rows = static_cast<int>(shape.size());
  for (int r = 1; r <= rows + 1; ++r) {
    int col = (r <= rows) ? shape[r - 1] + 1 : 1;
    bool addable = (r == 1) || (shape[r - 2] >= col);
    if (addable) contents.push_back(col - r);
  }
  return contents;
}

TensorMat jm_classical(int k, int n, int N, const QField& f) {
  if (k < 1 || k > n) throw ConfigError("jm_classical: need 1 <= k <= n");
  TensorMat j(N, n);
  for (int i = 1; i < k; ++i) j = j + perm_matrix(i, k, n, N, f);
  return j;
}

TensorMat jm_hecke(int k, int n, const RMatrix& R) {
  if (k < 1 || k > n) throw ConfigError("jm_hecke: need 1 <= k <= n");
  const QField& f = R.field();
  TensorMat j = TensorMat::identity(R.N(), n, f);
  if (k == 1) return j;
  // R_{k-1} ... R_2 R_1^2 R_2 ... R_{k-1}
  TensorMat R1 = embed(R.rop(), {1, 2}, n);
  j = tmul(R1, R1);
  for (int i = 2; i < k; ++i) {
    TensorMat Ri = embed(R.rop(), {i, i + 1}, n);
    j = tmul(Ri, tmul(j, Ri));
  }
  return j;
}

namespace {

TensorMat idempotent_impl(const StdTableau& T, int N, const QField& f,
                          const std::function<TensorMat(int)>& jm,
                          const std::function<QScalar(int)>& eps) {
  int n = T.n();
  TensorMat E = TensorMat::identity(N, n, f);
  TensorMat id = TensorMat::identity(N, n, f);
  for (int k = 2; k <= n; ++k) {
    int c = T.content(k);
    TensorMat Jk = jm(k);
    for (int b : addable_contents(T.subshape(k - 1))) {
      if (b == c) continue;
      QScalar denom = eps(c) - eps(b);
      if (denom.is_zero())
        throw Error("idempotent recursion hit a vanishing denominator (" +
                    eps(c).str() + " = " + eps(b).str() +
                    "): the session field is not generic");
      E = tmul(E, (Jk - id.scaled(eps(b))).scaled(denom.inverse()));
    }
  }

  // Postconditions: a genuine primitive idempotent with the right spectrum.
  if (tmul(E, E) != E)
    throw Error("idempotent postcondition E^2 = E failed for " + T.str());
  for (int k = 1; k <= n; ++k) {
    if (tmul(jm(k), E) != E.scaled(eps(T.content(k))))
      throw Error("idempotent postcondition J_k E = eps(c(k)) E failed for " +
                  T.str() + " at k=" + std::to_string(k));
  }
  return E;
}

}  // namespace

TensorMat idempotent_classical(const StdTableau& T, int N, const QField& f) {
  return idempotent_impl(
      T, N, f, [&](int k) { return jm_classical(k, T.n(), N, f); },
      [&](int b) { return f.integer(b); });
}

TensorMat idempotent_hecke(const StdTableau& T, const RMatrix& R) {
  const QField& f = R.field();
  return idempotent_impl(
      T, R.N(), f, [&](int k) { return jm_hecke(k, T.n(), R); },
      [&](int b) { return f.jm_eigenvalue(b); });
}

}  // namespace capq
