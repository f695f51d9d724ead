#include "doctest.h"

#include <vector>

#include "capq/combinatorics.hpp"

using namespace capq;

namespace {

std::vector<StdTableau> all_tableaux(int n) {
  std::vector<StdTableau> all;
  for (const auto& lam : partitions(n))
    for (const auto& t : standard_tableaux(lam)) all.push_back(t);
  return all;
}

}  // namespace

TEST_CASE("partitions enumerate in descending lex order") {
  CHECK(partitions(1).size() == 1);
  CHECK(partitions(2).size() == 2);
  CHECK(partitions(3).size() == 3);
  CHECK(partitions(4).size() == 5);

  std::vector<Partition> p3 = {{3}, {2, 1}, {1, 1, 1}};
  CHECK(partitions(3) == p3);
  std::vector<Partition> p4 = {{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
  CHECK(partitions(4) == p4);

  CHECK(is_partition({}));
  CHECK(is_partition({2, 1}));
  CHECK(is_partition({3, 3, 1}));
  CHECK(!is_partition({1, 2}));
  CHECK(!is_partition({2, 0}));
  CHECK(!is_partition({2, -1}));

  CHECK_THROWS_AS(partitions(0), ConfigError);
}

TEST_CASE("standard tableau counts match the hook length formula") {
  // Single row / single column shapes admit exactly one filling.
  auto row = standard_tableaux({3});
  REQUIRE(row.size() == 1);
  CHECK(row[0].contents() == std::vector<int>{0, 1, 2});
  auto col = standard_tableaux({1, 1, 1});
  REQUIRE(col.size() == 1);
  CHECK(col[0].contents() == std::vector<int>{0, -1, -2});

  CHECK(standard_tableaux({2, 1}).size() == 2);
  // Hook lengths: (2,2) -> 4!/(3*2*2*1) = 2, (3,1) -> 4!/(4*2*1*1) = 3,
  // (2,1,1) -> 4!/(4*1*2*1) = 3.
  CHECK(standard_tableaux({2, 2}).size() == 2);
  CHECK(standard_tableaux({3, 1}).size() == 3);
  CHECK(standard_tableaux({2, 1, 1}).size() == 3);

  // Sum of squared counts over all shapes of n equals n!.
  int sum_sq = 0;
  for (const auto& lam : partitions(4)) {
    int f = static_cast<int>(standard_tableaux(lam).size());
    sum_sq += f * f;
  }
  CHECK(sum_sq == 24);

  CHECK_THROWS_AS(standard_tableaux({}), ConfigError);
  CHECK_THROWS_AS(standard_tableaux({1, 2}), ConfigError);
}

TEST_CASE("tableaux are standard, content-ordered, and print canonically") {
  auto tabs = standard_tableaux({2, 1});
  REQUIRE(tabs.size() == 2);
  // Lex order on content sequences: (0,-1,1) before (0,1,-1).
  CHECK(tabs[0].contents() == std::vector<int>{0, -1, 1});
  CHECK(tabs[1].contents() == std::vector<int>{0, 1, -1});
  CHECK(tabs[0].str() == "(2,1)|1,3/2");
  CHECK(tabs[1].str() == "(2,1)|1,2/3");

  // Growing subshapes are partitions at every stage.
  CHECK(tabs[1].subshape(1) == Partition{1});
  CHECK(tabs[1].subshape(2) == Partition{2});
  CHECK(tabs[1].subshape(3) == Partition{2, 1});

  for (int n = 1; n <= 4; ++n) {
    for (const auto& lam : partitions(n)) {
      auto list = standard_tableaux(lam);
      std::vector<std::vector<int>> seqs;
      for (const auto& t : list) {
        CHECK(t.n() == n);
        CHECK(t.shape == lam);
        for (int k = 1; k <= n; ++k) CHECK(is_partition(t.subshape(k)));
        CHECK(t.subshape(n) == lam);
        seqs.push_back(t.contents());
      }
      for (size_t i = 1; i < seqs.size(); ++i) CHECK(seqs[i - 1] < seqs[i]);
    }
  }
}

TEST_CASE("addable corner contents") {
  CHECK(addable_contents({1}) == std::vector<int>{1, -1});
  CHECK(addable_contents({2}) == std::vector<int>{2, -1});
  CHECK(addable_contents({1, 1}) == std::vector<int>{1, -2});
  CHECK(addable_contents({2, 1}) == std::vector<int>{2, 0, -2});
  CHECK(addable_contents({2, 2}) == std::vector<int>{2, -2});
  CHECK(addable_contents({3, 1}) == std::vector<int>{3, 0, -2});
}

TEST_CASE("classical Jucys-Murphy elements") {
  QField f = QField::symbolic();
  CHECK(jm_classical(1, 3, 2, f).is_zero());
  CHECK(jm_classical(2, 2, 2, f) == perm_matrix(1, 2, 2, 2, f));

  TensorMat j2 = jm_classical(2, 3, 2, f);
  TensorMat j3 = jm_classical(3, 3, 2, f);
  CHECK(j3 == perm_matrix(1, 3, 3, 2, f) + perm_matrix(2, 3, 3, 2, f));
  CHECK(tmul(j2, j3) == tmul(j3, j2));

  // j_2 is a transposition image, so (j_2 - 1)(j_2 + 1) = 0.
  TensorMat id = TensorMat::identity(2, 2, f);
  TensorMat p = jm_classical(2, 2, 2, f);
  CHECK(tmul(p - id, p + id).is_zero());

  CHECK_THROWS_AS(jm_classical(0, 2, 2, f), ConfigError);
  CHECK_THROWS_AS(jm_classical(3, 2, 2, f), ConfigError);
}

TEST_CASE("Hecke Jucys-Murphy elements") {
  QField f = QField::symbolic();
  RMatrix R = dj_rmatrix(2, f);
  const int N = 2;

  CHECK(jm_hecke(1, 3, R) == TensorMat::identity(N, 3, f));

  QScalar qmq = f.q(1) - f.q(-1);
  TensorMat id2 = TensorMat::identity(N, 2, f);
  CHECK(jm_hecke(2, 2, R) == id2 + R.rop().scaled(qmq));

  TensorMat J2 = jm_hecke(2, 3, R);
  TensorMat J3 = jm_hecke(3, 3, R);
  TensorMat R1 = embed(R.rop(), {1, 2}, 3);
  TensorMat R2 = embed(R.rop(), {2, 3}, 3);
  CHECK(J3 == tmul(R2, tmul(tmul(R1, R1), R2)));
  CHECK(tmul(J2, J3) == tmul(J3, J2));

  // Classical degeneration: a permutation operator squares to the identity,
  // so every J_k collapses to Id.
  RMatrix Rp = RMatrix::from_operator(perm_matrix(1, 2, 2, N, f), f);
  for (int k = 1; k <= 3; ++k)
    CHECK(jm_hecke(k, 3, Rp) == TensorMat::identity(N, 3, f));

  CHECK_THROWS_AS(jm_hecke(4, 3, R), ConfigError);
}

TEST_CASE("two-box idempotents match their closed forms") {
  QField f = QField::symbolic();
  RMatrix R = dj_rmatrix(2, f);
  TensorMat id2 = TensorMat::identity(2, 2, f);
  QScalar denom = (f.q(1) + f.q(-1)).inverse();

  StdTableau trow = standard_tableaux({2})[0];
  StdTableau tcol = standard_tableaux({1, 1})[0];

  TensorMat esym = idempotent_hecke(trow, R);
  TensorMat easym = idempotent_hecke(tcol, R);
  CHECK(esym == (R.rop() + id2.scaled(f.q(-1))).scaled(denom));
  CHECK(easym == (id2.scaled(f.q(1)) - R.rop()).scaled(denom));
  CHECK(esym + easym == id2);

  TensorMat p = perm_matrix(1, 2, 2, 2, f);
  QScalar half = f.rational(Rational(1, 2));
  CHECK(idempotent_classical(trow, 2, f) == (id2 + p).scaled(half));
  CHECK(idempotent_classical(tcol, 2, f) == (id2 - p).scaled(half));
}

TEST_CASE("idempotent families: completeness, orthogonality, eigenvalues") {
  QField f = QField::symbolic();
  const int N = 2;
  RMatrix R = dj_rmatrix(N, f);

  for (int n = 1; n <= 3; ++n) {
    auto tabs = all_tableaux(n);
    std::vector<TensorMat> cls, hk;
    for (const auto& T : tabs) {
      cls.push_back(idempotent_classical(T, N, f));
      hk.push_back(idempotent_hecke(T, R));
    }

    TensorMat id = TensorMat::identity(N, n, f);
    TensorMat sum_cls(N, n), sum_hk(N, n);
    for (const auto& e : cls) sum_cls = sum_cls + e;
    for (const auto& e : hk) sum_hk = sum_hk + e;
    CHECK(sum_cls == id);
    CHECK(sum_hk == id);

    for (size_t a = 0; a < tabs.size(); ++a) {
      for (size_t b = a + 1; b < tabs.size(); ++b) {
        CHECK(tmul(cls[a], cls[b]).is_zero());
        CHECK(tmul(cls[b], cls[a]).is_zero());
        CHECK(tmul(hk[a], hk[b]).is_zero());
        CHECK(tmul(hk[b], hk[a]).is_zero());
      }
    }

    // The Jucys-Murphy family is diagonalized by the idempotents, acting by
    // the content (classical) or q^{2*content} (Hecke) from either side.
    for (size_t a = 0; a < tabs.size(); ++a) {
      for (int k = 1; k <= n; ++k) {
        int c = tabs[a].content(k);
        TensorMat jk = jm_classical(k, n, N, f);
        CHECK(tmul(jk, cls[a]) == cls[a].scaled(f.integer(c)));
        CHECK(tmul(cls[a], jk) == cls[a].scaled(f.integer(c)));
        TensorMat Jk = jm_hecke(k, n, R);
        CHECK(tmul(Jk, hk[a]) == hk[a].scaled(f.jm_eigenvalue(c)));
        CHECK(tmul(hk[a], Jk) == hk[a].scaled(f.jm_eigenvalue(c)));
      }
    }
  }
}

TEST_CASE("idempotent traces equal Weyl dimensions of the shapes") {
  // Trace of a projector is its rank; for shape lambda on (C^N)^{tensor n}
  // that rank is the dimension of the irreducible GL_N module S_lambda(C^N).
  QField f = QField::symbolic();
  const int N = 2;
  RMatrix R = dj_rmatrix(N, f);

  auto trace_of = [&](const TensorMat& e, int n) {
    std::set<int> slots;
    for (int s = 1; s <= n; ++s) slots.insert(s);
    return trace_slots(e, slots);
  };

  // n=2: Sym^2 C^2 has dimension 3, Lambda^2 C^2 dimension 1.
  // n=3: Sym^3 C^2 -> 4; mixed (2,1) -> 2 per tableau; column (1,1,1) -> 0.
  struct Expect {
    int n;
    std::vector<int> dims;  // in all_tableaux order
  };
  std::vector<Expect> table = {{2, {3, 1}}, {3, {4, 2, 2, 0}}};

  for (const auto& [n, dims] : table) {
    auto tabs = all_tableaux(n);
    REQUIRE(tabs.size() == dims.size());
    TensorMat unit = TensorMat::identity(N, 0, f);
    for (size_t a = 0; a < tabs.size(); ++a) {
      TensorMat want = unit.scaled(f.integer(dims[a]));
      CHECK(trace_of(idempotent_classical(tabs[a], N, f), n) == want);
      CHECK(trace_of(idempotent_hecke(tabs[a], R), n) == want);
    }
  }
}

TEST_CASE("column shape beyond the carrier dimension degenerates to zero") {
  QField f = QField::symbolic();
  StdTableau T = standard_tableaux({1, 1, 1})[0];

  // Antisymmetrizing three tensor slots of C^2 annihilates everything...
  CHECK(idempotent_classical(T, 2, f).is_zero());
  CHECK(idempotent_hecke(T, dj_rmatrix(2, f)).is_zero());

  // ...while on C^3 the same shape is a genuine rank-one projector.
  TensorMat e3 = idempotent_classical(T, 3, f);
  CHECK(!e3.is_zero());
  CHECK(trace_slots(e3, {1, 2, 3}) == TensorMat::identity(3, 0, f));
  CHECK(!idempotent_hecke(T, dj_rmatrix(3, f)).is_zero());
}

TEST_CASE("JM inverses reduce to q-number multiples on idempotents") {
  QField f = QField::symbolic();
  const int N = 2;
  RMatrix R = dj_rmatrix(N, f);
  QScalar qmq_inv = (f.q(1) - f.q(-1)).inverse();

  for (int n = 2; n <= 3; ++n) {
    TensorMat id = TensorMat::identity(N, n, f);
    for (const auto& T : all_tableaux(n)) {
      TensorMat E = idempotent_hecke(T, R);
      for (int k = 1; k <= n; ++k) {
        TensorMat jinv = scalar_inverse(jm_hecke(k, n, R), f);
        TensorMat lhs = tmul((jinv - id).scaled(qmq_inv), E);
        int c = T.content(k);
        QScalar rhs = -(f.q(-c) * f.qnum(c));
        CHECK(lhs == E.scaled(rhs));
      }
    }
  }
}

TEST_CASE("idempotents at a specialized q value") {
  QField f = QField::specialized(Rational(2, 5));
  const int N = 2;
  RMatrix R = dj_rmatrix(N, f);

  const int n = 3;
  auto tabs = all_tableaux(n);
  TensorMat sum(N, n);
  for (const auto& T : tabs) sum = sum + idempotent_hecke(T, R);
  CHECK(sum == TensorMat::identity(N, n, f));

  // Eigenvalue spot check on the first mixed-shape tableau.
  StdTableau T = standard_tableaux({2, 1})[1];
  TensorMat E = idempotent_hecke(T, R);
  TensorMat J3 = jm_hecke(3, n, R);
  CHECK(tmul(J3, E) == E.scaled(f.jm_eigenvalue(T.content(3))));
}
