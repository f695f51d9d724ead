#include "capq/tensorspace.hpp"

#include <random>
#include <vector>

#include "capq/ncpoly.hpp"
#include "capq/scalars.hpp"
#include "doctest.h"

using namespace capq;

namespace {

NCPoly gen(GenId g, const QField& f) { return NCPoly(Word::single(g), f.one()); }

TensorMat random_scalar_mat(int N, int k, const QField& f, double fill,
                            std::mt19937_64& rng) {
  TensorMat m(N, k);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> qpow(-1, 1);
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      if (u(rng) < fill)
        m.set(r, c, NCPoly(f.integer(coef(rng)) * f.q(qpow(rng))));
  return m;
}

}  // namespace

TEST_CASE("multi-index packing is row-major with slot 1 outermost") {
  CHECK(pack_index({1, 1}, 2) == 0);
  CHECK(pack_index({1, 2}, 2) == 1);
  CHECK(pack_index({2, 1}, 2) == 2);
  CHECK(pack_index({2, 2}, 2) == 3);
  CHECK(pack_index({2, 3}, 3) == 5);
  for (int lin = 0; lin < 27; ++lin)
    CHECK(pack_index(unpack_index(lin, 3, 3), 3) == lin);
  CHECK(unpack_index(5, 2, 3) == MultiIndex{2, 1, 2});
}

TEST_CASE("shape guards") {
  CHECK_THROWS_AS(TensorMat(5, 1), ConfigError);
  CHECK_THROWS_AS(TensorMat(2, 9), ConfigError);
  CHECK_THROWS_AS(TensorMat(0, 1), ConfigError);
  QField f = QField::symbolic();
  TensorMat a(2, 1), b(2, 2);
  CHECK_THROWS_AS(a + b, ValidationError);
  CHECK_THROWS_AS(tmul(a, b), ValidationError);
}

TEST_CASE("embed_at places a factor with identity elsewhere") {
  QField f = QField::symbolic();
  QScalar qa = f.q(1), qb = f.integer(3);
  TensorMat A(2, 1);
  A.set(0, 0, NCPoly(qa));
  A.set(1, 1, NCPoly(qb));

  // entry ((i,j),(i',j')) = A(i,i') δ_{j,j'}
  TensorMat E1 = embed_at(A, 1, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int ip = 0; ip < 2; ++ip)
        for (int jp = 0; jp < 2; ++jp) {
          NCPoly want = (j == jp) ? A.at(i, ip) : NCPoly();
          CHECK(E1.at(pack_index({i + 1, j + 1}, 2),
                      pack_index({ip + 1, jp + 1}, 2)) == want);
        }
  // slot 1 outermost: diag(a, a, b, b) at pos 1, diag(a, b, a, b) at pos 2
  CHECK(E1.at(0, 0) == NCPoly(qa));
  CHECK(E1.at(1, 1) == NCPoly(qa));
  CHECK(E1.at(2, 2) == NCPoly(qb));
  TensorMat E2 = embed_at(A, 2, 2);
  CHECK(E2.at(1, 1) == NCPoly(qb));
  CHECK(E2.at(2, 2) == NCPoly(qa));

  CHECK(embed_at(TensorMat::identity(2, 1, f), 1, 3) ==
        TensorMat::identity(2, 3, f));

  // Tr over the filled slot factorizes: Tr_(1)(A_1) = Tr(A) · Id
  TensorMat traced = trace_slots(E1, {1});
  TensorMat expect = TensorMat::identity(2, 1, f).scaled(qa + qb);
  CHECK(traced == expect);

  CHECK_THROWS_AS(embed_at(A, 3, 2), ValidationError);
  CHECK_THROWS_AS(embed_at(TensorMat(2, 2), 1, 2), ValidationError);
}

TEST_CASE("perm_matrix swaps slots") {
  QField f = QField::specialized(Rational(2));
  TensorMat P = perm_matrix(1, 2, 2, 2, f);
  // row-major: [[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]]
  int expect[4][4] = {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(P.at(r, c) == (expect[r][c] ? NCPoly(f.one()) : NCPoly()));

  CHECK(tmul(P, P) == TensorMat::identity(2, 2, f));
  CHECK(trace_slots(P, {2}) == TensorMat::identity(2, 1, f));
  CHECK(trace_slots(P, {1, 2}).at(0, 0) == NCPoly(f.integer(2)));

  // braid relation for permutations
  TensorMat P12 = perm_matrix(1, 2, 3, 2, f);
  TensorMat P23 = perm_matrix(2, 3, 3, 2, f);
  CHECK(tmul(P12, tmul(P23, P12)) == tmul(P23, tmul(P12, P23)));

  // nonadjacent swap matches conjugation: P_13 = P_12 P_23 P_12
  CHECK(perm_matrix(1, 3, 3, 2, f) == tmul(P12, tmul(P23, P12)));

  CHECK_THROWS_AS(perm_matrix(1, 1, 2, 2, f), ValidationError);
}

TEST_CASE("tmul preserves entry order and matches scalar matrices") {
  QField f = QField::symbolic();

  // X_1 · D_1 at N=1 keeps the product order x·d
  TensorMat X(1, 1), D(1, 1);
  X.set(0, 0, gen(gen_x(1, 1), f));
  D.set(0, 0, gen(gen_d_cl(1, 1), f));
  TensorMat XD = tmul(X, D);
  CHECK(XD.at(0, 0) == NCPoly(Word{gen_x(1, 1), gen_d_cl(1, 1)}, f.one()));
  CHECK(tmul(D, X).at(0, 0) ==
        NCPoly(Word{gen_d_cl(1, 1), gen_x(1, 1)}, f.one()));

  // scalar product matches an ordinary 2x2 computation
  std::mt19937_64 rng(314);
  for (int it = 0; it < 25; ++it) {
    TensorMat A = random_scalar_mat(2, 1, f, 0.8, rng);
    TensorMat B = random_scalar_mat(2, 1, f, 0.8, rng);
    TensorMat C = tmul(A, B);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        CHECK(C.at(r, c) ==
              A.at(r, 0) * B.at(0, c) + A.at(r, 1) * B.at(1, c));
  }

  // associativity on random sparse samples
  for (int it = 0; it < 10; ++it) {
    TensorMat A = random_scalar_mat(2, 2, f, 0.3, rng);
    TensorMat B = random_scalar_mat(2, 2, f, 0.3, rng);
    TensorMat C = random_scalar_mat(2, 2, f, 0.3, rng);
    CHECK(tmul(tmul(A, B), C) == tmul(A, tmul(B, C)));
  }

  // disjoint slots commute when the entry alphabets commute
  TensorMat XX(2, 1);
  XX.set(0, 1, gen(gen_x(1, 2), f));
  XX.set(1, 0, gen(gen_x(1, 2), f));
  TensorMat S = random_scalar_mat(2, 1, f, 0.9, rng);
  CHECK(tmul(embed_at(XX, 1, 2), embed_at(S, 2, 2)) ==
        tmul(embed_at(S, 2, 2), embed_at(XX, 1, 2)));
}

TEST_CASE("trace_slots is linear and slot-order independent") {
  QField f = QField::symbolic();
  std::mt19937_64 rng(2718);
  for (int it = 0; it < 10; ++it) {
    TensorMat A = random_scalar_mat(2, 3, f, 0.4, rng);
    TensorMat B = random_scalar_mat(2, 3, f, 0.4, rng);
    CHECK(trace_slots(A + B, {2}) == trace_slots(A, {2}) + trace_slots(B, {2}));
    CHECK(trace_slots(A, {1, 3}) ==
          trace_slots(trace_slots(A, {3}), {1}));
    CHECK(trace_slots(A, {1, 3}) ==
          trace_slots(trace_slots(A, {1}), {2}));
  }
  CHECK(trace_slots(TensorMat::identity(2, 3, f), {1, 2, 3}).at(0, 0) ==
        NCPoly(f.integer(8)));
  // Tr_(2)(A_1 B_2) = Tr(B) · A at slot 1
  TensorMat A = random_scalar_mat(2, 1, f, 0.9, rng);
  TensorMat B = random_scalar_mat(2, 1, f, 0.9, rng);
  TensorMat prod = tmul(embed_at(A, 1, 2), embed_at(B, 2, 2));
  NCPoly trB = B.at(0, 0) + B.at(1, 1);
  TensorMat lhs = trace_slots(prod, {2});
  CHECK(lhs == A.scaled_left(trB));
  CHECK_THROWS_AS(trace_slots(A, {2}), ValidationError);
}

TEST_CASE("bar conjugation degenerates classically and inverts exactly") {
  QField f = QField::symbolic();
  std::mt19937_64 rng(979);
  TensorMat P = perm_matrix(1, 2, 2, 2, f);

  TensorMat A = random_scalar_mat(2, 1, f, 0.9, rng);
  // bar 1 is plain embedding
  CHECK(bar_conjugate(A, 1, 3, P, P) == embed_at(A, 1, 3));
  // with R = P the bar is just slot placement: A_bar k = A_k
  for (int kslot = 1; kslot <= 3; ++kslot)
    CHECK(bar_conjugate(A, kslot, 3, P, P) == embed_at(A, kslot, 3));

  // conjugating back restores A_1: undo with R <-> Rinv swapped
  TensorMat R = random_scalar_mat(2, 2, f, 0.6, rng);
  // make R invertible by adding q·Id
  R = R + TensorMat::identity(2, 2, f).scaled(f.q(3));
  TensorMat Rinv = scalar_inverse(R, f);
  TensorMat conj = bar_conjugate(A, 3, 3, R, Rinv);
  TensorMat R1 = embed(R, {1, 2}, 3), R1i = embed(Rinv, {1, 2}, 3);
  TensorMat R2 = embed(R, {2, 3}, 3), R2i = embed(Rinv, {2, 3}, 3);
  TensorMat undone = tmul(R1i, tmul(R2i, tmul(conj, tmul(R2, R1))));
  CHECK(undone == embed_at(A, 1, 3));

  // N=1 case: conjugation by 1x1 matrices is trivial
  QField fs = QField::specialized(Rational(3));
  TensorMat B(1, 1);
  B.set(0, 0, NCPoly(fs.integer(7)));
  TensorMat R11(1, 1 + 1);
  R11.set(0, 0, NCPoly(fs.q(1)));
  CHECK(bar_conjugate(B, 2, 2, R11, scalar_inverse(R11, fs)) ==
        embed_at(B, 2, 2));
}

TEST_CASE("scalar_inverse performs exact Gaussian elimination") {
  QField f = QField::symbolic();
  std::mt19937_64 rng(1618);
  int inverted = 0;
  for (int it = 0; it < 20; ++it) {
    TensorMat A = random_scalar_mat(2, 2, f, 0.5, rng) +
                  TensorMat::identity(2, 2, f).scaled(f.q(2));
    TensorMat Ainv;
    try {
      Ainv = scalar_inverse(A, f);
    } catch (const ValidationError&) {
      continue;  // singular sample
    }
    ++inverted;
    CHECK(tmul(A, Ainv) == TensorMat::identity(2, 2, f));
    CHECK(tmul(Ainv, A) == TensorMat::identity(2, 2, f));
  }
  CHECK(inverted > 0);

  TensorMat sing(2, 1);
  sing.set(0, 0, NCPoly(f.one()));
  CHECK_THROWS_AS(scalar_inverse(sing, f), ValidationError);

  TensorMat poly(1, 1);
  poly.set(0, 0, NCPoly(Word::single(gen_x(1, 1)), f.one()));
  CHECK_THROWS_AS(scalar_inverse(poly, f), ValidationError);
}

TEST_CASE("r_trace with identity weights is the ordinary trace") {
  QField f = QField::symbolic();
  std::mt19937_64 rng(555);
  TensorMat C = TensorMat::identity(2, 1, f);
  for (int it = 0; it < 10; ++it) {
    TensorMat A = random_scalar_mat(2, 2, f, 0.5, rng);
    CHECK(r_trace(A, {2}, C) == trace_slots(A, {2}));
    CHECK(r_trace(A, {1, 2}, C) == trace_slots(A, {1, 2}));
  }
  // weighted trace: r_trace(Id) = Tr(C)
  TensorMat W(2, 1);
  W.set(0, 0, NCPoly(f.q(1)));
  W.set(1, 1, NCPoly(f.q(-1)));
  TensorMat t = r_trace(TensorMat::identity(2, 1, f), {1}, W);
  CHECK(t.at(0, 0) == NCPoly(f.q(1) + f.q(-1)));
}

TEST_CASE("dump renders digit tuples in row-major order") {
  QField f = QField::specialized(Rational(2));
  TensorMat A(2, 2);
  A.set(pack_index({1, 2}, 2), pack_index({2, 1}, 2), NCPoly(f.integer(3)));
  A.set(0, 0, NCPoly(f.one()));
  CHECK(dump(A) == "11 11 (1)\n12 21 (3)\n");

  TensorMat k0(2, 0);
  k0.set(0, 0, NCPoly(f.integer(5)));
  CHECK(dump(k0) == "- - (5)\n");
}
