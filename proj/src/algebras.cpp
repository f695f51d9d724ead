#include "capq/algebras.hpp"

#include <algorithm>

#include "capq/cache.hpp"

namespace capq {

namespace {

/// Nonzero entries of a relation matrix, monic and deduplicated, in
/// row-major entry order.
std::vector<NCPoly> collect(const TensorMat& rel) {
  MonomialOrder order;
  std::vector<NCPoly> out;
  for (const auto& [pos, p] : rel.entries()) {
    NCPoly monic = p.scaled(p.lead(order).second.inverse());
    if (std::find(out.begin(), out.end(), monic) == out.end())
      out.push_back(monic);
  }
  return out;
}

/// R^{-1}: the cheap Hecke form when available, exact elimination otherwise
/// (lets the formal R = P degenerations go through).
TensorMat rop_inverse(const RMatrix& R) {
  if (R.hecke_ok()) return R.rinv();
  return scalar_inverse(R.rop(), R.field());
}

}  // namespace

TensorMat gen_matrix(GenKind kind, int N, const QField& f) {
  TensorMat a(N, 1);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      a.set(i - 1, j - 1, NCPoly(Word::single(GenId{kind, i, j}), f.one()));
  return a;
}

std::vector<NCPoly> weyl_relations(int N, const QField& f) {
  QScalar one = f.one();
  std::vector<GenId> xs, ds;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      xs.push_back(gen_x(i, j));
      ds.push_back(gen_d_cl(i, j));
    }

  std::vector<NCPoly> rels;
  auto commutators = [&](const std::vector<GenId>& letters) {
    for (size_t a = 0; a < letters.size(); ++a)
      for (size_t b = a + 1; b < letters.size(); ++b)
        rels.push_back(NCPoly(Word{letters[a], letters[b]}, one) -
                       NCPoly(Word{letters[b], letters[a]}, one));
  };
  commutators(xs);
  commutators(ds);

  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
          NCPoly rel = NCPoly(Word{gen_d_cl(i, j), gen_x(k, l)}, one) -
                       NCPoly(Word{gen_x(k, l), gen_d_cl(i, j)}, one);
          if (i == l && k == j) rel = rel - NCPoly(one);
          rels.push_back(rel);
        }
  return rels;
}

std::vector<NCPoly> rea_relations(const RMatrix& R, GenKind alphabet) {
  if (alphabet != GenKind::m && alphabet != GenKind::d_q)
    throw ConfigError("rea_relations: alphabet must be m or d_q");
  const QField& f = R.field();
  TensorMat rop = (alphabet == GenKind::m) ? R.rop() : rop_inverse(R);
  TensorMat a1 = embed_at(gen_matrix(alphabet, R.N(), f), 1, 2);
  TensorMat ra = tmul(rop, a1);
  TensorMat ar = tmul(a1, rop);
  return collect(tmul(ra, ra) - tmul(ar, ar));
}

std::vector<NCPoly> cross_relations(const RMatrix& R) {
  const QField& f = R.field();
  int N = R.N();
  TensorMat rinv = rop_inverse(R);
  TensorMat d1 = embed_at(gen_matrix(GenKind::d_q, N, f), 1, 2);
  TensorMat mbar2 =
      bar_conjugate(gen_matrix(GenKind::m, N, f), 2, 2, R.rop(), rinv);
  TensorMat rel =
      tmul(d1, mbar2) - rinv - tmul(tmul(mbar2, d1), tmul(rinv, rinv));
  return collect(rel);
}

std::vector<NCPoly> mrea_relations(const RMatrix& R) {
  const QField& f = R.field();
  TensorMat l1 = embed_at(gen_matrix(GenKind::lhat, R.N(), f), 1, 2);
  const TensorMat& rop = R.rop();
  TensorMat lr = tmul(l1, rop);
  TensorMat rl = tmul(rop, l1);
  return collect(tmul(lr, lr) - tmul(rl, rl) - lr + rl);
}

AlgebraPreset weyl_classical_preset(int N, const QField& f) {
  return {"weyl_classical", N, f, weyl_relations(N, f)};
}

AlgebraPreset rea_preset(const RMatrix& R) {
  return {"rea", R.N(), R.field(), rea_relations(R, GenKind::m)};
}

AlgebraPreset rea_inv_preset(const RMatrix& R) {
  return {"rea_inv", R.N(), R.field(), rea_relations(R, GenKind::d_q)};
}

AlgebraPreset quantum_weyl_preset(const RMatrix& R) {
  AlgebraPreset p{"quantum_weyl", R.N(), R.field(),
                  rea_relations(R, GenKind::m)};
  for (const NCPoly& r : rea_relations(R, GenKind::d_q))
    p.relations.push_back(r);
  for (const NCPoly& r : cross_relations(R)) p.relations.push_back(r);
  return p;
}

AlgebraPreset mrea_preset(const RMatrix& R) {
  return {"mrea", R.N(), R.field(), mrea_relations(R)};
}

RewriteSystem build_system(const AlgebraPreset& preset, int degree_bound,
                           const std::string& cache_dir) {
  if (degree_bound < 2) throw ConfigError("build_system: bound must be >= 2");
  return complete_cached(preset.relations, MonomialOrder(), degree_bound,
                         preset.field, cache_dir);
}

}  // namespace capq
