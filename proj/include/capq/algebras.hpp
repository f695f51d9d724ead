#ifndef CAPQ_ALGEBRAS_HPP
#define CAPQ_ALGEBRAS_HPP

#include <string>
#include <vector>

#include "capq/ncpoly.hpp"
#include "capq/rmatrix.hpp"
#include "capq/tensorspace.hpp"

namespace capq {

/// Generator matrix of an alphabet: the k=1 operator whose (i,j) entry is
/// the single-letter word for generator (kind, i, j).
TensorMat gen_matrix(GenKind kind, int N, const QField& f);

/// Classical Weyl algebra W_N: x-pairs commute, d-pairs commute, and
/// d_i^j x_k^l - x_k^l d_i^j = delta_i^l delta_k^j (the componentwise form
/// of D_1 X_2 = X_2 D_1 + P_12).
std::vector<NCPoly> weyl_relations(int N, const QField& f);

/// Reflection-equation relations: the componentwise entries of
/// R_1 A_1 R_1 A_1 - A_1 R_1 A_1 R_1 at width 2, with A the generator matrix
/// of the alphabet. The m-alphabet uses R itself, the d_q-alphabet R^{-1}.
std::vector<NCPoly> rea_relations(const RMatrix& R, GenKind alphabet);

/// Permutation relations between the two halves of the quantum Weyl algebra:
/// entries of D_1 M_bar2 - R_1^{-1} - M_bar2 D_1 R_1^{-2}, with
/// M_bar2 = R_1 M_1 R_1^{-1}. Every relation has a d·m head.
std::vector<NCPoly> cross_relations(const RMatrix& R);

/// Modified reflection-equation relations in the lhat alphabet: entries of
/// Lhat_1 R_1 Lhat_1 R_1 - R_1 Lhat_1 R_1 Lhat_1 - Lhat_1 R_1 + R_1 Lhat_1.
std::vector<NCPoly> mrea_relations(const RMatrix& R);

/// A named algebra presentation over the session field.
struct AlgebraPreset {
  std::string name;  // CLI-addressable, e.g. "quantum_weyl"
  int N = 0;
  QField field = QField::symbolic();
  std::vector<NCPoly> relations;
};

AlgebraPreset weyl_classical_preset(int N, const QField& f);
AlgebraPreset rea_preset(const RMatrix& R);
AlgebraPreset rea_inv_preset(const RMatrix& R);
/// Free product of rea (m) and rea_inv (d_q) modulo the cross relations.
AlgebraPreset quantum_weyl_preset(const RMatrix& R);
AlgebraPreset mrea_preset(const RMatrix& R);

/// Complete the preset's relations up to the degree bound (>= 2) under the
/// default monomial order. A nonempty cache_dir enables the read-through
/// rewrite-system cache.
RewriteSystem build_system(const AlgebraPreset& preset, int degree_bound,
                           const std::string& cache_dir = "");

}  // namespace capq

#endif
