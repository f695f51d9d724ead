#ifndef CAPQ_CAPELLI_HPP
#define CAPQ_CAPELLI_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "capq/algebras.hpp"
#include "capq/combinatorics.hpp"
#include "capq/ncpoly.hpp"
#include "capq/rmatrix.hpp"
#include "capq/tensorspace.hpp"

namespace capq {

/// Options shared by the verification entry points.
struct VerifyOptions {
  std::string cache_dir;   // empty disables the rewrite-system cache
  int jobs = 1;            // worker threads over entry residuals
  int bound_override = 0;  // 0 keeps each identity's default bound
  bool force = false;      // lift the symbolic-mode size guards
};

/// Outcome of one identity verification. Verified means every entry residual
/// of the defining difference has an empty normal form.
struct IdentityReport {
  std::string id;        // e.g. "eq2-classical"
  int N = 0;
  int n = 0;             // 0 when not applicable
  Partition lambda;      // empty when not applicable
  std::string tableau;   // StdTableau::str(), or "" when not applicable
  std::string q_mode;    // QField::describe()
  std::map<std::string, std::string> extra;  // identity-specific parameters

  std::string status = "verified";  // "verified" | "failed"
  MultiIndex fail_row, fail_col;    // first failing entry, row-major order
  std::string residual;             // its nonzero normal form

  long long ms = 0;          // wall clock
  size_t rules = 0;          // rewrite-system stats
  bool confluent = false;
  bool cache_hit = false;
  long entries_checked = 0;  // conceptual entry count of the difference

  bool verified() const { return status == "verified"; }
};

/// diag(N-1, N-2, ..., 1, 0): the shift matrix of the column-determinant
/// Capelli identity.
TensorMat numerical_k(int N, const QField& f);

/// Column determinant: sum over permutations of sgn(s)·A(s(1),1)···A(s(N),N)
/// with the factors multiplied left to right by column.
NCPoly cdet(const TensorMat& a);

/// cdet(XD + K) = cdet(X)·cdet(D) in the classical Weyl algebra. With
/// k_zero_mutant the shift K is dropped, which must make N >= 2 fail.
IdentityReport verify_cdet_capelli(int N, const QField& f,
                                   const VerifyOptions& opts = {},
                                   bool k_zero_mutant = false);

/// Both sides of the universal classical identity at width n over W_N:
/// L_1(L_2 - j_2)···(L_n - j_n) and X_1···X_n D_1···D_n with L = XD.
std::pair<TensorMat, TensorMat> capelli_classical_sides(int N, int n,
                                                        const QField& f);

IdentityReport verify_capelli_classical(int N, int n, const QField& f,
                                        const VerifyOptions& opts = {});

/// Immanant form: L_1(L_2 - c(2))···(L_n - c(n))·E versus
/// X_1···X_n D_1···D_n·E for the classical idempotent E of the tableau,
/// optionally under the full trace; also checks that the traced sides do not
/// depend on the choice of tableau of the shape.
IdentityReport verify_imm(const Partition& lambda, int tableau_index, int N,
                          bool with_trace, const QField& f,
                          const VerifyOptions& opts = {});

/// Both sides of the quantum identity at width n over W(R):
/// Lhat_bar1·Prod_{k>=2}(Lhat_bark + (J_k^{-1} - 1)/(q - q^{-1})) and
/// Mbar_1···Mbar_n·Dbar_n···Dbar_1·J_1^{-1}···J_n^{-1} with Lhat = MD.
std::pair<TensorMat, TensorMat> capelli_quantum_sides(const RMatrix& R, int n);

IdentityReport verify_capelli_quantum(const RMatrix& R, int n,
                                      const VerifyOptions& opts = {});

/// Idempotent-projected form: factors (Lhat_bark - q^{-c(k)}[c(k)]_q) against
/// the q^{-2(c(1)+...+c(n))}-scaled right side, both right-multiplied by the
/// Hecke idempotent of the tableau; includes the rewriting-free consistency
/// check that the projected general difference equals this difference.
IdentityReport verify_corcap(const RMatrix& R, const Partition& lambda,
                             int tableau_index,
                             const VerifyOptions& opts = {});

/// R-trace over all slots of Lhat_bar1(Lhat_bar2 - q^{-c(2)}[c(2)]_q)···E in
/// the abstract lhat alphabet, reduced to normal form in the mrea system.
NCPoly quantum_immanant(const RMatrix& R, const Partition& lambda,
                        int tableau_index, const VerifyOptions& opts = {});

/// (a) the immanant is independent of the tableau choice within the shape;
/// (b) for n <= 2, it is central: [s, lhat_i^j] reduces to zero for every
/// generator.
IdentityReport verify_immanant_properties(const RMatrix& R,
                                          const Partition& lambda,
                                          const VerifyOptions& opts = {});

/// Every entry of the mREA defect of Lhat = MD reduces to zero in the
/// quantum Weyl algebra of R.
IdentityReport verify_mrea_embedding(const RMatrix& R,
                                     const VerifyOptions& opts = {});

}  // namespace capq

#endif
