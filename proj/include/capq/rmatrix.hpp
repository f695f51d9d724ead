#ifndef CAPQ_RMATRIX_HPP
#define CAPQ_RMATRIX_HPP

#include <string>

#include "capq/scalars.hpp"
#include "capq/tensorspace.hpp"

namespace capq {

/// Skew-inverse data for an R-matrix: the matrix Psi with
/// Tr_(2)(R_12 Psi_23) = P_13 = Tr_(2)(Psi_12 R_23), and the R-trace weight
/// matrix C = Tr_(2)(Psi), the weight under which the R-trace produces
/// central elements of the reflection-equation algebras.
struct SkewInverse {
  TensorMat psi;  // k=2, scalar entries
  TensorMat c;    // k=1, scalar entries
};

/// A candidate Hecke R-matrix over the session field with its validation
/// status. Construction always computes all three flags; consumers that need
/// a genuine skew-invertible Hecke R-matrix call require_valid().
class RMatrix {
 public:
  /// Validate an arbitrary k=2 scalar operator as an R-matrix candidate.
  static RMatrix from_operator(TensorMat rop, const QField& f);

  int N() const { return rop_.N(); }
  const QField& field() const { return field_; }
  QScalar q() const { return field_.q(1); }
  const TensorMat& rop() const { return rop_; }

  /// R^{-1} = R - (q - q^{-1})·Id; available once hecke_ok.
  const TensorMat& rinv() const;

  bool braid_ok() const { return braid_ok_; }
  bool hecke_ok() const { return hecke_ok_; }
  bool skew_ok() const { return skew_ok_; }
  bool valid() const { return braid_ok_ && hecke_ok_ && skew_ok_; }

  /// ValidationError naming every failed identity with a witness entry.
  void require_valid() const;
  /// Human-readable summary of failed checks; empty when valid.
  const std::string& failure_witness() const { return witness_; }

  /// Skew-inverse and R-trace weights; requires skew_ok.
  const SkewInverse& skew() const;

 private:
  RMatrix(TensorMat rop, const QField& f);

  QField field_;
  TensorMat rop_;
  TensorMat rinv_;
  SkewInverse skew_;
  bool braid_ok_ = false, hecke_ok_ = false, skew_ok_ = false;
  std::string witness_;
};

/// The Drinfeld-Jimbo R-matrix of GL_N type:
///   q·Σ e_ii⊗e_ii + Σ_{i<j}(e_ij⊗e_ji + e_ji⊗e_ij) + (q-q^{-1})·Σ e_ii⊗e_jj,
/// with the (q-q^{-1}) block orientation fixed by validation (the formula is
/// tried as written and, if the braid/Hecke checks reject it, with the block
/// on the opposite triangle; exactly one orientation passes).
RMatrix dj_rmatrix(int N, const QField& f);

/// Parse an R-matrix file: header "N <N> q <scalar-string>", then lines
/// "i j k l <scalar-string>" giving the coefficient of e_ik ⊗ e_jl. The
/// header's q must equal the session's. ParseError on malformed input;
/// validation flags are reported on the returned object, not thrown.
RMatrix load_rmatrix(const std::string& path, const QField& f);

/// Write an R-matrix in the load_rmatrix file format.
void save_rmatrix(const RMatrix& r, const std::string& path);

/// The solved skew-inverse of a validated R-matrix.
SkewInverse skew_inverse(const RMatrix& r);

}  // namespace capq

#endif
