#ifndef CAPQ_TENSORSPACE_HPP
#define CAPQ_TENSORSPACE_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "capq/errors.hpp"
#include "capq/ncpoly.hpp"
#include "capq/scalars.hpp"

namespace capq {

/// Multi-index into (C^N)^{⊗k}: k entries, each 1..N. Slot 1 is outermost in
/// the row-major linear enumeration, i.e. linear = Σ (idx_s - 1)·N^(k-s).
using MultiIndex = std::vector<int>;

int pack_index(const MultiIndex& idx, int N);
MultiIndex unpack_index(int linear, int N, int k);

/// Sparse operator on (C^N)^{⊗k} with NCPoly entries (QScalar entries are the
/// degree-0 case: empty-word polynomials). Immutable by convention after
/// construction; absent entries are zero. k = 0 operators are algebra
/// elements (a single 1x1 entry).
class TensorMat {
 public:
  TensorMat() : N_(1), k_(0) {}
  TensorMat(int N, int k);  // zero operator; ConfigError outside N<=4, k<=8

  static TensorMat identity(int N, int k, const QField& f);

  int N() const { return N_; }
  int k() const { return k_; }
  int dim() const;  // N^k

  void set(int row, int col, NCPoly value);  // drops explicit zeros
  const NCPoly& at(int row, int col) const;  // zero poly when absent
  const std::map<std::pair<int, int>, NCPoly>& entries() const {
    return entries_;
  }

  bool is_zero() const { return entries_.empty(); }
  /// True when every entry is a constant polynomial.
  bool is_scalar() const;

  TensorMat operator+(const TensorMat& o) const;
  TensorMat operator-(const TensorMat& o) const;
  TensorMat operator-() const;
  TensorMat scaled(const QScalar& c) const;
  /// Entrywise left multiplication by an algebra element.
  TensorMat scaled_left(const NCPoly& p) const;
  bool operator==(const TensorMat& o) const;
  bool operator!=(const TensorMat& o) const { return !(*this == o); }

 private:
  int N_, k_;
  std::map<std::pair<int, int>, NCPoly> entries_;
};

/// Matrix product with entry products taken in nc_mul order: the left
/// factor's entry multiplies from the left.
TensorMat tmul(const TensorMat& a, const TensorMat& b);

/// Place a k=1 operator at tensor slot pos of the given width (identity
/// elsewhere).
TensorMat embed_at(const TensorMat& a, int pos, int width);

/// Place a k=|slots| operator at the given strictly increasing slots.
TensorMat embed(const TensorMat& a, const std::vector<int>& slots, int width);

/// P_{ij} at the given width: swaps tensor slots i and j.
TensorMat perm_matrix(int i, int j, int width, int N, const QField& f);

/// Partial trace over the listed slots; remaining slots keep their relative
/// order. Tracing all slots yields a k=0 operator (an algebra element).
TensorMat trace_slots(const TensorMat& a, const std::set<int>& slots);

/// R-trace: ordinary partial trace of A · Π_{s∈slots} C_s, with C the weight
/// matrix computed by the rmatrix module.
TensorMat r_trace(const TensorMat& a, const std::set<int>& slots,
                  const TensorMat& C);

/// A_{bar k} at the given width: R_{k-1}···R_1 A_1 R_1^{-1}···R_{k-1}^{-1}
/// for a k=1 operator A; bar 1 is plain embedding.
TensorMat bar_conjugate(const TensorMat& a, int kslot, int width,
                        const TensorMat& R, const TensorMat& Rinv);

/// Exact inverse of an operator with scalar entries, by Gaussian elimination
/// over the session field. ValidationError if entries are not scalar or the
/// matrix is singular.
TensorMat scalar_inverse(const TensorMat& a, const QField& f);

/// Lines "rowIndex colIndex polyString" in row-major order, indices rendered
/// as digit tuples ("-" for the k=0 empty tuple).
std::string dump(const TensorMat& a);

}  // namespace capq

#endif
