#ifndef CAPQ_COMBINATORICS_HPP
#define CAPQ_COMBINATORICS_HPP

#include <string>
#include <utility>
#include <vector>

#include "capq/rmatrix.hpp"
#include "capq/scalars.hpp"
#include "capq/tensorspace.hpp"

namespace capq {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

bool is_partition(const Partition& p);

/// All partitions of n in descending lex order, e.g. (3), (2,1), (1,1,1).
std::vector<Partition> partitions(int n);

/// A standard Young tableau: entries 1..n placed so that rows and columns
/// strictly increase. content(k) = column - row of the cell holding k.
struct StdTableau {
  Partition shape;
  std::vector<std::pair<int, int>> cells;  // cells[k-1] = (row, col), 1-based

  int n() const { return static_cast<int>(cells.size()); }
  int content(int k) const;
  std::vector<int> contents() const;

  /// Shape of the sub-tableau holding entries 1..k.
  Partition subshape(int k) const;

  /// e.g. "(2,1)|1,2/3": shape, then the rows' entries separated by "/".
  std::string str() const;
};

/// All standard tableaux of the shape, ordered by lex comparison of their
/// content sequences (c(1), ..., c(n)).
std::vector<StdTableau> standard_tableaux(const Partition& shape);

/// Contents of the addable corners of a shape, in increasing row order.
std::vector<int> addable_contents(const Partition& shape);

/// Classical Jucys-Murphy element j_k = Σ_{i<k} P_{ik} at width n (j_1 = 0).
TensorMat jm_classical(int k, int n, int N, const QField& f);

/// Hecke Jucys-Murphy element J_1 = Id, J_k = R_{k-1}···R_2 R_1² R_2···R_{k-1}
/// at width n.
TensorMat jm_hecke(int k, int n, const RMatrix& R);

/// Primitive idempotent for the tableau via the fusion recursion
///   E(1) = Id,  E(k) = E(k-1) · Π_{b ∈ A_k \ {c(k)}} (J_k - ε(b))/(ε(c(k)) - ε(b)),
/// with A_k the addable-corner contents of the entries-1..k-1 subshape.
/// Postconditions (asserted, Error on failure): E² = E and J_k E = ε(c(k)) E
/// for every k. ε(b) = b classically, q^{2b} in the Hecke carrier.
TensorMat idempotent_classical(const StdTableau& T, int N, const QField& f);
TensorMat idempotent_hecke(const StdTableau& T, const RMatrix& R);

}  // namespace capq

#endif
