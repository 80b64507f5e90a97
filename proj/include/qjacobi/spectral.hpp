// SPDX-License-Identifier: Apache-2.0
//
// Truncated symmetric Jacobi matrices for the operators I1, I2 and J, their
// eigenvalues, spectrum verification against the predicted point sets, and
// the normalized connection matrices between the canonical basis and the
// eigenbases.

#pragma once

#include <utility>
#include <vector>

#include "qjacobi/families.hpp"
#include "qjacobi/report.hpp"

namespace qjacobi {

enum class OperatorLabel { I1, I2, J_canonical, J_dual_little, J_dual_big_a, J_dual_big_c };

/// Symmetric tridiagonal matrix held as diagonal/off-diagonal arrays.
struct TridiagonalOperator {
  OperatorLabel label = OperatorLabel::I1;
  std::vector<double> diag;     // size N
  std::vector<double> offdiag;  // size N-1
  int size() const { return static_cast<int>(diag.size()); }
};

/// Matrix of I1 in the canonical basis: diag b_n, off-diagonal -a_n.
/// All off-diagonal entries are nonzero for valid parameters.
TridiagonalOperator build_I1(int N, const LittleParams& p);

/// Matrix of I2 in the canonical basis: diag -b_n, off-diagonal +a_n.
TridiagonalOperator build_I2(int N, const BigParams& p);

/// J in the canonical basis is diagonal with entries mu(n).
TridiagonalOperator build_J_canonical(int N, const LittleParams& p);
TridiagonalOperator build_J_canonical(int N, const BigParams& p);

/// J in the normalized eigenbases (symmetrized tridiagonal form).
TridiagonalOperator build_J_dual_little(int N, const LittleParams& p);
TridiagonalOperator build_J_dual_big_a(int N, const BigParams& p);
TridiagonalOperator build_J_dual_big_c(int N, const BigParams& p);

/// All eigenvalues, ascending. Backward-stable tridiagonal QL via Eigen;
/// throws EigensolverFailure if the solver does not converge.
std::vector<double> eigenvalues(const TridiagonalOperator& op);

/// Unnormalized eigenvector components from the three-term recurrence
/// v_0 = 1, offdiag[m] v_{m+1} = (lambda - diag[m]) v_m - offdiag[m-1] v_{m-1}.
/// Once past its peak the decaying tail is cut to zero at 1e-13 of the peak,
/// before amplified rounding can grow back out of it.
std::vector<double> eigenvector_recurrence(const TridiagonalOperator& op, double lambda);

/// Computed vs predicted top eigenvalues, both sorted descending and paired
/// positionally; matched_count counts pairs within tol.
struct SpectrumReport {
  std::vector<double> computed;
  std::vector<double> predicted;
  int matched_count = 0;
  double max_abs_dev = 0.0;
  int truncation_size = 0;
};

/// Predicted set {q^n : n < top_k}. Requires top_k <= N/4 so that only the
/// truncation-clean top quarter is compared.
SpectrumReport verify_spectrum_I1(int N, const LittleParams& p, int top_k,
                                  double tol = 1e-8);

/// Predicted set {a q^{n+1}} U {c q^{n+1}}, n < top_k per sign branch, with
/// the branches matched separately (c < 0 makes sign a reliable tag).
SpectrumReport verify_spectrum_I2(int N, const BigParams& p, int top_k,
                                  double tol = 1e-8);

enum class ConnectionFamily { little, big_a_branch, big_c_branch };

/// Truncated block of a unitary connection matrix, row-major.
struct ConnectionMatrix {
  ConnectionFamily family = ConnectionFamily::little;
  int rows = 0;  // canonical index m
  int cols = 0;  // eigenvalue index n
  std::vector<double> entries;
  double operator()(int m, int n) const { return entries[static_cast<size_t>(m) * cols + n]; }
};

/// Entries c_n beta_m(q^n) for m < M, n < Ncols.
ConnectionMatrix connection_matrix_little(int M, int Ncols, const LittleParams& p);

/// The pair (a-branch, c-branch): c_n beta_m(a q^{n+1}) and c'_n beta_m(c q^{n+1}).
std::pair<ConnectionMatrix, ConnectionMatrix> connection_matrix_big(int M, int Ncols,
                                                                    const BigParams& p);

/// Worst deviation from orthonormality over a leading block x block window,
/// with the inner sums truncated at the stored matrix extents.
struct UnitarityDefect {
  double row_defect = 0.0;    // sums over the eigenvalue index
  double col_defect = 0.0;    // sums over the canonical index
  double cross_defect = 0.0;  // a-branch vs c-branch columns (big family only)
  double max_defect() const {
    return std::max(row_defect, std::max(col_defect, cross_defect));
  }
};

UnitarityDefect unitarity_defect_little(const ConnectionMatrix& conn, int block);
UnitarityDefect unitarity_defect_big(const ConnectionMatrix& a_branch,
                                     const ConnectionMatrix& c_branch, int block);

/// Checks that the stated normalization ratios c_n/c_{n-1} symmetrize the
/// J-action in the dual basis: upper coefficient at n equals lower
/// coefficient at n+1 after normalization, for n < n_max.
IdentityReport j_dual_symmetry_check(const LittleParams& p, int n_max);
IdentityReport j_dual_symmetry_check(const BigParams& p, bool primed_branch, int n_max);

}  // namespace qjacobi
