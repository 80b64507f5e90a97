// SPDX-License-Identifier: Apache-2.0
//
// Weighted inner products on the discrete supports and the orthogonality
// relations: Gram matrices against the closed-form norms for the little/big
// families, the dual families, the F/F' function systems, and the
// alternative q-Charlier duals.

#pragma once

#include <vector>

#include "qjacobi/families.hpp"
#include "qjacobi/report.hpp"

namespace qjacobi {

enum class SupportFamily {
  little,             // points q^n
  dual_little,        // lattice mu(m)
  big_a,              // points a q^{n+1}
  big_c,              // points c q^{n+1}
  dual_big,           // lattice mu(m)
  alt_qcharlier_dual  // lattice q^{-n} - a q^n
};

/// A truncated discrete orthogonality measure. Weights are evaluated
/// entrywise from the closed forms; tail_bound bounds the omitted mass.
struct WeightedSupport {
  SupportFamily family = SupportFamily::little;
  std::vector<double> points;
  std::vector<double> weights;
  double tail_bound = 0.0;
};

WeightedSupport little_support(int count, const LittleParams& p);
WeightedSupport dual_little_support(int count, const LittleParams& p);
WeightedSupport big_support_a(int count, const BigParams& p);
WeightedSupport big_support_c(int count, const BigParams& p);
WeightedSupport dual_big_support(int count, const BigParams& p);
WeightedSupport alt_qcharlier_dual_support(int count, double a, const QBase& base);

/// Truncated Gram matrix against the closed-form diagonal.
/// max_offdiag_abs is normalized by the geometric mean of the two adjacent
/// closed-form norms (they span many orders of magnitude).
struct GramReport {
  int size = 0;
  std::vector<double> gram;      // size x size, row-major, symmetric
  std::vector<double> rhs_diag;  // closed-form norms
  double max_offdiag_abs = 0.0;
  double max_diag_reldev = 0.0;
  double tail_bound = 0.0;  // bound on any entry's change under larger truncation
  int truncation = 0;
  double at(int i, int j) const { return gram[static_cast<size_t>(i) * size + j]; }
};

/// Little-family orthogonality: sum over the support {q^n}, n < trunc.
GramReport gram_little(int K, const LittleParams& p, int trunc);

/// Dual-little orthogonality on the lattice, m < trunc.
GramReport gram_dual_little(int K, const LittleParams& p, int trunc);

/// Big-family orthogonality: both sign branches with their prefactor
/// constants, n < trunc each.
GramReport gram_big(int K, const BigParams& p, int trunc);

/// Dual-big orthogonality on the lattice, m < trunc.
GramReport gram_dual_big(int K, const BigParams& p, int trunc);

/// The alternating cross sum pairing D_n(.; a,b,c) with D_n'(.; b,a,abq/c);
/// exactly zero. residual is |sum| / max(1, largest |term|).
IdentityReport cross_orth_dual_big(int n, int n_prime, const BigParams& p, int trunc);

enum class BigFunctionBranch { F, FPrime };

/// Orthogonality of the function systems F_n / F'_n under rho(m), with the
/// displayed prefactor constants; summands are accumulated by incremental
/// ratio products since rho and F^2 overflow/underflow separately.
GramReport gram_functions_big(int K, const BigParams& p, int trunc, BigFunctionBranch branch);

/// Alternative q-Charlier dual orthogonality (a > 0).
GramReport gram_alt_qcharlier_dual(int K, double a, const QBase& base, int trunc);

}  // namespace qjacobi
