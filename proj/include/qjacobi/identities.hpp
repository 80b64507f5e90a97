// SPDX-License-Identifier: Apache-2.0
//
// Numerical checks of the summation formulas, generating functions, special
// values, symmetry and limit relations. Each check returns an IdentityReport
// whose pass flag is residual <= tolerance.

#pragma once

#include <vector>

#include "qjacobi/families.hpp"
#include "qjacobi/report.hpp"

namespace qjacobi {

/// Norm sum of the little-family eigenvector at the top spectral point
/// against its infinite-product value.
IdentityReport check_A1(const LittleParams& p, double tol);

/// Very-well-poised 6phi5 summation; requires |aq/(bcd)| < 1 and a > 0.
IdentityReport check_A4(double a, double b, double c, double d, const QBase& base,
                        double tol);

/// Its c,d -> infinity limit: a very-well-poised 4phi5 with two zero
/// denominator parameters against (aq;q)_inf/(aq/b;q)_inf.
IdentityReport check_A5(double a, double b, const QBase& base, double tol);

/// The two big-family norm sums against their infinite-product values.
IdentityReport check_A6(const BigParams& p, double tol);
IdentityReport check_A7(const BigParams& p, double tol);

/// eta_k(a;q): alternating lattice-moment sum, identically zero.
/// residual is |sum| / max(1, largest |term|). Requires |a| q < 1.
IdentityReport eta_k(double a, const QBase& base, int k, double tol);

/// The eta three-term recursion in k, residual scaled by the largest term.
IdentityReport eta_recursion(double a, const QBase& base, int k, double tol);

/// Generating functions for the dual families, |t| < 1 (9.4 also |at| < 1).
IdentityReport genfun_9_1(const BigParams& p, double t, int x, double tol);
IdentityReport genfun_9_2(const BigParams& p, double t, int x, double tol);
IdentityReport genfun_9_3(const BigParams& p, double t, int x, double tol);
IdentityReport genfun_9_4(const LittleParams& p, double t, int x, double tol);

/// Two-term 2phi1 completeness combination equal to 1.
IdentityReport check_7_14(const BigParams& p, double tol);

/// q-binomial sum against its product value; 0 < a < 1/q.
IdentityReport qbinomial_check(double a, double b, const QBase& base, double tol);

/// Jackson's 2phi1 -> 2phi2 transformation at |z| < 1.
IdentityReport jackson_check(double a, double b, double c, double z, const QBase& base,
                             double tol);

/// Big-family special values at the spectral edges against closed forms.
/// n_max is limited by double-precision conditioning (~6); exact-arithmetic
/// coverage to n = 20 lives in the test suite.
IdentityReport big_special_values(const BigParams& p, int n_max, double tol);

/// Series-level symmetry of the dual big family under (a,b,c)->(ab/c,c,b).
IdentityReport symmetry_8_13(const BigParams& p, int n_max, int m_max, double tol);

/// q-difference-equation residuals over a small (n, lambda) sample,
/// normalized by the equation's term scale.
IdentityReport qdiff_little_check(const LittleParams& p, int n_max, double tol);
IdentityReport qdiff_big_check(const BigParams& p, int n_max, double tol);

/// q-Racah -> dual big limit: deviations decrease along Ns and the final one
/// meets tol. Non-monotone sequences inflate the residual above tol.
IdentityReport racah_limit(const BigParams& p, int n_max, int x_max,
                           const std::vector<int>& Ns, double tol);

/// dual big -> dual little as c -> 0^-: deviations at c = -10^{-2}..-10^{-6}
/// decrease strictly; residual is the worst successive ratio, tolerance 1.
IdentityReport dual_c0_limit(const QBase& base, double a, double b, int n_max,
                             int m_max, double tol);

/// dual little at b = 0 against scaled Al-Salam--Carlitz II values.
IdentityReport asc2_limit(const QBase& base, double a, int n_max, int m_max, double tol);

}  // namespace qjacobi
