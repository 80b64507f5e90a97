// SPDX-License-Identifier: Apache-2.0
//
// The polynomial families: little and big q-Jacobi by terminating series and
// by three-term recurrence, their duals on the q-quadratic lattice
// mu(m) = q^{-m} + ab q^{m+1}, Al-Salam--Carlitz II, the alternative
// q-Charlier pair, q-difference-equation residuals, and the eigenvector
// expansion coefficients beta_m(lambda).

#pragma once

#include <vector>

#include "qjacobi/qcore.hpp"

namespace qjacobi {

/// Little-family parameters: 0 < a < 1/q, b < 1/q.
class LittleParams {
public:
  LittleParams(QBase base, double a, double b) : base_(base), a_(a), b_(b) {
    const double qinv = 1.0 / base_.q();
    if (!(a > 0.0) || !(a < qinv))
      throw DomainError("LittleParams: need 0 < a < 1/q");
    if (!(b < qinv)) throw DomainError("LittleParams: need b < 1/q");
  }
  const QBase& base() const noexcept { return base_; }
  double q() const noexcept { return base_.q(); }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  /// Lowest weight l with a = q^{2l-1}.
  double lowest_weight() const {
    return 0.5 * (1.0 + std::log(a_) / std::log(base_.q()));
  }

private:
  QBase base_;
  double a_, b_;
};

/// Big-family parameters: 0 < a < 1/q, 0 < b < 1/q, c < 0.
class BigParams {
public:
  BigParams(QBase base, double a, double b, double c)
      : base_(base), a_(a), b_(b), c_(c) {
    const double qinv = 1.0 / base_.q();
    if (!(a > 0.0) || !(a < qinv))
      throw DomainError("BigParams: need 0 < a < 1/q");
    if (!(b > 0.0) || !(b < qinv))
      throw DomainError("BigParams: need 0 < b < 1/q");
    if (!(c < 0.0)) throw DomainError("BigParams: need c < 0");
  }
  const QBase& base() const noexcept { return base_; }
  double q() const noexcept { return base_.q(); }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }

private:
  QBase base_;
  double a_, b_, c_;
};

/// A point of the q-quadratic lattice mu(m) = q^{-m} + ab q^{m+1}.
struct LatticePoint {
  int m = 0;
  double mu = 0.0;
};

LatticePoint mu_lattice(int m, const LittleParams& p);
LatticePoint mu_lattice(int m, const BigParams& p);

// --- canonical-basis coefficient data -------------------------------------
// c_n of the monomial basis f_n = c_n x^n, and the ladder-action factors.

double basis_coefficient(int n, const LittleParams& p);
double jplus_coefficient(int n, const LittleParams& p);   // f_n -> f_{n+1}
double jminus_coefficient(int n, const LittleParams& p);  // f_n -> f_{n-1}

// --- little q-Jacobi -------------------------------------------------------

/// p_n(lambda; a,b|q) as the terminating 2phi1 series.
double little_qjacobi(int n, double lambda, const LittleParams& p);

/// Same value by upward three-term recurrence from p_{-1} = 0, p_0 = 1.
double little_qjacobi_recur(int n, double lambda, const LittleParams& p);

/// All of p_0..p_n at one lambda in a single recurrence sweep.
std::vector<double> little_qjacobi_sweep(int n, double lambda, const LittleParams& p);

// --- big q-Jacobi ----------------------------------------------------------

/// P_n(lambda; a,b,c;q) as the terminating 3phi2 series.
double big_qjacobi(int n, double lambda, const BigParams& p);
double big_qjacobi_recur(int n, double lambda, const BigParams& p);
std::vector<double> big_qjacobi_sweep(int n, double lambda, const BigParams& p);

// --- duals on the lattice ---------------------------------------------------

/// d_n(mu(m); a,b|q), a degree-n polynomial in mu(m) (3phi1 series).
double dual_little(int n, int m, const LittleParams& p);
double dual_little_recur(int n, int m, const LittleParams& p);
std::vector<double> dual_little_sweep(int n, int m, const LittleParams& p);

/// D_n(mu(m); a,b,c|q) (3phi2 series).
double dual_big(int n, int m, const BigParams& p);
double dual_big_recur(int n, int m, const BigParams& p);
std::vector<double> dual_big_sweep(int n, int m, const BigParams& p);

// --- reductions ------------------------------------------------------------

/// Al-Salam--Carlitz II value V_n^{(a)}(q^{-x}; q).
double asc2(int n, int x_exponent, double a, const QBase& base);

/// Alternative q-Charlier K_n(x; a; q).
double alt_qcharlier(int n, double x, double a, const QBase& base);

/// Its dual d_m(mu(n); a; q) on the lattice mu(n) = q^{-n} - a q^n.
double alt_qcharlier_dual(int m, int n, double a, const QBase& base);

// --- q-difference equations -------------------------------------------------
// LHS - RHS of the q-difference equation at (n, lambda); exactly 0 in exact
// arithmetic. Callers normalize by their own scale.

double qdiff_residual_little(int n, double lambda, const LittleParams& p);
double qdiff_residual_big(int n, double lambda, const BigParams& p);

// --- eigenvector expansion coefficients --------------------------------------

/// The square-root weight multiplying p_m (resp. P_m) in beta_m.
/// Throws DomainError if the radicand is negative.
double beta_prefactor(int m, const LittleParams& p);
double beta_prefactor(int m, const BigParams& p);

/// beta_m(lambda) for the little-family operator eigenvectors.
double beta_coefficient(int m, double lambda, const LittleParams& p);

/// beta_m(lambda) for the big-family operator eigenvectors.
double beta_coefficient(int m, double lambda, const BigParams& p);

}  // namespace qjacobi
