// SPDX-License-Identifier: Apache-2.0

#include "qjacobi/families.hpp"

#include <cmath>

namespace qjacobi {

namespace {

double qpow(const QBase& base, double e) { return std::pow(base.q(), e); }

}  // namespace

LatticePoint mu_lattice(int m, const LittleParams& p) {
  if (m < 0) throw DomainError("mu_lattice: m must be nonnegative");
  return {m, qpow(p.base(), -m) + p.a() * p.b() * qpow(p.base(), m + 1)};
}

LatticePoint mu_lattice(int m, const BigParams& p) {
  if (m < 0) throw DomainError("mu_lattice: m must be nonnegative");
  return {m, qpow(p.base(), -m) + p.a() * p.b() * qpow(p.base(), m + 1)};
}

double basis_coefficient(int n, const LittleParams& p) {
  if (n < 0) throw DomainError("basis_coefficient: n must be nonnegative");
  const double aq = p.a() * p.q();
  return std::pow(p.a(), -n / 4.0) *
         std::sqrt(qpochhammer(aq, p.base(), n) / qpochhammer(p.q(), p.base(), n));
}

double jplus_coefficient(int n, const LittleParams& p) {
  if (n < 0) throw DomainError("jplus_coefficient: n must be nonnegative");
  const double two_l = 1.0 + std::log(p.a()) / std::log(p.q());
  return std::sqrt(q_number(two_l + n, p.base()) * q_number(n + 1.0, p.base()));
}

double jminus_coefficient(int n, const LittleParams& p) {
  if (n < 1) throw DomainError("jminus_coefficient: n must be positive");
  const double two_l = 1.0 + std::log(p.a()) / std::log(p.q());
  return std::sqrt(q_number(two_l + n - 1.0, p.base()) * q_number(n, p.base()));
}

// --- little q-Jacobi ---------------------------------------------------------

double little_qjacobi(int n, double lambda, const LittleParams& p) {
  if (n < 0) throw DomainError("little_qjacobi: n must be nonnegative");
  const double q = p.q();
  PhiSpec spec{{qpow(p.base(), -n), p.a() * p.b() * qpow(p.base(), n + 1)},
               {p.a() * q},
               p.base(),
               q * lambda};
  return phi_value(spec);
}

std::vector<double> little_qjacobi_sweep(int n, double lambda, const LittleParams& p) {
  const double q = p.q(), a = p.a(), b = p.b(), ab = a * b;
  std::vector<double> vals(n + 1);
  double prev = 0.0, cur = 1.0;
  vals[0] = cur;
  for (int j = 0; j < n; ++j) {
    const double qj = std::pow(q, j);
    const double A = qj * (1.0 - a * q * qj) * (1.0 - ab * q * qj) /
                     ((1.0 - ab * q * qj * qj) * (1.0 - ab * q * q * qj * qj));
    const double C = a * qj * (1.0 - qj) * (1.0 - b * qj) /
                     ((1.0 - ab * qj * qj) * (1.0 - ab * q * qj * qj));
    const double next = ((A + C - lambda) * cur - C * prev) / A;
    prev = cur;
    cur = next;
    vals[j + 1] = cur;
  }
  return vals;
}

double little_qjacobi_recur(int n, double lambda, const LittleParams& p) {
  if (n < 0) throw DomainError("little_qjacobi_recur: n must be nonnegative");
  return little_qjacobi_sweep(n, lambda, p).back();
}

// --- big q-Jacobi -------------------------------------------------------------

double big_qjacobi(int n, double lambda, const BigParams& p) {
  if (n < 0) throw DomainError("big_qjacobi: n must be nonnegative");
  const double q = p.q();
  PhiSpec spec{{qpow(p.base(), -n), p.a() * p.b() * qpow(p.base(), n + 1), lambda},
               {p.a() * q, p.c() * q},
               p.base(),
               q};
  return phi_value(spec);
}

std::vector<double> big_qjacobi_sweep(int n, double lambda, const BigParams& p) {
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  std::vector<double> vals(n + 1);
  double prev = 0.0, cur = 1.0;
  vals[0] = cur;
  for (int j = 0; j < n; ++j) {
    const double qj1 = std::pow(q, j + 1);
    const double qj = qj1 / q;
    const double A = (1.0 - a * qj1) * (1.0 - c * qj1) * (1.0 - ab * qj1) /
                     ((1.0 - ab * q * qj * qj) * (1.0 - ab * q * q * qj * qj));
    const double C = -a * c * qj1 * (1.0 - qj) * (1.0 - b * qj) * (1.0 - ab * qj / c) /
                     ((1.0 - ab * qj * qj) * (1.0 - ab * q * qj * qj));
    const double next = ((lambda + A + C - 1.0) * cur - C * prev) / A;
    prev = cur;
    cur = next;
    vals[j + 1] = cur;
  }
  return vals;
}

double big_qjacobi_recur(int n, double lambda, const BigParams& p) {
  if (n < 0) throw DomainError("big_qjacobi_recur: n must be nonnegative");
  return big_qjacobi_sweep(n, lambda, p).back();
}

// --- dual little ---------------------------------------------------------------

double dual_little(int n, int m, const LittleParams& p) {
  if (n < 0 || m < 0) throw DomainError("dual_little: n, m must be nonnegative");
  PhiSpec spec{{qpow(p.base(), -m), p.a() * p.b() * qpow(p.base(), m + 1),
                qpow(p.base(), -n)},
               {p.b() * p.q()},
               p.base(),
               qpow(p.base(), n) / p.a()};
  return phi_value(spec);
}

std::vector<double> dual_little_sweep(int n, int m, const LittleParams& p) {
  const double q = p.q(), a = p.a(), b = p.b();
  const double mu = mu_lattice(m, p).mu;
  std::vector<double> vals(n + 1);
  double prev = 0.0, cur = 1.0;
  vals[0] = cur;
  for (int j = 0; j < n; ++j) {
    const double qmj = std::pow(q, -j);
    const double up = -a * qmj * (1.0 - b * std::pow(q, j + 1));
    const double mid = qmj * (1.0 + a);
    const double dn = -qmj * (1.0 - std::pow(q, j));
    // up*d_{j+1} + mid*d_j + dn*d_{j-1} = mu*d_j
    const double next = ((mu - mid) * cur - dn * prev) / up;
    prev = cur;
    cur = next;
    vals[j + 1] = cur;
  }
  return vals;
}

double dual_little_recur(int n, int m, const LittleParams& p) {
  if (n < 0 || m < 0) throw DomainError("dual_little_recur: n, m must be nonnegative");
  return dual_little_sweep(n, m, p).back();
}

// --- dual big -------------------------------------------------------------------

double dual_big(int n, int m, const BigParams& p) {
  if (n < 0 || m < 0) throw DomainError("dual_big: n, m must be nonnegative");
  PhiSpec spec{{qpow(p.base(), -m), p.a() * p.b() * qpow(p.base(), m + 1),
                qpow(p.base(), -n)},
               {p.a() * p.q(), p.a() * p.b() * p.q() / p.c()},
               p.base(),
               p.a() * qpow(p.base(), n + 1) / p.c()};
  return phi_value(spec);
}

std::vector<double> dual_big_sweep(int n, int m, const BigParams& p) {
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  const double mu = mu_lattice(m, p).mu;
  std::vector<double> vals(n + 1);
  double prev = 0.0, cur = 1.0;
  vals[0] = cur;
  for (int j = 0; j < n; ++j) {
    const double qj = std::pow(q, j);
    const double qj1 = qj * q;
    // coefficients of the shift in the spectral index, from the J-action
    const double up = (c / a) * (1.0 - a * qj1) * (1.0 - a * b * qj1 / c) /
                      (q * qj * qj);
    const double dn = (c / a) * (1.0 - qj) * (1.0 - a * qj / c) / (qj * qj);
    const double mid = ((a * b + a * c + a + c) / qj - c * (1.0 + q) / (q * qj * qj)) / a;
    const double next = ((mu - mid) * cur - dn * prev) / up;
    prev = cur;
    cur = next;
    vals[j + 1] = cur;
  }
  return vals;
}

double dual_big_recur(int n, int m, const BigParams& p) {
  if (n < 0 || m < 0) throw DomainError("dual_big_recur: n, m must be nonnegative");
  return dual_big_sweep(n, m, p).back();
}

// --- reductions -------------------------------------------------------------------

double asc2(int n, int x_exponent, double a, const QBase& base) {
  if (n < 0 || x_exponent < 0)
    throw DomainError("asc2: n, x_exponent must be nonnegative");
  if (!(a > 0.0)) throw DomainError("asc2: need a > 0");
  PhiSpec spec{{qpow(base, -n), qpow(base, -x_exponent)},
               {},
               base,
               qpow(base, n) / a};
  const double prefactor =
      std::pow(-a, n) * qpow(base, -0.5 * n * (n - 1));
  return prefactor * phi_value(spec);
}

double alt_qcharlier(int n, double x, double a, const QBase& base) {
  if (n < 0) throw DomainError("alt_qcharlier: n must be nonnegative");
  if (!(a > 0.0)) throw DomainError("alt_qcharlier: need a > 0");
  PhiSpec spec{{qpow(base, -n), -a * qpow(base, n)}, {0.0}, base, base.q() * x};
  return phi_value(spec);
}

double alt_qcharlier_dual(int m, int n, double a, const QBase& base) {
  if (n < 0 || m < 0) throw DomainError("alt_qcharlier_dual: m, n must be nonnegative");
  if (!(a > 0.0)) throw DomainError("alt_qcharlier_dual: need a > 0");
  PhiSpec spec{{qpow(base, -n), -a * qpow(base, n), qpow(base, -m)},
               {},
               base,
               -qpow(base, m) / a};
  return phi_value(spec);
}

// --- q-difference residuals ----------------------------------------------------------

double qdiff_residual_little(int n, double lambda, const LittleParams& p) {
  if (lambda == 0.0) throw DomainError("qdiff_residual_little: lambda must be nonzero");
  const double q = p.q(), a = p.a(), b = p.b();
  const double lhs = (qpow(p.base(), -n) + a * b * qpow(p.base(), n + 1)) *
                     little_qjacobi(n, lambda, p);
  const double rhs = a / lambda * (b * q * lambda - 1.0) * little_qjacobi(n, q * lambda, p) +
                     (1.0 + a) / lambda * little_qjacobi(n, lambda, p) +
                     (lambda - 1.0) / lambda * little_qjacobi(n, lambda / q, p);
  return lhs - rhs;
}

double qdiff_residual_big(int n, double lambda, const BigParams& p) {
  if (lambda == 0.0) throw DomainError("qdiff_residual_big: lambda must be nonzero");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  const double l2 = lambda * lambda;
  const double lhs = (qpow(p.base(), -n) + a * b * qpow(p.base(), n + 1)) *
                     big_qjacobi(n, lambda, p);
  const double rhs =
      a * q / l2 * (lambda - 1.0) * (b * lambda - c) * big_qjacobi(n, q * lambda, p) -
      (a * c * q * (1.0 + q) / l2 - q * (a * b + a * c + a + c) / lambda) *
          big_qjacobi(n, lambda, p) +
      (lambda - a * q) * (lambda - c * q) / l2 * big_qjacobi(n, lambda / q, p);
  return lhs - rhs;
}

// --- expansion coefficients -----------------------------------------------------------

double beta_prefactor(int m, const LittleParams& p) {
  if (m < 0) throw DomainError("beta_prefactor: m must be nonnegative");
  const double q = p.q(), a = p.a(), b = p.b();
  const double radicand =
      qpochhammer_list({a * b * q, a * q}, p.base(), m) *
      (1.0 - a * b * qpow(p.base(), 2 * m + 1)) /
      (qpochhammer_list({b * q, q}, p.base(), m) * (1.0 - a * b * q) *
       std::pow(a * q, m));
  if (!(radicand >= 0.0))
    throw DomainError("beta_prefactor: negative radicand (little family)");
  return std::sqrt(radicand);
}

double beta_prefactor(int m, const BigParams& p) {
  if (m < 0) throw DomainError("beta_prefactor: m must be nonnegative");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  const double radicand =
      qpochhammer_list({a * b * q, a * q, c * q}, p.base(), m) *
      (1.0 - a * b * qpow(p.base(), 2 * m + 1)) /
      (qpochhammer_list({a * b * q / c, b * q, q}, p.base(), m) * (1.0 - a * b * q) *
       std::pow(-a * c, m));
  if (!(radicand >= 0.0))
    throw DomainError("beta_prefactor: negative radicand (big family)");
  return std::sqrt(radicand) * qpow(p.base(), -m * (m + 3) / 4.0);
}

double beta_coefficient(int m, double lambda, const LittleParams& p) {
  return beta_prefactor(m, p) * little_qjacobi(m, lambda, p);
}

double beta_coefficient(int m, double lambda, const BigParams& p) {
  return beta_prefactor(m, p) * big_qjacobi(m, lambda, p);
}

}  // namespace qjacobi
