// SPDX-License-Identifier: Apache-2.0

#include "qjacobi/orthogonality.hpp"

#include <algorithm>
#include <cmath>

#include "qjacobi/spectral.hpp"

namespace qjacobi {

namespace {

double pinf(double x, const QBase& base) { return qpochhammer_inf_value(x, base); }

// Entry-level tail guard shared by the gram builders.
constexpr double kTailGuard = 1e-8;

void finalize(GramReport& rep) {
  rep.max_offdiag_abs = 0.0;
  rep.max_diag_reldev = 0.0;
  for (int i = 0; i < rep.size; ++i) {
    rep.max_diag_reldev =
        std::max(rep.max_diag_reldev,
                 std::abs(rep.at(i, i) - rep.rhs_diag[i]) / std::abs(rep.rhs_diag[i]));
    for (int j = i + 1; j < rep.size; ++j) {
      const double scale = std::sqrt(std::abs(rep.rhs_diag[i] * rep.rhs_diag[j]));
      rep.max_offdiag_abs = std::max(rep.max_offdiag_abs, std::abs(rep.at(i, j)) / scale);
    }
  }
}

}  // namespace

WeightedSupport little_support(int count, const LittleParams& p) {
  if (count < 1) throw DomainError("little_support: count must be positive");
  const double q = p.q(), a = p.a(), b = p.b();
  WeightedSupport s;
  s.family = SupportFamily::little;
  s.points.resize(count);
  s.weights.resize(count);
  for (int n = 0; n < count; ++n) {
    s.points[n] = std::pow(q, n);
    s.weights[n] = qpochhammer(b * q, p.base(), n) * std::pow(a * q, n) /
                   qpochhammer(q, p.base(), n);
  }
  const double envelope = pinf(-std::abs(b) * q, p.base()) / pinf(q, p.base());
  s.tail_bound = envelope * std::pow(a * q, count) / (1.0 - a * q);
  return s;
}

WeightedSupport dual_little_support(int count, const LittleParams& p) {
  if (count < 1) throw DomainError("dual_little_support: count must be positive");
  const double q = p.q(), a = p.a(), b = p.b(), ab = a * b;
  WeightedSupport s;
  s.family = SupportFamily::dual_little;
  s.points.resize(count);
  s.weights.resize(count);
  auto weight = [&](int m) {
    return (1.0 - ab * std::pow(q, 2 * m + 1)) *
           qpochhammer_list({ab * q, b * q}, p.base(), m) * std::pow(a, m) *
           std::pow(q, static_cast<double>(m) * m) /
           ((1.0 - ab * q) * qpochhammer_list({a * q, q}, p.base(), m));
  };
  for (int m = 0; m < count; ++m) {
    s.points[m] = mu_lattice(m, p).mu;
    s.weights[m] = weight(m);
  }
  s.tail_bound = std::abs(weight(count)) / (1.0 - q);
  return s;
}

WeightedSupport big_support_a(int count, const BigParams& p) {
  if (count < 1) throw DomainError("big_support_a: count must be positive");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  WeightedSupport s;
  s.family = SupportFamily::big_a;
  s.points.resize(count);
  s.weights.resize(count);
  for (int n = 0; n < count; ++n) {
    s.points[n] = a * std::pow(q, n + 1);
    s.weights[n] = qpochhammer_list({a * q, a * b * q / c}, p.base(), n) * std::pow(q, n) /
                   qpochhammer_list({a * q / c, q}, p.base(), n);
  }
  s.tail_bound = pinf(a * b * q / c, p.base()) / pinf(q, p.base()) * std::pow(q, count) /
                 (1.0 - q);
  return s;
}

WeightedSupport big_support_c(int count, const BigParams& p) {
  if (count < 1) throw DomainError("big_support_c: count must be positive");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  WeightedSupport s;
  s.family = SupportFamily::big_c;
  s.points.resize(count);
  s.weights.resize(count);
  for (int n = 0; n < count; ++n) {
    s.points[n] = c * std::pow(q, n + 1);
    s.weights[n] = qpochhammer_list({b * q, c * q}, p.base(), n) * std::pow(q, n) /
                   qpochhammer_list({c * q / a, q}, p.base(), n);
  }
  s.tail_bound = pinf(c * q, p.base()) / pinf(q, p.base()) * std::pow(q, count) /
                 (1.0 - q);
  return s;
}

WeightedSupport dual_big_support(int count, const BigParams& p) {
  if (count < 1) throw DomainError("dual_big_support: count must be positive");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  WeightedSupport s;
  s.family = SupportFamily::dual_big;
  s.points.resize(count);
  s.weights.resize(count);
  auto weight = [&](int m) {
    return (1.0 - ab * std::pow(q, 2 * m + 1)) *
           qpochhammer_list({a * q, ab * q, ab * q / c}, p.base(), m) *
           std::pow(-c / a, m) * std::pow(q, 0.5 * m * (m - 1)) /
           ((1.0 - ab * q) * qpochhammer_list({b * q, c * q, q}, p.base(), m));
  };
  for (int m = 0; m < count; ++m) {
    s.points[m] = mu_lattice(m, p).mu;
    s.weights[m] = weight(m);
  }
  s.tail_bound = std::abs(weight(count)) / (1.0 - q);
  return s;
}

WeightedSupport alt_qcharlier_dual_support(int count, double a, const QBase& base) {
  if (count < 1) throw DomainError("alt_qcharlier_dual_support: count must be positive");
  if (!(a > 0.0)) throw DomainError("alt_qcharlier_dual_support: need a > 0");
  const double q = base.q();
  WeightedSupport s;
  s.family = SupportFamily::alt_qcharlier_dual;
  s.points.resize(count);
  s.weights.resize(count);
  auto weight = [&](int n) {
    return qpochhammer(-a, base, n) * (1.0 + a * std::pow(q, 2 * n)) * std::pow(a, n) *
           std::pow(q, 0.5 * n * (3 * n - 1)) / qpochhammer(q, base, n);
  };
  for (int n = 0; n < count; ++n) {
    s.points[n] = std::pow(q, -n) - a * std::pow(q, n);
    s.weights[n] = weight(n);
  }
  s.tail_bound = std::abs(weight(count)) / (1.0 - q);
  return s;
}

// --- little / big family Gram matrices ----------------------------------------
//
// The summands w_n p_m p_m' are assembled as w_n u_m u_m' / (sigma_m sigma_m')
// with u the eigenvector components of the truncated operator at the support
// point and sigma_m the beta prefactor. The u-recurrence runs in its stable
// (pre-peak) direction at every support point, which the raw series/recurrence
// evaluation of p_m at deep index does not.

GramReport gram_little(int K, const LittleParams& p, int trunc) {
  if (K < 1 || trunc < 1) throw DomainError("gram_little: K and trunc must be positive");
  const double q = p.q(), a = p.a(), b = p.b(), ab = a * b;
  const auto sup = little_support(trunc, p);
  const auto T = build_I1(K + 45, p);  // padding keeps the backward-seed transient past row K

  std::vector<double> sigma(K);
  for (int m = 0; m < K; ++m) sigma[m] = beta_prefactor(m, p);

  std::vector<KahanSum> acc(static_cast<size_t>(K) * K);
  std::vector<double> edge(K, 1.0);
  for (int n = 0; n < trunc; ++n) {
    if (sup.weights[n] == 0.0) break;
    const auto u = eigenvector_recurrence(T, sup.points[n]);
    for (int m = 0; m < K; ++m) edge[m] = u[m];
    for (int m = 0; m < K; ++m)
      for (int mp = m; mp < K; ++mp)
        acc[static_cast<size_t>(m) * K + mp].add(sup.weights[n] * u[m] * u[mp]);
  }

  GramReport rep;
  rep.size = K;
  rep.truncation = trunc;
  rep.gram.assign(static_cast<size_t>(K) * K, 0.0);
  rep.rhs_diag.resize(K);
  const double head = pinf(ab * q * q, p.base()) / pinf(a * q, p.base());
  for (int m = 0; m < K; ++m) {
    rep.rhs_diag[m] = head * (1.0 - ab * q) * std::pow(a * q, m) *
                      qpochhammer_list({b * q, q}, p.base(), m) /
                      ((1.0 - ab * std::pow(q, 2 * m + 1)) *
                       qpochhammer_list({ab * q, a * q}, p.base(), m));
    for (int mp = m; mp < K; ++mp) {
      const double v = acc[static_cast<size_t>(m) * K + mp].value() / (sigma[m] * sigma[mp]);
      rep.gram[static_cast<size_t>(m) * K + mp] = v;
      rep.gram[static_cast<size_t>(mp) * K + m] = v;
    }
  }
  // beyond the edge the polynomial values drift slowly toward their value at
  // zero, so the last included column scales the omitted mass
  double amax = 1.0;
  for (int m = 0; m < K; ++m) amax = std::max(amax, std::abs(edge[m] / sigma[m]));
  rep.tail_bound = 4.0 * sup.tail_bound * amax * amax;
  if (rep.tail_bound > kTailGuard)
    throw NonConvergence("gram_little: truncation tail above guard");
  finalize(rep);
  return rep;
}

GramReport gram_big(int K, const BigParams& p, int trunc) {
  if (K < 1 || trunc < 1) throw DomainError("gram_big: K and trunc must be positive");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  const auto supA = big_support_a(trunc, p);
  const auto supC = big_support_c(trunc, p);
  const auto T = build_I2(K + 45, p);

  const double prefA = pinf(b * q, p.base()) * pinf(c * q, p.base()) /
                       (pinf(ab * q * q, p.base()) * pinf(c / a, p.base()));
  const double prefC = pinf(a * q, p.base()) * pinf(ab * q / c, p.base()) /
                       (pinf(ab * q * q, p.base()) * pinf(a / c, p.base()));

  std::vector<double> sigma(K);
  for (int m = 0; m < K; ++m) sigma[m] = beta_prefactor(m, p);

  std::vector<KahanSum> acc(static_cast<size_t>(K) * K);
  std::vector<double> edge(K, 1.0);
  for (int n = 0; n < trunc; ++n) {
    const auto ua = eigenvector_recurrence(T, supA.points[n]);
    const auto uc = eigenvector_recurrence(T, supC.points[n]);
    for (int m = 0; m < K; ++m) edge[m] = std::max(std::abs(ua[m]), std::abs(uc[m]));
    for (int m = 0; m < K; ++m)
      for (int mp = m; mp < K; ++mp) {
        acc[static_cast<size_t>(m) * K + mp].add(prefA * supA.weights[n] * ua[m] * ua[mp]);
        acc[static_cast<size_t>(m) * K + mp].add(prefC * supC.weights[n] * uc[m] * uc[mp]);
      }
  }

  GramReport rep;
  rep.size = K;
  rep.truncation = trunc;
  rep.gram.assign(static_cast<size_t>(K) * K, 0.0);
  rep.rhs_diag.resize(K);
  for (int m = 0; m < K; ++m) {
    rep.rhs_diag[m] = (1.0 - ab * q) * qpochhammer_list({b * q, ab * q / c, q}, p.base(), m) *
                      std::pow(-a * c, m) * std::pow(q, 0.5 * m * (m + 3)) /
                      ((1.0 - ab * std::pow(q, 2 * m + 1)) *
                       qpochhammer_list({a * q, ab * q, c * q}, p.base(), m));
    for (int mp = m; mp < K; ++mp) {
      const double v = acc[static_cast<size_t>(m) * K + mp].value() / (sigma[m] * sigma[mp]);
      rep.gram[static_cast<size_t>(m) * K + mp] = v;
      rep.gram[static_cast<size_t>(mp) * K + m] = v;
    }
  }
  double amax = 1.0;
  for (int m = 0; m < K; ++m) amax = std::max(amax, std::abs(edge[m] / sigma[m]));
  rep.tail_bound =
      4.0 * (prefA * supA.tail_bound + prefC * supC.tail_bound) * amax * amax;
  if (rep.tail_bound > kTailGuard)
    throw NonConvergence("gram_big: truncation tail above guard");
  finalize(rep);
  return rep;
}

// --- dual-family Gram matrices ---------------------------------------------------
// Values are evaluated by the terminating series, which is well conditioned at
// every lattice point; the q^{m^2}-type weights underflow to exact zero well
// before the lattice growth of the values could overflow, so the loops stop at
// the first zero weight.

GramReport gram_dual_little(int K, const LittleParams& p, int trunc) {
  if (K < 1 || trunc < 1)
    throw DomainError("gram_dual_little: K and trunc must be positive");
  const double q = p.q(), a = p.a(), b = p.b(), ab = a * b;
  const auto sup = dual_little_support(trunc, p);

  std::vector<KahanSum> acc(static_cast<size_t>(K) * K);
  std::vector<double> d(K);
  int used = 0;
  for (int m = 0; m < trunc; ++m) {
    if (sup.weights[m] == 0.0) break;
    used = m + 1;
    for (int n = 0; n < K; ++n) d[n] = dual_little(n, m, p);
    for (int n = 0; n < K; ++n)
      for (int np = n; np < K; ++np)
        acc[static_cast<size_t>(n) * K + np].add(sup.weights[m] * d[n] * d[np]);
  }

  GramReport rep;
  rep.size = K;
  rep.truncation = used;
  rep.gram.assign(static_cast<size_t>(K) * K, 0.0);
  rep.rhs_diag.resize(K);
  const double head = pinf(ab * q * q, p.base()) / pinf(a * q, p.base());
  for (int n = 0; n < K; ++n) {
    rep.rhs_diag[n] = head * qpochhammer(q, p.base(), n) * std::pow(a * q, -n) /
                      qpochhammer(b * q, p.base(), n);
    for (int np = n; np < K; ++np) {
      const double v = acc[static_cast<size_t>(n) * K + np].value();
      rep.gram[static_cast<size_t>(n) * K + np] = v;
      rep.gram[static_cast<size_t>(np) * K + n] = v;
    }
  }
  if (used == trunc) {
    double dmax = 1.0;
    for (int n = 0; n < K; ++n) dmax = std::max(dmax, std::abs(dual_little(n, trunc, p)));
    rep.tail_bound = sup.tail_bound * dmax * dmax;
  } else {
    rep.tail_bound = 0.0;  // weights identically underflowed
  }
  if (rep.tail_bound > kTailGuard)
    throw NonConvergence("gram_dual_little: truncation tail above guard");
  finalize(rep);
  return rep;
}

GramReport gram_dual_big(int K, const BigParams& p, int trunc) {
  if (K < 1 || trunc < 1) throw DomainError("gram_dual_big: K and trunc must be positive");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  const auto sup = dual_big_support(trunc, p);

  std::vector<KahanSum> acc(static_cast<size_t>(K) * K);
  std::vector<double> d(K);
  int used = 0;
  for (int m = 0; m < trunc; ++m) {
    if (sup.weights[m] == 0.0) break;
    used = m + 1;
    for (int n = 0; n < K; ++n) d[n] = dual_big(n, m, p);
    for (int n = 0; n < K; ++n)
      for (int np = n; np < K; ++np)
        acc[static_cast<size_t>(n) * K + np].add((sup.weights[m] * d[n]) * d[np]);
  }

  GramReport rep;
  rep.size = K;
  rep.truncation = used;
  rep.gram.assign(static_cast<size_t>(K) * K, 0.0);
  rep.rhs_diag.resize(K);
  const double head = pinf(ab * q * q, p.base()) * pinf(c / a, p.base()) /
                      (pinf(b * q, p.base()) * pinf(c * q, p.base()));
  for (int n = 0; n < K; ++n) {
    rep.rhs_diag[n] = head * qpochhammer_list({a * q / c, q}, p.base(), n) /
                      (qpochhammer_list({a * q, ab * q / c}, p.base(), n) * std::pow(q, n));
    for (int np = n; np < K; ++np) {
      const double v = acc[static_cast<size_t>(n) * K + np].value();
      rep.gram[static_cast<size_t>(n) * K + np] = v;
      rep.gram[static_cast<size_t>(np) * K + n] = v;
    }
  }
  if (used == trunc) {
    double dmax = 1.0;
    for (int n = 0; n < K; ++n) dmax = std::max(dmax, std::abs(dual_big(n, trunc, p)));
    rep.tail_bound = std::abs(sup.tail_bound) * dmax * dmax;
  } else {
    rep.tail_bound = 0.0;
  }
  if (rep.tail_bound > kTailGuard)
    throw NonConvergence("gram_dual_big: truncation tail above guard");
  finalize(rep);
  return rep;
}

IdentityReport cross_orth_dual_big(int n, int n_prime, const BigParams& p, int trunc) {
  if (n < 0 || n_prime < 0 || trunc < 1)
    throw DomainError("cross_orth_dual_big: bad arguments");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  const BigParams swapped(p.base(), b, a, ab * q / c);

  KahanSum sum;
  double max_term = 0.0;
  long used = 0;
  for (int m = 0; m < trunc; ++m) {
    const double w = ((m % 2 == 0) ? 1.0 : -1.0) *
                     (1.0 - ab * std::pow(q, 2 * m + 1)) *
                     qpochhammer(ab * q, p.base(), m) * std::pow(q, 0.5 * m * (m - 1)) /
                     ((1.0 - ab * q) * qpochhammer(q, p.base(), m));
    if (w == 0.0) break;
    const double term = (w * dual_big(n, m, p)) * dual_big(n_prime, m, swapped);
    sum.add(term);
    max_term = std::max(max_term, std::abs(term));
    used = m + 1;
  }
  const double residual = std::abs(sum.value()) / std::max(1.0, max_term);
  return make_report(
      "cross-8.12",
      {{"q", q}, {"a", a}, {"b", b}, {"c", c}, {"n", double(n)}, {"n_prime", double(n_prime)}},
      sum.value(), 0.0, residual, 1e-10, used);
}

GramReport gram_functions_big(int K, const BigParams& p, int trunc,
                              BigFunctionBranch branch) {
  if (K < 1 || trunc < 1)
    throw DomainError("gram_functions_big: K and trunc must be positive");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  const bool primed = branch == BigFunctionBranch::FPrime;
  // F  = (abq/c;q)_m (-c)^m q^{m(m+1)/2}/(cq;q)_m  D_n(mu(m); a, b, c)
  // F' = (bq;q)_m    (-a)^m q^{m(m+1)/2}/(aq;q)_m  D_n(mu(m); b, a, ab/c)
  const BigParams dp = primed ? BigParams(p.base(), b, a, ab / c) : p;
  const double pref =
      primed ? pinf(a * q, p.base()) * pinf(ab * q / c, p.base()) /
                   (pinf(ab * q * q, p.base()) * pinf(a / c, p.base()))
             : pinf(b * q, p.base()) * pinf(c * q, p.base()) /
                   (pinf(ab * q * q, p.base()) * pinf(c / a, p.base()));

  std::vector<KahanSum> acc(static_cast<size_t>(K) * K);
  std::vector<double> d(K);
  double R = 1.0;  // rho(m) * prefactor(m)^2, advanced by exact ratio factors
  double last_R = 1.0;
  int used = 0;
  for (int m = 0; m < trunc; ++m) {
    if (R == 0.0) break;
    used = m + 1;
    last_R = R;
    for (int n = 0; n < K; ++n) d[n] = dual_big(n, m, dp);
    for (int n = 0; n < K; ++n)
      for (int np = n; np < K; ++np)
        acc[static_cast<size_t>(n) * K + np].add((R * d[n]) * d[np]);
    const double qm1 = std::pow(q, m + 1);
    const double rho_ratio = (1.0 - ab * q * qm1 * qm1) / (1.0 - ab * qm1 * qm1 / q) *
                             (1.0 - a * qm1) * (1.0 - ab * qm1) * (1.0 - c * qm1) /
                             ((1.0 - b * qm1) * (1.0 - ab * qm1 / c) * (1.0 - qm1)) /
                             (-a * c * qm1 * q);
    const double pre_ratio = primed ? (1.0 - b * qm1) * (-a) * qm1 / (1.0 - a * qm1)
                                    : (1.0 - ab * qm1 / c) * (-c) * qm1 / (1.0 - c * qm1);
    R *= rho_ratio * pre_ratio * pre_ratio;
  }

  GramReport rep;
  rep.size = K;
  rep.truncation = used;
  rep.gram.assign(static_cast<size_t>(K) * K, 0.0);
  rep.rhs_diag.resize(K);
  for (int n = 0; n < K; ++n) {
    if (primed)
      rep.rhs_diag[n] = qpochhammer_list({c * q / a, q}, p.base(), n) /
                        (qpochhammer_list({b * q, c * q}, p.base(), n) * std::pow(q, n));
    else
      rep.rhs_diag[n] = qpochhammer_list({a * q / c, q}, p.base(), n) /
                        (qpochhammer_list({a * q, ab * q / c}, p.base(), n) * std::pow(q, n));
    for (int np = n; np < K; ++np) {
      const double v = pref * acc[static_cast<size_t>(n) * K + np].value();
      rep.gram[static_cast<size_t>(n) * K + np] = v;
      rep.gram[static_cast<size_t>(np) * K + n] = v;
    }
  }
  if (used == trunc && R != 0.0) {
    double dmax = 1.0;
    for (int n = 0; n < K; ++n) dmax = std::max(dmax, std::abs(dual_big(n, trunc, dp)));
    rep.tail_bound = pref * std::abs(R) * dmax * dmax / (1.0 - q);
  } else {
    rep.tail_bound = std::abs(pref * last_R) * 0.0;
  }
  if (rep.tail_bound > kTailGuard)
    throw NonConvergence("gram_functions_big: truncation tail above guard");
  finalize(rep);
  return rep;
}

GramReport gram_alt_qcharlier_dual(int K, double a, const QBase& base, int trunc) {
  if (K < 1 || trunc < 1)
    throw DomainError("gram_alt_qcharlier_dual: K and trunc must be positive");
  if (!(a > 0.0)) throw DomainError("gram_alt_qcharlier_dual: need a > 0");
  const double q = base.q();
  const auto sup = alt_qcharlier_dual_support(trunc, a, base);

  std::vector<KahanSum> acc(static_cast<size_t>(K) * K);
  std::vector<double> d(K);
  int used = 0;
  for (int n = 0; n < trunc; ++n) {
    if (sup.weights[n] == 0.0) break;
    used = n + 1;
    for (int m = 0; m < K; ++m) d[m] = alt_qcharlier_dual(m, n, a, base);
    for (int m = 0; m < K; ++m)
      for (int mp = m; mp < K; ++mp)
        acc[static_cast<size_t>(m) * K + mp].add((sup.weights[n] * d[m]) * d[mp]);
  }

  GramReport rep;
  rep.size = K;
  rep.truncation = used;
  rep.gram.assign(static_cast<size_t>(K) * K, 0.0);
  rep.rhs_diag.resize(K);
  const double head = pinf(-a, base);
  for (int m = 0; m < K; ++m) {
    rep.rhs_diag[m] = head * qpochhammer(q, base, m) /
                      (std::pow(a, m) * std::pow(q, 0.5 * m * (m + 1)));
    for (int mp = m; mp < K; ++mp) {
      const double v = acc[static_cast<size_t>(m) * K + mp].value();
      rep.gram[static_cast<size_t>(m) * K + mp] = v;
      rep.gram[static_cast<size_t>(mp) * K + m] = v;
    }
  }
  if (used == trunc) {
    double dmax = 1.0;
    for (int m = 0; m < K; ++m)
      dmax = std::max(dmax, std::abs(alt_qcharlier_dual(m, trunc, a, base)));
    rep.tail_bound = sup.tail_bound * dmax * dmax;
  } else {
    rep.tail_bound = 0.0;
  }
  if (rep.tail_bound > kTailGuard)
    throw NonConvergence("gram_alt_qcharlier_dual: truncation tail above guard");
  finalize(rep);
  return rep;
}

}  // namespace qjacobi
