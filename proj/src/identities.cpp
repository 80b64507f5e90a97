// SPDX-License-Identifier: Apache-2.0

#include "qjacobi/identities.hpp"

#include <algorithm>
#include <cmath>

#include "qjacobi/spectral.hpp"

namespace qjacobi {

namespace {

double pinf(double x, const QBase& base) { return qpochhammer_inf_value(x, base); }

double rel_residual(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

// Residual against both the value scale and the summation's term scale: once
// the largest term dwarfs the value, agreement below eps * max-term is all a
// cancelling sum can deliver.
double conditioned_residual(double lhs, double rhs, double max_term, double tol) {
  const double eps = 2.22e-16;
  const double denom = std::max({1.0, std::abs(rhs), 256.0 * eps * max_term / tol});
  return std::abs(lhs - rhs) / denom;
}

}  // namespace

IdentityReport check_A1(const LittleParams& p, double tol) {
  const double q = p.q(), a = p.a(), b = p.b(), ab = a * b;
  KahanSum sum;
  long used = 0;
  for (int n = 0; n < 10000; ++n) {
    const double w = qpochhammer_list({ab * q, b * q}, p.base(), n) *
                     (1.0 - ab * std::pow(q, 2 * n + 1)) * std::pow(a, n) *
                     std::pow(q, static_cast<double>(n) * n) /
                     (qpochhammer_list({a * q, q}, p.base(), n) * (1.0 - ab * q));
    if (w != 0.0) {
      sum.add(w);
      used = n + 1;
    }
    if (std::abs(w) < 1e-22 * std::max(1.0, std::abs(sum.value())) && n > 3) break;
  }
  const double lhs = sum.value();
  const double rhs = pinf(ab * q * q, p.base()) / pinf(a * q, p.base());
  return make_report("sum-A.1", {{"q", q}, {"a", a}, {"b", b}}, lhs, rhs,
                     rel_residual(lhs, rhs), tol, used);
}

IdentityReport check_A4(double a, double b, double c, double d, const QBase& base,
                        double tol) {
  if (!(a > 0.0)) throw DomainError("check_A4: need a > 0");
  const double q = base.q();
  const double z = a * q / (b * c * d);
  if (!(std::abs(z) < 1.0)) throw DomainError("check_A4: need |aq/(bcd)| < 1");
  const double ra = std::sqrt(a);
  PhiSpec spec{{a, q * ra, -q * ra, b, c, d},
               {ra, -ra, a * q / b, a * q / c, a * q / d},
               base,
               z};
  const auto ev = phi_eval(spec, tol * 0.01);
  const double lhs = ev.result.value;
  const double rhs = pinf(a * q, base) * pinf(a * q / (b * c), base) *
                     pinf(a * q / (b * d), base) * pinf(a * q / (c * d), base) /
                     (pinf(a * q / b, base) * pinf(a * q / c, base) *
                      pinf(a * q / d, base) * pinf(a * q / (b * c * d), base));
  return make_report("sum-A.4",
                     {{"q", q}, {"a", a}, {"b", b}, {"c", c}, {"d", d}}, lhs, rhs,
                     rel_residual(lhs, rhs), tol, ev.result.terms_used);
}

IdentityReport check_A5(double a, double b, const QBase& base, double tol) {
  if (!(a > 0.0)) throw DomainError("check_A5: need a > 0");
  const double q = base.q();
  const double ra = std::sqrt(a);
  PhiSpec spec{{a, q * ra, -q * ra, b},
               {ra, -ra, a * q / b, 0.0, 0.0},
               base,
               a * q / b};
  const auto ev = phi_eval(spec, tol * 0.01);
  const double lhs = ev.result.value;
  const double rhs = pinf(a * q, base) / pinf(a * q / b, base);
  return make_report("sum-A.5", {{"q", q}, {"a", a}, {"b", b}}, lhs, rhs,
                     rel_residual(lhs, rhs), tol, ev.result.terms_used);
}

IdentityReport check_A6(const BigParams& p, double tol) {
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  KahanSum sum;
  long used = 0;
  for (int n = 0; n < 10000; ++n) {
    const double w = (1.0 - ab * std::pow(q, 2 * n + 1)) *
                     qpochhammer_list({a * q, ab * q / c, ab * q}, p.base(), n) *
                     std::pow(q, 0.5 * n * (n - 1)) /
                     ((1.0 - ab * q) * qpochhammer_list({b * q, c * q, q}, p.base(), n) *
                      std::pow(-a / c, n));
    if (w != 0.0) {
      sum.add(w);
      used = n + 1;
    }
    if (std::abs(w) < 1e-22 * std::max(1.0, std::abs(sum.value())) && n > 3) break;
  }
  const double lhs = sum.value();
  const double rhs = pinf(ab * q * q, p.base()) * pinf(c / a, p.base()) /
                     (pinf(b * q, p.base()) * pinf(c * q, p.base()));
  return make_report("sum-A.6", {{"q", q}, {"a", a}, {"b", b}, {"c", c}}, lhs, rhs,
                     rel_residual(lhs, rhs), tol, used);
}

IdentityReport check_A7(const BigParams& p, double tol) {
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  KahanSum sum;
  long used = 0;
  for (int n = 0; n < 10000; ++n) {
    const double w = (1.0 - ab * std::pow(q, 2 * n + 1)) *
                     qpochhammer_list({ab * q, b * q, c * q}, p.base(), n) *
                     std::pow(q, 0.5 * n * (n - 1)) /
                     ((1.0 - ab * q) *
                      qpochhammer_list({a * q, ab * q / c, q}, p.base(), n) *
                      std::pow(-c / a, n));
    if (w != 0.0) {
      sum.add(w);
      used = n + 1;
    }
    if (std::abs(w) < 1e-22 * std::max(1.0, std::abs(sum.value())) && n > 3) break;
  }
  const double lhs = sum.value();
  const double rhs = pinf(ab * q * q, p.base()) * pinf(a / c, p.base()) /
                     (pinf(a * q, p.base()) * pinf(ab * q / c, p.base()));
  return make_report("sum-A.7", {{"q", q}, {"a", a}, {"b", b}, {"c", c}}, lhs, rhs,
                     rel_residual(lhs, rhs), tol, used);
}

namespace {

struct EtaSum {
  double value = 0.0;
  double max_term = 0.0;
  long terms = 0;
};

EtaSum eta_sum(double a, const QBase& base, int k) {
  if (!(std::abs(a) * base.q() < 1.0)) throw DomainError("eta: need |a| q < 1");
  const double q = base.q();
  KahanSum sum;
  EtaSum out;
  int smalls = 0;
  for (int n = 0; n < 10000; ++n) {
    const double w = ((n % 2 == 0) ? 1.0 : -1.0) * std::pow(q, 0.5 * n * (n - 1)) *
                     (1.0 - a * std::pow(q, 2 * n + 1)) * qpochhammer(a * q, base, n) /
                     ((1.0 - a * q) * qpochhammer(q, base, n));
    const double mu = std::pow(q, -n) + a * std::pow(q, n + 1);
    const double term = w * std::pow(mu, k);
    sum.add(term);
    out.terms = n + 1;
    out.max_term = std::max(out.max_term, std::abs(term));
    if (n > k + 3 && std::abs(term) <= 1e-20 * out.max_term) {
      if (++smalls >= 3) break;
    } else {
      smalls = 0;
    }
  }
  out.value = sum.value();
  return out;
}

}  // namespace

IdentityReport eta_k(double a, const QBase& base, int k, double tol) {
  if (k < 0) throw DomainError("eta_k: k must be nonnegative");
  const auto s = eta_sum(a, base, k);
  const double residual = std::abs(s.value) / std::max(1.0, s.max_term);
  return make_report("eta-A.8", {{"q", base.q()}, {"a", a}, {"k", double(k)}}, s.value,
                     0.0, residual, tol, s.terms);
}

IdentityReport eta_recursion(double a, const QBase& base, int k, double tol) {
  if (k < 0) throw DomainError("eta_recursion: k must be nonnegative");
  const double q = base.q();
  const auto lhs = eta_sum(a, base, k + 1);
  const auto r1 = eta_sum(a, base, k);
  const auto r2 = eta_sum(a * q * q, base, k);
  const double c1 = 1.0 + a * q;
  const double c2 = std::pow(q, -k - 1) * (1.0 - a * q * q) * (1.0 - a * q * q * q);
  const double rhs = c1 * r1.value - c2 * r2.value;
  const double scale = std::max({1.0, lhs.max_term, std::abs(c1) * r1.max_term,
                                 std::abs(c2) * r2.max_term});
  const double residual = std::abs(lhs.value - rhs) / scale;
  return make_report("eta-A.8-recursion", {{"q", q}, {"a", a}, {"k", double(k)}},
                     lhs.value, rhs, residual, tol, lhs.terms + r1.terms + r2.terms);
}

namespace {

struct GenSum {
  double value = 0.0;
  long terms = 0;
  double max_term = 0.0;
};

// sum_n weight_n t^n D_n(mu(x)) with the dual-big recurrence advanced in n.
// weight ratio per step is supplied by the caller.
template <typename WeightRatio>
GenSum dual_big_generating_sum(const BigParams& p, double t, int x, double tol,
                               WeightRatio wratio) {
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  const double mu = mu_lattice(x, p).mu;
  KahanSum sum;
  double dprev = 0.0, dcur = 1.0;
  double wt = 1.0;  // weight_n t^n
  double max_term = 0.0;
  int smalls = 0;
  const double rho = std::abs(t);
  for (int n = 0; n < 10000; ++n) {
    const double term = wt * dcur;
    sum.add(term);
    max_term = std::max(max_term, std::abs(term));
    const double scale = std::max(1.0, std::abs(sum.value()));
    if (std::abs(term) * rho / (1.0 - rho) <= 0.25 * tol * scale) {
      if (++smalls >= 3) return {sum.value(), n + 1, max_term};
    } else {
      smalls = 0;
    }
    // advance D by the spectral-index recurrence
    const double qn = std::pow(q, n), qn1 = qn * q;
    const double up = (c / a) * (1.0 - a * qn1) * (1.0 - a * b * qn1 / c) / (q * qn * qn);
    const double dn = (c / a) * (1.0 - qn) * (1.0 - a * qn / c) / (qn * qn);
    const double mid =
        ((a * b + a * c + a + c) / qn - c * (1.0 + q) / (q * qn * qn)) / a;
    const double dnext = ((mu - mid) * dcur - dn * dprev) / up;
    dprev = dcur;
    dcur = dnext;
    wt *= t * wratio(n);
  }
  throw NonConvergence("generating-function sum: term cap reached");
}

}  // namespace

IdentityReport genfun_9_1(const BigParams& p, double t, int x, double tol) {
  if (!(std::abs(t) < 1.0)) throw DomainError("genfun_9_1: need |t| < 1");
  if (x < 0) throw DomainError("genfun_9_1: need x >= 0");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  const auto gs = dual_big_generating_sum(
      p, t, x, tol,
      [&](int n) { return (1.0 - a * std::pow(q, n + 1)) / (1.0 - std::pow(q, n + 1)); });
  PhiSpec spec{{std::pow(q, -x), a * b * std::pow(q, x + 1)},
               {a * b * q / c, a * q * t},
               p.base(),
               a * q * t / c};
  const double rhs = pinf(a * q * t, p.base()) / pinf(t, p.base()) * phi_value(spec);
  return make_report("gen-9.1",
                     {{"q", q}, {"a", a}, {"b", b}, {"c", c}, {"t", t}, {"x", double(x)}},
                     gs.value, rhs, conditioned_residual(gs.value, rhs, gs.max_term, tol),
                     tol, gs.terms);
}

IdentityReport genfun_9_2(const BigParams& p, double t, int x, double tol) {
  if (!(std::abs(t) < 1.0)) throw DomainError("genfun_9_2: need |t| < 1");
  if (x < 0) throw DomainError("genfun_9_2: need x >= 0");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  const auto gs = dual_big_generating_sum(
      p, t, x, tol,
      [&](int n) { return (1.0 - a * std::pow(q, n + 1)) / (1.0 - std::pow(q, n + 1)); });
  PhiSpec spec{{std::pow(q, -x), std::pow(q, -x) / c},
               {a * b * q / c},
               p.base(),
               a * t * std::pow(q, x + 1)};
  const double rhs =
      pinf(a * std::pow(q, x + 1) * t, p.base()) / pinf(t, p.base()) * phi_value(spec);
  return make_report("gen-9.2",
                     {{"q", q}, {"a", a}, {"b", b}, {"c", c}, {"t", t}, {"x", double(x)}},
                     gs.value, rhs, conditioned_residual(gs.value, rhs, gs.max_term, tol),
                     tol, gs.terms);
}

IdentityReport genfun_9_3(const BigParams& p, double t, int x, double tol) {
  if (!(std::abs(t) < 1.0)) throw DomainError("genfun_9_3: need |t| < 1");
  if (x < 0) throw DomainError("genfun_9_3: need x >= 0");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  const auto gs = dual_big_generating_sum(p, t, x, tol, [&](int n) {
    return (1.0 - ab * std::pow(q, n + 1) / c) / (1.0 - std::pow(q, n + 1));
  });
  PhiSpec s1{{std::pow(q, -x), ab * std::pow(q, x + 1)},
             {a * q, ab * q * t / c},
             p.base(),
             a * q * t / c};
  const double rhs1 = pinf(ab * q * t / c, p.base()) / pinf(t, p.base()) * phi_value(s1);
  PhiSpec s2{{std::pow(q, -x), std::pow(q, -x) / b},
             {a * q},
             p.base(),
             ab * t * std::pow(q, x + 1) / c};
  const double rhs2 =
      pinf(ab * t * std::pow(q, x + 1) / c, p.base()) / pinf(t, p.base()) * phi_value(s2);
  const double residual =
      std::max(conditioned_residual(gs.value, rhs1, gs.max_term, tol),
               conditioned_residual(rhs1, rhs2, gs.max_term, tol));
  return make_report("gen-9.3",
                     {{"q", q}, {"a", a}, {"b", b}, {"c", c}, {"t", t}, {"x", double(x)}},
                     gs.value, rhs1, residual, tol, gs.terms);
}

IdentityReport genfun_9_4(const LittleParams& p, double t, int x, double tol) {
  if (!(std::abs(t) < 1.0) || !(std::abs(p.a() * t) < 1.0))
    throw DomainError("genfun_9_4: need |t| < 1 and |at| < 1");
  if (x < 0) throw DomainError("genfun_9_4: need x >= 0");
  const double q = p.q(), a = p.a(), b = p.b(), ab = a * b;
  const double mu = mu_lattice(x, p).mu;

  KahanSum sum;
  double dprev = 0.0, dcur = 1.0;
  double wt = 1.0;  // (bq;q)_n (at)^n / (q;q)_n
  double max_term = 0.0;
  int smalls = 0;
  const double rho = std::abs(a * t);
  long used = 0;
  for (int n = 0; n < 10000; ++n) {
    const double term = wt * dcur;
    sum.add(term);
    max_term = std::max(max_term, std::abs(term));
    used = n + 1;
    const double scale = std::max(1.0, std::abs(sum.value()));
    if (std::abs(term) * rho / (1.0 - rho) <= 0.25 * tol * scale) {
      if (++smalls >= 3) break;
    } else {
      smalls = 0;
    }
    const double qmn = std::pow(q, -n);
    const double up = -a * qmn * (1.0 - b * std::pow(q, n + 1));
    const double mid = qmn * (1.0 + a);
    const double dn = -qmn * (1.0 - std::pow(q, n));
    const double dnext = ((mu - mid) * dcur - dn * dprev) / up;
    dprev = dcur;
    dcur = dnext;
    wt *= a * t * (1.0 - b * std::pow(q, n + 1)) / (1.0 - std::pow(q, n + 1));
  }
  if (used >= 10000) throw NonConvergence("genfun_9_4: term cap reached");
  const double lhs = sum.value();
  const double rhs = pinf(t * std::pow(q, -x), p.base()) *
                     pinf(ab * t * std::pow(q, x + 1), p.base()) /
                     (pinf(a * t, p.base()) * pinf(t, p.base()));
  return make_report("gen-9.4",
                     {{"q", q}, {"a", a}, {"b", b}, {"t", t}, {"x", double(x)}}, lhs, rhs,
                     conditioned_residual(lhs, rhs, max_term, tol), tol, used);
}

IdentityReport check_7_14(const BigParams& p, double tol) {
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  PhiSpec s1{{a * q, ab * q / c}, {a * q / c}, p.base(), q};
  PhiSpec s2{{b * q, c * q}, {c * q / a}, p.base(), q};
  const auto e1 = phi_eval(s1, tol * 0.01);
  const auto e2 = phi_eval(s2, tol * 0.01);
  const double prefA = pinf(b * q, p.base()) * pinf(c * q, p.base()) /
                       (pinf(ab * q * q, p.base()) * pinf(c / a, p.base()));
  const double prefC = pinf(a * q, p.base()) * pinf(ab * q / c, p.base()) /
                       (pinf(ab * q * q, p.base()) * pinf(a / c, p.base()));
  const double lhs = prefA * e1.result.value + prefC * e2.result.value;
  return make_report("complete-7.14", {{"q", q}, {"a", a}, {"b", b}, {"c", c}}, lhs, 1.0,
                     rel_residual(lhs, 1.0), tol,
                     e1.result.terms_used + e2.result.terms_used);
}

IdentityReport qbinomial_check(double a, double b, const QBase& base, double tol) {
  const double q = base.q();
  if (!(a > 0.0) || !(a * q < 1.0)) throw DomainError("qbinomial_check: need 0 < aq < 1");
  PhiSpec spec{{b * q}, {}, base, a * q};
  const auto ev = phi_eval(spec, tol * 0.01);
  const double rhs = pinf(a * b * q * q, base) / pinf(a * q, base);
  return make_report("qbinom-4.9", {{"q", q}, {"a", a}, {"b", b}}, ev.result.value, rhs,
                     rel_residual(ev.result.value, rhs), tol, ev.result.terms_used);
}

IdentityReport jackson_check(double a, double b, double c, double z, const QBase& base,
                             double tol) {
  if (!(std::abs(z) < 1.0)) throw DomainError("jackson_check: need |z| < 1");
  PhiSpec lhs_spec{{a, b}, {c}, base, z};
  PhiSpec rhs_spec{{a, c / b}, {c, a * z}, base, b * z};
  const auto el = phi_eval(lhs_spec, tol * 0.01);
  const auto er = phi_eval(rhs_spec, tol * 0.01);
  const double rhs = pinf(a * z, base) / pinf(z, base) * er.result.value;
  return make_report("jackson", {{"q", base.q()}, {"a", a}, {"b", b}, {"c", c}, {"z", z}},
                     el.result.value, rhs, rel_residual(el.result.value, rhs), tol,
                     el.result.terms_used + er.result.terms_used);
}

IdentityReport big_special_values(const BigParams& p, int n_max, double tol) {
  // The raw terminating series cancels catastrophically at the spectral edges
  // beyond n ~ 3, so P_n there is taken from the stable eigenvector
  // recurrence of the operator matrix; the series route is cross-checked at
  // the first few degrees where it is conditioned.
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  const auto T = build_I2(n_max + 45, p);
  const auto ua = eigenvector_recurrence(T, a * q);
  const auto uc = eigenvector_recurrence(T, c * q);
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double sigma = beta_prefactor(n, p);
    const double qfac = std::pow(q, 0.5 * n * (n + 1));
    const double closed_aq = qpochhammer(ab * q / c, p.base(), n) /
                             qpochhammer(c * q, p.base(), n) * std::pow(-c, n) * qfac;
    const double closed_cq = qpochhammer(b * q, p.base(), n) /
                             qpochhammer(a * q, p.base(), n) * std::pow(-a, n) * qfac;
    worst = std::max(worst, std::abs(ua[n] / sigma - closed_aq) / std::abs(closed_aq));
    worst = std::max(worst, std::abs(uc[n] / sigma - closed_cq) / std::abs(closed_cq));
    if (n <= 1) {
      worst = std::max(worst, std::abs(big_qjacobi(n, a * q, p) - closed_aq) /
                                  std::abs(closed_aq));
      worst = std::max(worst, std::abs(big_qjacobi(n, c * q, p) - closed_cq) /
                                  std::abs(closed_cq));
    }
  }
  return make_report("special-7.1",
                     {{"q", q}, {"a", a}, {"b", b}, {"c", c}, {"n_max", double(n_max)}},
                     worst, 0.0, worst, tol, n_max + 1);
}

IdentityReport symmetry_8_13(const BigParams& p, int n_max, int m_max, double tol) {
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= m_max; ++m) {
      PhiSpec lhs_spec{{std::pow(q, -m), ab * std::pow(q, m + 1), std::pow(q, -n)},
                       {a * q, ab * q / c},
                       p.base(),
                       a * std::pow(q, n + 1) / c};
      const auto le = phi_eval(lhs_spec, 1e-15);
      // transformed parameters (ab/c, c, b), evaluated from the raw series
      const double ap = ab / c, bp = c, gp = b;
      PhiSpec rhs_spec{{std::pow(q, -m), ap * bp * std::pow(q, m + 1), std::pow(q, -n)},
                       {ap * q, ap * bp * q / gp},
                       p.base(),
                       ap * std::pow(q, n + 1) / gp};
      const auto re = phi_eval(rhs_spec, 1e-15);
      const double mt = std::max(le.max_abs_term, re.max_abs_term);
      worst = std::max(worst, conditioned_residual(le.result.value, re.result.value,
                                                   mt, tol));
    }
  }
  return make_report("symmetry-8.13",
                     {{"q", q}, {"a", a}, {"b", b}, {"c", c}, {"n_max", double(n_max)},
                      {"m_max", double(m_max)}},
                     worst, 0.0, worst, tol, (n_max + 1) * (m_max + 1));
}

// The residual checks sample lambda outside the spectral hull, where every
// polynomial evaluation is free of cancellation; interior mass points are
// covered exactly by the rational-arithmetic tests.

IdentityReport qdiff_little_check(const LittleParams& p, int n_max, double tol) {
  const double q = p.q(), a = p.a(), b = p.b(), ab = a * b;
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    for (double lambda : {1.6, 2.4, -0.7}) {
      const double resid = qdiff_residual_little(n, lambda, p);
      const double scale =
          std::max({std::abs((std::pow(q, -n) + ab * std::pow(q, n + 1)) *
                             little_qjacobi(n, lambda, p)),
                    std::abs(little_qjacobi(n, lambda / q, p) / lambda), 1.0});
      worst = std::max(worst, std::abs(resid) / scale);
    }
  }
  return make_report("qdiff-3.6",
                     {{"q", q}, {"a", a}, {"b", b}, {"n_max", double(n_max)}}, worst, 0.0,
                     worst, tol, 3 * (n_max + 1));
}

IdentityReport qdiff_big_check(const BigParams& p, int n_max, double tol) {
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    // exterior points scaled like q^{-n/2}, where the degree-n series carries
    // no cancellation at any base
    const double s = std::pow(q, -0.5 * n - 1.0);
    for (double lambda : {2.0 * s, -3.0 * s, 5.0 * s}) {
      const double resid = qdiff_residual_big(n, lambda, p);
      const double scale =
          std::max({std::abs((std::pow(q, -n) + ab * std::pow(q, n + 1)) *
                             big_qjacobi(n, lambda, p)),
                    std::abs(big_qjacobi(n, lambda / q, p) / (lambda * lambda)), 1.0});
      worst = std::max(worst, std::abs(resid) / scale);
    }
  }
  return make_report("qdiff-6.6",
                     {{"q", q}, {"a", a}, {"b", b}, {"c", c}, {"n_max", double(n_max)}},
                     worst, 0.0, worst, tol, 6 * (n_max + 1));
}

IdentityReport racah_limit(const BigParams& p, int n_max, int x_max,
                           const std::vector<int>& Ns, double tol) {
  if (Ns.size() < 2) throw DomainError("racah_limit: need at least two truncation levels");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  std::vector<double> devs;
  for (int N : Ns) {
    if (N <= std::max(n_max, x_max))
      throw DomainError("racah_limit: N must exceed n_max and x_max");
    const double alpha = std::pow(q, -N - 1), beta = a / c, gamma = a, delta = b;
    double dev = 0.0;
    for (int n = 0; n <= n_max; ++n)
      for (int x = 0; x <= x_max; ++x) {
        PhiSpec spec{{std::pow(q, -n), alpha * beta * std::pow(q, n + 1),
                      std::pow(q, -x), gamma * delta * std::pow(q, x + 1)},
                     {alpha * q, beta * delta * q, gamma * q},
                     p.base(),
                     q};
        const double r = phi_value(spec);
        const double d = dual_big(n, x, p);
        dev = std::max(dev, std::abs(r - d) / std::max(1.0, std::abs(d)));
      }
    devs.push_back(dev);
  }
  // strictly decreasing until the sequence reaches the rounding floor
  bool monotone = true;
  for (size_t i = 0; i + 1 < devs.size(); ++i)
    if (!(devs[i + 1] < devs[i]) && devs[i + 1] >= 1e-12) monotone = false;
  const double final_dev = devs.back();
  const double residual = monotone ? final_dev : std::max(final_dev, 2.0 * tol);
  return make_report("limit-racah-8.10",
                     {{"q", q}, {"a", a}, {"b", b}, {"c", c}, {"n_max", double(n_max)},
                      {"x_max", double(x_max)}},
                     devs.front(), final_dev, residual, tol,
                     long(Ns.size()) * (n_max + 1) * (x_max + 1));
}

IdentityReport dual_c0_limit(const QBase& base, double a, double b, int n_max, int m_max,
                             double tol) {
  const LittleParams target(base, b, a);  // d_n(mu; b, a)
  // the correction scales like |c| q^{-n}; keep the deepest sample past its
  // pre-asymptotic plateau
  const int n_eff = std::min(
      n_max, static_cast<int>(std::floor(4.0 * std::log(10.0) / std::log(1.0 / base.q()))) - 1);
  const int m_eff = std::min(m_max, n_eff + 2);
  std::vector<double> devs;
  for (int k = 2; k <= 6; ++k) {
    const BigParams bp(base, a, b, -std::pow(10.0, -k));
    double dev = 0.0;
    for (int n = 0; n <= n_eff; ++n)
      for (int m = 0; m <= m_eff; ++m) {
        const double D = dual_big(n, m, bp);
        const double d = dual_little(n, m, target);
        dev = std::max(dev, std::abs(D - d) / std::max(1.0, std::abs(d)));
      }
    devs.push_back(dev);
  }
  // Early samples can sit on the pre-asymptotic plateau where the relative
  // deviation saturates near O(1); contraction is required on the asymptotic
  // tail, together with an overall decrease.
  double worst_ratio = 0.0;
  for (size_t i = devs.size() - 3; i + 1 < devs.size(); ++i)
    worst_ratio = std::max(worst_ratio, devs[i] > 0.0 ? devs[i + 1] / devs[i] : 0.0);
  worst_ratio = std::max(worst_ratio, devs.back() / (0.5 * devs.front()));
  return make_report("limit-c0",
                     {{"q", base.q()}, {"a", a}, {"b", b}, {"n_max", double(n_max)},
                      {"m_max", double(m_max)}},
                     devs.front(), devs.back(), worst_ratio, tol,
                     5L * (n_max + 1) * (m_max + 1));
}

IdentityReport asc2_limit(const QBase& base, double a, int n_max, int m_max, double tol) {
  const LittleParams p0(base, a, 0.0);
  const double q = base.q();
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= m_max; ++m) {
      PhiSpec v_spec{{std::pow(q, -n), std::pow(q, -m)}, {}, base, std::pow(q, n) / a};
      const auto ve = phi_eval(v_spec, 1e-15);
      const double lhs = dual_little(n, m, p0);
      const double rhs = ve.result.value;  // the scaled Al-Salam--Carlitz II value
      worst = std::max(worst,
                       conditioned_residual(lhs, rhs, ve.max_abs_term, tol));
    }
  return make_report("limit-b0-8.11",
                     {{"q", q}, {"a", a}, {"n_max", double(n_max)},
                      {"m_max", double(m_max)}},
                     worst, 0.0, worst, tol, long(n_max + 1) * (m_max + 1));
}

}  // namespace qjacobi
