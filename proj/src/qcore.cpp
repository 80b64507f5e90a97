// SPDX-License-Identifier: Apache-2.0

#include "qjacobi/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qjacobi {

double q_number(double a, const QBase& base) {
  const double q = base.q();
  return (std::pow(q, a / 2.0) - std::pow(q, -a / 2.0)) /
         (std::sqrt(q) - 1.0 / std::sqrt(q));
}

double qpochhammer(double a, const QBase& base, int n) {
  if (n < 0) throw DomainError("qpochhammer: n must be nonnegative");
  const double q = base.q();
  double prod = 1.0;
  double aqk = a;
  for (int k = 0; k < n; ++k) {
    prod *= 1.0 - aqk;
    aqk *= q;
  }
  return prod;
}

double qpochhammer_list(std::initializer_list<double> as, const QBase& base, int n) {
  double prod = 1.0;
  for (double a : as) prod *= qpochhammer(a, base, n);
  return prod;
}

SeriesResult qpochhammer_inf(double a, const QBase& base, double tol,
                             const SeriesLimits& limits) {
  if (!(tol > 0.0)) throw DomainError("qpochhammer_inf: tol must be positive");
  const double q = base.q();
  SeriesResult r;
  double prod = 1.0;
  double aqk = a;
  for (int k = 0; k < limits.max_terms; ++k) {
    prod *= 1.0 - aqk;
    aqk *= q;
    if (prod == 0.0) {  // an exact zero factor; the remaining factors are finite
      r.value = 0.0;
      r.terms_used = k + 1;
      r.tail_estimate = 0.0;
      r.converged = true;
      return r;
    }
    // |log of remaining product| <= sum_{j>k} |a|q^j/(1-|a|q^j) <= S below
    const double x = std::abs(aqk);
    if (x < 1.0) {
      const double s = x / ((1.0 - q) * (1.0 - x));
      if (s <= tol) {
        r.value = prod;
        r.terms_used = k + 1;
        r.tail_estimate = s * std::max(1.0, std::abs(prod));
        r.converged = true;
        return r;
      }
    }
  }
  throw NonConvergence("qpochhammer_inf: term cap reached for a=" + std::to_string(a));
}

double qpochhammer_inf_value(double a, const QBase& base, double tol) {
  return qpochhammer_inf(a, base, tol).value;
}

namespace detail {

int negative_q_exponent(double a, double q) {
  // q^{-j} >= 1 for j >= 0; anything clearly below 1 cannot qualify.
  if (!(a >= 1.0 - 1e-9) || !std::isfinite(a)) return -1;
  const double j = std::log(a) / std::log(1.0 / q);
  const long long jr = std::llround(j);
  if (jr < 0 || jr > 1000000) return -1;
  if (std::abs(a * std::pow(q, static_cast<double>(jr)) - 1.0) < 1e-8)
    return static_cast<int>(jr);
  return -1;
}

}  // namespace detail

PhiEval phi_eval(const PhiSpec& spec, double tol, const SeriesLimits& limits) {
  if (!(tol > 0.0)) throw DomainError("phi: tol must be positive");
  const double q = spec.base.q();

  int term_order = -1;
  for (double a : spec.numerator) {
    const int n = detail::negative_q_exponent(a, q);
    if (n >= 0) term_order = (term_order < 0) ? n : std::min(term_order, n);
  }
  for (double d : spec.denominator) {
    const int j = detail::negative_q_exponent(d, q);
    if (j >= 0 && (term_order < 0 || term_order > j))
      throw DenominatorPole("phi: denominator parameter " + std::to_string(d) +
                            " = q^-" + std::to_string(j) +
                            " vanishes before termination");
  }

  const int extra = 1 + static_cast<int>(spec.denominator.size()) -
                    static_cast<int>(spec.numerator.size());

  PhiEval ev;
  ev.termination_order = term_order;
  KahanSum sum;
  double term = 1.0;
  sum.add(term);
  ev.max_abs_term = 1.0;

  if (term_order == 0) {
    ev.result = {1.0, 1, 0.0, true};
    return ev;
  }

  int smalls = 0;
  double prev_abs = 1.0;
  for (int k = 0; k < limits.max_terms; ++k) {
    const double qk = std::pow(q, k);
    double ratio = spec.argument / (1.0 - q * qk);
    for (double a : spec.numerator) ratio *= 1.0 - a * qk;
    for (double d : spec.denominator) ratio /= 1.0 - d * qk;
    if (extra != 0) {
      const double f = -qk;  // ((-1)^k q^{k(k-1)/2}) advances by (-1)q^k per step
      double fpow = 1.0;
      for (int i = 0; i < std::abs(extra); ++i) fpow *= f;
      ratio *= (extra > 0) ? fpow : 1.0 / fpow;
    }
    term *= ratio;
    sum.add(term);
    const double at = std::abs(term);
    ev.max_abs_term = std::max(ev.max_abs_term, at);

    if (term_order >= 0 && k + 1 >= term_order) {
      ev.result = {sum.value(), k + 2, 0.0, true};
      return ev;
    }

    const double scale = std::max(1.0, std::abs(sum.value()));
    if (at <= tol * scale) {
      ++smalls;
      if (smalls >= 3) {
        // geometric tail bound from the observed ratio
        double rho = (prev_abs > 0.0) ? at / prev_abs : 0.0;
        rho = std::min(rho, 0.999);
        const double tail = at * rho / (1.0 - rho);
        if (tail <= tol * scale) {
          ev.result = {sum.value(), k + 2, tail, true};
          return ev;
        }
        smalls = 3;  // keep re-checking each step
      }
    } else {
      smalls = 0;
    }
    prev_abs = at;
  }
  throw NonConvergence("phi: term cap reached (max_terms=" +
                       std::to_string(limits.max_terms) + ")");
}

SeriesResult phi(const PhiSpec& spec, double tol, const SeriesLimits& limits) {
  return phi_eval(spec, tol, limits).result;
}

double phi_value(const PhiSpec& spec, double tol) { return phi(spec, tol).value; }

}  // namespace qjacobi
