// SPDX-License-Identifier: Apache-2.0
//
// Core q-arithmetic: q-numbers, q-Pochhammer symbols (finite and infinite),
// and a generic basic hypergeometric series evaluator with controlled
// truncation. Everything here is a pure function of its inputs.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qjacobi {

/// Parameters outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A series or infinite product failed to meet its tolerance within the
/// configured term cap.
class NonConvergence : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A denominator q-Pochhammer symbol vanishes before the series terminates.
class DenominatorPole : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The tridiagonal eigensolver did not converge.
class EigensolverFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deformation base, constrained to the open interval (0, 1).
class QBase {
public:
  explicit QBase(double q) : q_(q) {
    if (!(q > 0.0) || !(q < 1.0) || !std::isfinite(q))
      throw DomainError("QBase: q must satisfy 0 < q < 1, got " + std::to_string(q));
  }

  double q() const noexcept { return q_; }

  /// q^e for any real exponent (positive square root branch).
  double pow(double e) const { return std::pow(q_, e); }

private:
  double q_;
};

/// Result of a truncated series or infinite-product evaluation.
///
/// Invariant: converged implies tail_estimate <= tol * max(1, |value|) for
/// the tolerance the evaluation was requested with.
struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;
  double tail_estimate = 0.0;
  bool converged = false;
};

/// Caller-configurable truncation policy for series loops.
struct SeriesLimits {
  int max_terms = 10000;
};

/// Neumaier-compensated accumulator. Error-free transformation of each
/// addition; value() folds the compensation back in.
class KahanSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// [a]_q = (q^{a/2} - q^{-a/2}) / (q^{1/2} - q^{-1/2}).
double q_number(double a, const QBase& base);

/// (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}); the empty product is 1.
double qpochhammer(double a, const QBase& base, int n);

/// (a1,...,ak;q)_n = (a1;q)_n ... (ak;q)_n.
double qpochhammer_list(std::initializer_list<double> as, const QBase& base, int n);

/// (a;q)_inf truncated once the log-tail bound sum_{k>K} |a|q^k / (1-|a|q^K)
/// drops below tol. tail_estimate carries the bound scaled to the value.
SeriesResult qpochhammer_inf(double a, const QBase& base, double tol,
                             const SeriesLimits& limits = {});

/// Value-only convenience for qpochhammer_inf; throws NonConvergence.
double qpochhammer_inf_value(double a, const QBase& base, double tol = 1e-15);

/// Parameter block for an r-phi-s basic hypergeometric series.
///
/// Invariant: no denominator parameter may equal q^{-j}, j >= 0, unless a
/// numerator parameter q^{-n} terminates the series at n <= j.
struct PhiSpec {
  std::vector<double> numerator;
  std::vector<double> denominator;
  QBase base;
  double argument = 0.0;
};

/// phi result plus the largest |term| encountered, which conditions any
/// cancellation-heavy sum. max_abs_term * eps bounds the rounding floor.
struct PhiEval {
  SeriesResult result;
  double max_abs_term = 0.0;
  int termination_order = -1;  ///< k of the last term of a terminating series, -1 otherwise
};

/// Evaluates sum_k [prod (num;q)_k / prod (den;q)_k] * ((-1)^k q^{k(k-1)/2})^{1+s-r}
/// * z^k / (q;q)_k with compensated accumulation.
///
/// Terminating series (a numerator parameter equal to q^{-n}) are summed
/// exactly through k = n. Otherwise the loop stops after three consecutive
/// terms below tol * max(1, |partial sum|) once the geometric tail bound
/// also meets the tolerance.
PhiEval phi_eval(const PhiSpec& spec, double tol, const SeriesLimits& limits = {});

/// SeriesResult-only wrapper around phi_eval.
SeriesResult phi(const PhiSpec& spec, double tol, const SeriesLimits& limits = {});

/// Value-only convenience; throws NonConvergence if the cap is reached.
double phi_value(const PhiSpec& spec, double tol = 1e-14);

namespace detail {
/// If a == q^{-j} for an integer j >= 0 (to ~1e-8 relative), returns j.
int negative_q_exponent(double a, double q);  // -1 when not a negative q-power
}  // namespace detail

}  // namespace qjacobi
