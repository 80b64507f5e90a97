// SPDX-License-Identifier: Apache-2.0
//
// Exact-rational evaluation of terminating q-series and recurrences
// (test-only oracle). With rational q, parameters and lattice points, every
// terminating series, recurrence value and closed form is an exact rational,
// so identities can be asserted as exact equalities at any depth double
// precision cannot reach.

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace qrat {

using Q = mpq_class;

inline Q qpow(const Q& q, long e) {
  Q r = 1;
  Q base = e >= 0 ? q : Q(1) / q;
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= base;
  return r;
}

inline Q qpoch(const Q& a, const Q& q, int n) {
  Q prod = 1, aq = a;
  for (int k = 0; k < n; ++k) {
    prod *= 1 - aq;
    aq *= q;
  }
  return prod;
}

// Terminating r-phi-s summed through k = n_term.
inline Q phi_terminating(const std::vector<Q>& num, const std::vector<Q>& den, const Q& q,
                         const Q& z, int n_term) {
  const int extra = 1 + static_cast<int>(den.size()) - static_cast<int>(num.size());
  Q sum = 0;
  for (int k = 0; k <= n_term; ++k) {
    Q term = 1;
    for (const Q& a : num) term *= qpoch(a, q, k);
    for (const Q& b : den) term /= qpoch(b, q, k);
    term /= qpoch(q, q, k);
    if (extra != 0) {
      Q f = qpow(q, static_cast<long>(k) * (k - 1) / 2);
      if (k % 2 == 1) f = -f;
      for (int i = 0; i < (extra > 0 ? extra : -extra); ++i) {
        if (extra > 0)
          term *= f;
        else
          term /= f;
      }
    }
    for (int i = 0; i < k; ++i) term *= z;
    sum += term;
  }
  return sum;
}

struct LittleQ {
  Q q, a, b;
};
struct BigQ {
  Q q, a, b, c;
};

inline Q mu(const Q& q, const Q& ab, int m) { return qpow(q, -m) + ab * qpow(q, m + 1); }

inline Q little_series(int n, const Q& lambda, const LittleQ& p) {
  return phi_terminating({qpow(p.q, -n), p.a * p.b * qpow(p.q, n + 1)}, {p.a * p.q}, p.q,
                         p.q * lambda, n);
}

inline Q big_series(int n, const Q& lambda, const BigQ& p) {
  return phi_terminating({qpow(p.q, -n), p.a * p.b * qpow(p.q, n + 1), lambda},
                         {p.a * p.q, p.c * p.q}, p.q, p.q, n);
}

inline Q dual_little_series(int n, int m, const LittleQ& p) {
  return phi_terminating(
      {qpow(p.q, -m), p.a * p.b * qpow(p.q, m + 1), qpow(p.q, -n)}, {p.b * p.q}, p.q,
      qpow(p.q, n) / p.a, std::min(n, m));
}

inline Q dual_big_series(int n, int m, const BigQ& p) {
  return phi_terminating(
      {qpow(p.q, -m), p.a * p.b * qpow(p.q, m + 1), qpow(p.q, -n)},
      {p.a * p.q, p.a * p.b * p.q / p.c}, p.q, p.a * qpow(p.q, n + 1) / p.c,
      std::min(n, m));
}

inline Q little_recur(int n, const Q& lambda, const LittleQ& p) {
  Q prev = 0, cur = 1;
  const Q ab = p.a * p.b;
  for (int j = 0; j < n; ++j) {
    const Q qj = qpow(p.q, j), qj1 = qj * p.q;
    const Q A = qj * (1 - p.a * qj1) * (1 - ab * qj1) /
                ((1 - ab * p.q * qj * qj) * (1 - ab * p.q * p.q * qj * qj));
    const Q C = p.a * qj * (1 - qj) * (1 - p.b * qj) /
                ((1 - ab * qj * qj) * (1 - ab * p.q * qj * qj));
    const Q next = ((A + C - lambda) * cur - C * prev) / A;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline Q big_recur(int n, const Q& lambda, const BigQ& p) {
  Q prev = 0, cur = 1;
  const Q ab = p.a * p.b;
  for (int j = 0; j < n; ++j) {
    const Q qj = qpow(p.q, j), qj1 = qj * p.q;
    const Q A = (1 - p.a * qj1) * (1 - p.c * qj1) * (1 - ab * qj1) /
                ((1 - ab * p.q * qj * qj) * (1 - ab * p.q * p.q * qj * qj));
    const Q C = -p.a * p.c * qj1 * (1 - qj) * (1 - p.b * qj) * (1 - ab * qj / p.c) /
                ((1 - ab * qj * qj) * (1 - ab * p.q * qj * qj));
    const Q next = ((lambda + A + C - 1) * cur - C * prev) / A;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline Q dual_little_recur(int n, int m, const LittleQ& p) {
  Q prev = 0, cur = 1;
  const Q lam = mu(p.q, p.a * p.b, m);
  for (int j = 0; j < n; ++j) {
    const Q qmj = qpow(p.q, -j);
    const Q up = -p.a * qmj * (1 - p.b * qpow(p.q, j + 1));
    const Q mid = qmj * (1 + p.a);
    const Q dn = -qmj * (1 - qpow(p.q, j));
    const Q next = ((lam - mid) * cur - dn * prev) / up;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline Q dual_big_recur(int n, int m, const BigQ& p) {
  Q prev = 0, cur = 1;
  const Q lam = mu(p.q, p.a * p.b, m);
  for (int j = 0; j < n; ++j) {
    const Q qj = qpow(p.q, j), qj1 = qj * p.q;
    const Q up = (p.c / p.a) * (1 - p.a * qj1) * (1 - p.a * p.b * qj1 / p.c) /
                 (p.q * qj * qj);
    const Q dn = (p.c / p.a) * (1 - qj) * (1 - p.a * qj / p.c) / (qj * qj);
    const Q mid = ((p.a * p.b + p.a * p.c + p.a + p.c) / qj -
                   p.c * (1 + p.q) / (p.q * qj * qj)) /
                  p.a;
    const Q next = ((lam - mid) * cur - dn * prev) / up;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace qrat
