// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "qjacobi/qcore.hpp"

using namespace qjacobi;

TEST_CASE("QBase validates its domain") {
  CHECK_THROWS_AS(QBase(0.0), DomainError);
  CHECK_THROWS_AS(QBase(1.0), DomainError);
  CHECK_THROWS_AS(QBase(-0.5), DomainError);
  CHECK(QBase(0.5).q() == 0.5);
}

TEST_CASE("q_number special values and direct formula") {
  const QBase half(0.5);
  CHECK(q_number(0.0, half) == 0.0);
  CHECK(q_number(1.0, half) == doctest::Approx(1.0).epsilon(1e-15));
  // oracle: direct substitution into (q^{a/2}-q^{-a/2})/(q^{1/2}-q^{-1/2})
  const double q = 0.25;
  const double direct = (q - 1.0 / q) / (std::sqrt(q) - 1.0 / std::sqrt(q));
  CHECK(q_number(2.0, QBase(q)) == doctest::Approx(direct).epsilon(1e-15));
  CHECK(direct == doctest::Approx(2.5));  // = q^{1/2} + q^{-1/2}
}

TEST_CASE("finite q-Pochhammer") {
  const QBase base(0.5);
  CHECK(qpochhammer(0.77, base, 0) == 1.0);
  CHECK(qpochhammer(1.0, base, 3) == 0.0);
  CHECK(qpochhammer(0.5, base, 2) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK_THROWS_AS(qpochhammer(0.5, base, -1), DomainError);
}

TEST_CASE("q-Pochhammer splitting identity") {
  for (double q : {0.3, 0.7}) {
    const QBase base(q);
    for (double a : {-1.5, 0.3, 0.9}) {
      for (int m : {0, 1, 3, 10, 25, 50}) {
        for (int k : {0, 2, 7, 50}) {
          const double lhs = qpochhammer(a, base, m + k);
          const double rhs =
              qpochhammer(a, base, m) * qpochhammer(a * std::pow(q, m), base, k);
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
        }
      }
    }
  }
}

TEST_CASE("negative-power reversal identity") {
  // (q^{-m-k};q)_k = (-1)^k q^{-mk-k(k+1)/2} (q^{m+1};q)_k, within double range
  for (double q : {0.5, 0.7}) {
    const QBase base(q);
    for (int m : {0, 3, 12, 30}) {
      for (int k : {1, 5, 17, 30}) {
        if ((m * k + 0.5 * k * (k + 1)) * std::log10(1.0 / q) > 250.0) continue;
        const double lhs = qpochhammer(std::pow(q, -m - k), base, k);
        const double rhs = ((k % 2 == 0) ? 1.0 : -1.0) *
                           std::pow(q, -m * k - 0.5 * k * (k + 1)) *
                           qpochhammer(std::pow(q, m + 1), base, k);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("infinite q-Pochhammer") {
  const QBase base(0.5);
  CHECK(qpochhammer_inf(0.0, base, 1e-14).value == 1.0);

  const auto zero = qpochhammer_inf(1.0, base, 1e-14);
  CHECK(zero.value == 0.0);
  CHECK(zero.converged);

  // oracle: brute-force long product
  double direct = 1.0;
  for (int k = 0; k < 200; ++k) direct *= 1.0 - 0.3 * std::pow(0.5, k);
  const auto r = qpochhammer_inf(0.3, base, 1e-14);
  CHECK(r.value == doctest::Approx(direct).epsilon(1e-14));
  CHECK(r.converged);
  CHECK(r.tail_estimate <= 1e-14 * std::max(1.0, std::abs(r.value)));

  // pathological |a| vs q: bound unreachable within the cap
  CHECK_THROWS_AS(qpochhammer_inf(1e280, QBase(0.999), 1e-14, SeriesLimits{1000}),
                  NonConvergence);
}

TEST_CASE("phi trivial and closed-form cases") {
  const QBase base(0.5);
  const double q = 0.5, a = 0.3, b = 0.4;

  SUBCASE("argument zero") {
    PhiSpec s{{0.7, 0.8}, {0.6}, base, 0.0};
    CHECK(phi_value(s) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("numerator parameter one terminates immediately") {
    PhiSpec s{{1.0, 0.8}, {0.6}, base, 0.4};
    CHECK(phi_value(s) == 1.0);
  }
  SUBCASE("two-term closed form") {
    // oracle: sum the two terms by hand: 1 + (1-q^{-1})(1-abq^2) q lambda
    // / ((1-aq)(1-q))
    const double lambda = 0.2;
    PhiSpec s{{std::pow(q, -1), a * b * q * q}, {a * q}, base, q * lambda};
    const double expect =
        1.0 + (1.0 - 1.0 / q) * (1.0 - a * b * q * q) * q * lambda /
                  ((1.0 - a * q) * (1.0 - q));
    CHECK(phi_value(s) == doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("terminating phi is tolerance independent") {
  const QBase base(0.5);
  PhiSpec s{{std::pow(0.5, -7), 0.12 * std::pow(0.5, 8)}, {0.15}, base, 0.5 * 0.37};
  const double v1 = phi_value(s, 1e-6);
  const double v2 = phi_value(s, 1e-14);
  CHECK(v1 == v2);  // identical sum path, bit-identical
}

TEST_CASE("denominator pole detection") {
  const QBase base(0.5);
  // pole at k=2 with termination at k=5: must throw
  PhiSpec bad{{std::pow(0.5, -5)}, {std::pow(0.5, -2)}, base, 0.3};
  CHECK_THROWS_AS(phi_value(bad), DenominatorPole);
  // pole beyond termination is fine
  PhiSpec ok{{std::pow(0.5, -1)}, {std::pow(0.5, -2)}, base, 0.3};
  CHECK_NOTHROW(phi_value(ok));
  // zero denominator parameters contribute (0;q)_k = 1
  PhiSpec zeros{{0.5, 0.6}, {0.0, 0.0}, base, 0.3};
  CHECK(std::isfinite(phi_value(zeros)));
}

TEST_CASE("q-binomial theorem over the unit square") {
  for (double q : {0.3, 0.5, 0.7}) {
    const QBase base(q);
    for (double a : {0.1, 0.45, 0.9})
      for (double b : {0.1, 0.45, 0.9}) {
        PhiSpec s{{b * q}, {}, base, a * q};
        const double sum = phi_value(s, 1e-15);
        const double prod = qpochhammer_inf_value(a * b * q * q, base) /
                            qpochhammer_inf_value(a * q, base);
        CHECK(sum == doctest::Approx(prod).epsilon(1e-12));
      }
  }
}

TEST_CASE("compensated accumulator beats naive summation") {
  KahanSum s;
  double naive = 0.0;
  for (int i = 0; i < 1000; ++i) {
    s.add(0.1);
    naive += 0.1;
  }
  CHECK(std::abs(s.value() - 100.0) <= std::abs(naive - 100.0));
  CHECK(s.value() == doctest::Approx(100.0).epsilon(1e-15));
}

TEST_CASE("series results carry convergence metadata") {
  const QBase base(0.5);
  PhiSpec s{{0.3}, {0.7}, base, 0.5};
  const auto r = phi(s, 1e-12);
  CHECK(r.converged);
  CHECK(r.terms_used > 3);
  CHECK(r.terms_used <= 10000);
  CHECK(r.tail_estimate <= 1e-12 * std::max(1.0, std::abs(r.value)));
}
