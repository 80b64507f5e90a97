// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "qjacobi/spectral.hpp"
#include "support/sturm.hpp"

using namespace qjacobi;

namespace {
const QBase base05(0.5);
const LittleParams lp(base05, 0.3, 0.4);
const BigParams bp(base05, 0.3, 0.4, -0.2);
}  // namespace

TEST_CASE("operator matrices match hand-evaluated coefficients at N=2") {
  const double q = 0.5, a = 0.3, b = 0.4, ab = a * b;
  const auto T1 = build_I1(2, lp);
  const double b0 = (1.0 - a * q) * (1.0 - ab * q) / ((1.0 - ab * q) * (1.0 - ab * q * q));
  const double b1 = q / (1.0 - ab * q * q * q) *
                    ((1.0 - a * q * q) * (1.0 - ab * q * q) / (1.0 - ab * q * q * q * q) +
                     a * (1.0 - q) * (1.0 - b * q) / (1.0 - ab * q * q));
  const double a0 = std::sqrt(a) * std::sqrt(q) *
                    std::sqrt((1.0 - q) * (1.0 - a * q) * (1.0 - b * q) * (1.0 - ab * q) /
                              ((1.0 - ab * q) * (1.0 - ab * q * q * q))) /
                    (1.0 - ab * q * q);
  CHECK(T1.diag[0] == doctest::Approx(b0).epsilon(1e-14));
  CHECK(T1.diag[1] == doctest::Approx(b1).epsilon(1e-14));
  CHECK(T1.offdiag[0] == doctest::Approx(-a0).epsilon(1e-14));

  const double c = -0.2;
  const auto T2 = build_I2(2, bp);
  const double B0 = (1.0 - a * q) * (1.0 - ab * q) * (1.0 - c * q) /
                        ((1.0 - ab * q) * (1.0 - ab * q * q)) -
                    1.0;
  CHECK(T2.diag[0] == doctest::Approx(-B0).epsilon(1e-14));
  const double A0 = std::sqrt(-a * c * q * q) *
                    std::sqrt((1.0 - q) * (1.0 - a * q) * (1.0 - b * q) * (1.0 - ab * q) *
                              (1.0 - c * q) * (1.0 - ab * q / c) /
                              ((1.0 - ab * q) * (1.0 - ab * q * q * q))) /
                    (1.0 - ab * q * q);
  CHECK(T2.offdiag[0] == doctest::Approx(A0).epsilon(1e-14));
}

TEST_CASE("coefficient decay ratios at deep index") {
  const auto T1 = build_I1(64, lp);
  const auto T2 = build_I2(64, bp);
  for (int n = 50; n < 60; ++n) {
    CHECK(T1.offdiag[n + 1] / T1.offdiag[n] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(T1.diag[n + 1] / T1.diag[n] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(T2.offdiag[n + 1] / T2.offdiag[n] ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
    CHECK(T2.diag[n + 1] / T2.diag[n] == doctest::Approx(0.5).epsilon(1e-9));
  }
  for (double e : T1.offdiag) CHECK(e != 0.0);
  for (double e : T2.offdiag) CHECK(e != 0.0);
}

TEST_CASE("eigenvalues of trivial matrices") {
  TridiagonalOperator t1{OperatorLabel::I1, {0.7}, {}};
  CHECK(eigenvalues(t1) == std::vector<double>{0.7});
  TridiagonalOperator t2{OperatorLabel::I1, {0.3, 0.3}, {0.1}};
  const auto e = eigenvalues(t2);
  CHECK(e[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("eigenvalues agree with the Sturm bisection oracle") {
  const auto T = build_I1(100, lp);
  const auto eig = eigenvalues(T);
  for (int k = 99; k >= 90; --k) {
    const double ref = sturm::kth_eigenvalue(T.diag, T.offdiag, k);
    CHECK(eig[k] == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("spectra match the predicted point sets") {
  const auto r1 = verify_spectrum_I1(200, lp, 12, 1e-8);
  CHECK(r1.matched_count == 12);
  CHECK(r1.max_abs_dev < 1e-10);
  CHECK(r1.computed[0] == doctest::Approx(1.0).epsilon(1e-12));  // top point

  const auto r2 = verify_spectrum_I2(200, bp, 10, 1e-8);
  CHECK(r2.matched_count == 20);
  CHECK(r2.computed.front() == doctest::Approx(0.15).epsilon(1e-10));  // aq
  CHECK(r2.computed.back() == doctest::Approx(-0.1).epsilon(1e-10));   // cq
  CHECK_THROWS_AS(verify_spectrum_I1(300, lp, 100, 1e-8), DomainError);
}

TEST_CASE("eigenvalues accumulate at zero as the truncation grows") {
  const double cutoff = std::pow(0.5, 12);
  int count100 = 0, count200 = 0;
  for (double x : eigenvalues(build_I1(100, lp)))
    if (x > 0.0 && x < cutoff) ++count100;
  for (double x : eigenvalues(build_I1(200, lp)))
    if (x > 0.0 && x < cutoff) ++count200;
  CHECK(count200 > count100);
}

TEST_CASE("truncated eigenvalues stabilize when the truncation doubles") {
  const auto e100 = eigenvalues(build_I1(100, lp));
  const auto e200 = eigenvalues(build_I1(200, lp));
  for (int i = 0; i < 12; ++i)
    CHECK(std::abs(e100[99 - i] - e200[199 - i]) < 1e-10);
}

TEST_CASE("eigenvector recurrence equals the expansion coefficients") {
  const auto T1 = build_I1(80, lp);
  const auto v1 = eigenvector_recurrence(T1, std::pow(0.5, 3));
  for (int m = 0; m <= 20; ++m)
    CHECK(v1[m] ==
          doctest::Approx(beta_coefficient(m, std::pow(0.5, 3), lp)).epsilon(1e-10));

  const auto T2 = build_I2(80, bp);
  const auto v2 = eigenvector_recurrence(T2, 0.3 * std::pow(0.5, 4));
  for (int m = 0; m <= 14; ++m)
    CHECK(v2[m] ==
          doctest::Approx(beta_coefficient(m, 0.3 * std::pow(0.5, 4), bp)).epsilon(1e-10));
}

TEST_CASE("dense eigenvectors align with the recurrence coefficients") {
  const int N = 300;
  const auto T = build_I1(N, lp);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    M(i, i) = T.diag[i];
    if (i + 1 < N) M(i, i + 1) = M(i + 1, i) = T.offdiag[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  REQUIRE(es.info() == Eigen::Success);
  for (int n = 0; n <= 10; ++n) {
    const double target = std::pow(0.5, n);
    int idx = 0;
    double best = 1e300;
    for (int i = 0; i < N; ++i)
      if (std::abs(es.eigenvalues()[i] - target) < best) {
        best = std::abs(es.eigenvalues()[i] - target);
        idx = i;
      }
    const auto v = eigenvector_recurrence(T, target);
    double dot = 0.0, n1 = 0.0, n2 = 0.0;
    for (int m = 0; m < N; ++m) {
      dot += v[m] * es.eigenvectors()(m, idx);
      n1 += v[m] * v[m];
      n2 += es.eigenvectors()(m, idx) * es.eigenvectors()(m, idx);
    }
    CHECK(std::abs(dot) / std::sqrt(n1 * n2) > 1.0 - 1e-8);
  }
}

TEST_CASE("norm sums of expansion coefficients reach the product values") {
  // the top-point norm sum, via the stable eigenvector route
  const auto T = build_I1(80, lp);
  const auto v = eigenvector_recurrence(T, 1.0);
  KahanSum s;
  for (double x : v) s.add(x * x);
  const double expect = qpochhammer_inf_value(0.12 * 0.25, base05) /
                        qpochhammer_inf_value(0.15, base05);
  CHECK(s.value() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("little connection matrix head entry") {
  const auto conn = connection_matrix_little(40, 40, lp);
  const double expect = std::sqrt(qpochhammer_inf_value(0.15, base05) /
                                  qpochhammer_inf_value(0.12 * 0.25, base05));
  CHECK(conn(0, 0) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("unitarity defects decay with the truncation") {
  const LittleParams near(QBase(0.6), 1.45, 0.4);
  const auto d75 = unitarity_defect_little(connection_matrix_little(75, 75, near), 15);
  const auto d150 = unitarity_defect_little(connection_matrix_little(150, 150, near), 15);
  CHECK(d150.max_defect() < d75.max_defect());
}

TEST_CASE("big connection matrix satisfies all three column relations") {
  const auto [ca, cc] = connection_matrix_big(150, 150, bp);
  const auto d = unitarity_defect_big(ca, cc, 15);
  CHECK(d.col_defect < 1e-12);
  CHECK(d.cross_defect < 1e-12);
  CHECK(d.row_defect < 1e-12);
}

TEST_CASE("dual-basis symmetrization ratios") {
  CHECK(j_dual_symmetry_check(lp, 25).residual < 1e-13);
  CHECK(j_dual_symmetry_check(bp, false, 25).residual < 1e-13);
  CHECK(j_dual_symmetry_check(bp, true, 25).residual < 1e-13);
}

TEST_CASE("J builders") {
  const auto Jc = build_J_canonical(10, lp);
  for (int n = 0; n < 10; ++n)
    CHECK(Jc.diag[n] == doctest::Approx(mu_lattice(n, lp).mu).epsilon(1e-14));
  for (double e : Jc.offdiag) CHECK(e == 0.0);

  // symmetrized off-diagonals square to the product of the one-sided
  // coefficients of the J action
  const double q = 0.5, a = 0.3, b = 0.4;
  const auto Jd = build_J_dual_little(8, lp);
  CHECK(Jd.label == OperatorLabel::J_dual_little);
  for (int n = 0; n < 7; ++n) {
    const double up = a * std::pow(q, -n) * (1.0 - b * std::pow(q, n + 1));
    const double dn = std::pow(q, -n - 1) * (1.0 - std::pow(q, n + 1));
    CHECK(Jd.offdiag[n] * Jd.offdiag[n] == doctest::Approx(up * dn).epsilon(1e-13));
    CHECK(Jd.offdiag[n] < 0.0);
    CHECK(Jd.diag[n] == doctest::Approx(std::pow(q, -n) * (1.0 + a)).epsilon(1e-14));
  }
  const auto Ja = build_J_dual_big_a(8, bp);
  const auto Jb = build_J_dual_big_c(8, bp);
  CHECK(Ja.label == OperatorLabel::J_dual_big_a);
  CHECK(Jb.label == OperatorLabel::J_dual_big_c);
  for (int n = 0; n < 7; ++n) {
    CHECK(Ja.offdiag[n] < 0.0);  // sign of the c/a factor
    CHECK(Jb.offdiag[n] < 0.0);
  }
}
