// SPDX-License-Identifier: Apache-2.0

#include "qjacobi/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace qjacobi {

namespace {

constexpr double kTailCut = 1e-13;  // relative floor for decayed eigenvector tails

double pinf(double x, const QBase& base) { return qpochhammer_inf_value(x, base); }

void check_radicand(double r, const char* where) {
  if (!(r >= 0.0)) throw DomainError(std::string(where) + ": negative radicand");
}

}  // namespace

TridiagonalOperator build_I1(int N, const LittleParams& p) {
  if (N < 2) throw DomainError("build_I1: N must be at least 2");
  const double q = p.q(), a = p.a(), b = p.b(), ab = a * b;
  TridiagonalOperator T;
  T.label = OperatorLabel::I1;
  T.diag.resize(N);
  T.offdiag.resize(N - 1);
  for (int n = 0; n < N; ++n) {
    const double qn = std::pow(q, n), qn1 = qn * q;
    const double q2n = qn * qn;
    T.diag[n] = qn / (1.0 - ab * q * q2n) *
                ((1.0 - a * qn1) * (1.0 - ab * qn1) / (1.0 - ab * q * q * q2n) +
                 a * (1.0 - qn) * (1.0 - b * qn) / (1.0 - ab * q2n));
    if (n < N - 1) {
      const double rad = (1.0 - qn1) * (1.0 - a * qn1) * (1.0 - b * qn1) *
                         (1.0 - ab * qn1) / ((1.0 - ab * q * q2n) * (1.0 - ab * q * q * q * q2n));
      check_radicand(rad, "build_I1");
      const double an = std::sqrt(a) * qn * std::sqrt(q) * std::sqrt(rad) /
                        (1.0 - ab * q * q * q2n);
      T.offdiag[n] = -an;
    }
  }
  return T;
}

TridiagonalOperator build_I2(int N, const BigParams& p) {
  if (N < 2) throw DomainError("build_I2: N must be at least 2");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c(), ab = a * b;
  TridiagonalOperator T;
  T.label = OperatorLabel::I2;
  T.diag.resize(N);
  T.offdiag.resize(N - 1);
  for (int n = 0; n < N; ++n) {
    const double qn = std::pow(q, n), qn1 = qn * q;
    const double q2n = qn * qn;
    const double bn =
        (1.0 - a * qn1) * (1.0 - ab * qn1) * (1.0 - c * qn1) /
            ((1.0 - ab * q * q2n) * (1.0 - ab * q * q * q2n)) -
        a * c * qn1 * (1.0 - qn) * (1.0 - b * qn) * (1.0 - ab * qn / c) /
            ((1.0 - ab * q2n) * (1.0 - ab * q * q2n)) -
        1.0;
    T.diag[n] = -bn;
    if (n < N - 1) {
      const double rad = -a * c * qn1 * q * (1.0 - qn1) * (1.0 - a * qn1) *
                         (1.0 - b * qn1) * (1.0 - ab * qn1) * (1.0 - c * qn1) *
                         (1.0 - ab * qn1 / c) /
                         ((1.0 - ab * q * q2n) * (1.0 - ab * q * q * q * q2n));
      check_radicand(rad, "build_I2");
      T.offdiag[n] = std::sqrt(rad) / (1.0 - ab * q * q * q2n);
    }
  }
  return T;
}

TridiagonalOperator build_J_canonical(int N, const LittleParams& p) {
  if (N < 1) throw DomainError("build_J_canonical: N must be positive");
  TridiagonalOperator T;
  T.label = OperatorLabel::J_canonical;
  T.diag.resize(N);
  T.offdiag.assign(std::max(0, N - 1), 0.0);
  for (int n = 0; n < N; ++n) T.diag[n] = mu_lattice(n, p).mu;
  return T;
}

TridiagonalOperator build_J_canonical(int N, const BigParams& p) {
  if (N < 1) throw DomainError("build_J_canonical: N must be positive");
  TridiagonalOperator T;
  T.label = OperatorLabel::J_canonical;
  T.diag.resize(N);
  T.offdiag.assign(std::max(0, N - 1), 0.0);
  for (int n = 0; n < N; ++n) T.diag[n] = mu_lattice(n, p).mu;
  return T;
}

TridiagonalOperator build_J_dual_little(int N, const LittleParams& p) {
  if (N < 2) throw DomainError("build_J_dual_little: N must be at least 2");
  const double q = p.q(), a = p.a(), b = p.b();
  TridiagonalOperator T;
  T.label = OperatorLabel::J_dual_little;
  T.diag.resize(N);
  T.offdiag.resize(N - 1);
  for (int n = 0; n < N; ++n) {
    const double qmn = std::pow(q, -n);
    T.diag[n] = qmn * (1.0 + a);
    if (n < N - 1) {
      const double rad =
          a * qmn * qmn / q * (1.0 - b * std::pow(q, n + 1)) * (1.0 - std::pow(q, n + 1));
      check_radicand(rad, "build_J_dual_little");
      T.offdiag[n] = -std::sqrt(rad);
    }
  }
  return T;
}

TridiagonalOperator build_J_dual_big_a(int N, const BigParams& p) {
  if (N < 2) throw DomainError("build_J_dual_big_a: N must be at least 2");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  TridiagonalOperator T;
  T.label = OperatorLabel::J_dual_big_a;
  T.diag.resize(N);
  T.offdiag.resize(N - 1);
  for (int n = 0; n < N; ++n) {
    const double qmn = std::pow(q, -n), qn1 = std::pow(q, n + 1);
    T.diag[n] = (qmn * (a * b + a * c + a + c) - c * qmn * qmn / q * (1.0 + q)) / a;
    if (n < N - 1) {
      const double rad = (1.0 - a * qn1) * (1.0 - a * b * qn1 / c) * (1.0 - qn1) *
                         (1.0 - a * qn1 / c);
      check_radicand(rad, "build_J_dual_big_a");
      T.offdiag[n] = (c / a) * qmn * qmn / (q * std::sqrt(q)) * std::sqrt(rad);
    }
  }
  return T;
}

TridiagonalOperator build_J_dual_big_c(int N, const BigParams& p) {
  if (N < 2) throw DomainError("build_J_dual_big_c: N must be at least 2");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  TridiagonalOperator T;
  T.label = OperatorLabel::J_dual_big_c;
  T.diag.resize(N);
  T.offdiag.resize(N - 1);
  for (int n = 0; n < N; ++n) {
    const double qmn = std::pow(q, -n), qn1 = std::pow(q, n + 1);
    T.diag[n] = (qmn * (a * b + a * c + a + c) - a * qmn * qmn / q * (1.0 + q)) / c;
    if (n < N - 1) {
      const double rad = (1.0 - b * qn1) * (1.0 - c * qn1) * (1.0 - qn1) *
                         (1.0 - c * qn1 / a);
      check_radicand(rad, "build_J_dual_big_c");
      T.offdiag[n] = (a / c) * qmn * qmn / (q * std::sqrt(q)) * std::sqrt(rad);
    }
  }
  return T;
}

std::vector<double> eigenvalues(const TridiagonalOperator& op) {
  const int N = op.size();
  if (N < 1) throw DomainError("eigenvalues: empty operator");
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(op.diag.data(), N);
  Eigen::VectorXd e(std::max(0, N - 1));
  for (int i = 0; i + 1 < N; ++i) e[i] = op.offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("eigenvalues: tridiagonal QL iteration failed");
  std::vector<double> out(N);
  Eigen::Map<Eigen::VectorXd>(out.data(), N) = solver.eigenvalues();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> eigenvector_recurrence(const TridiagonalOperator& op, double lambda) {
  const int N = op.size();
  std::vector<double> v(N, 0.0);
  v[0] = 1.0;
  if (N == 1) return v;
  for (double e : op.offdiag)
    if (e == 0.0) throw DomainError("eigenvector_recurrence: zero off-diagonal entry");

  // Forward sweep. Past the peak the true component is the minimal solution,
  // so forward rounding error eventually takes over and grows back out of the
  // decayed tail. The two-point envelope cannot resurge in a true tail, so a
  // 30x envelope rise after a decay below 1e-2 of the peak marks the
  // takeover; stop there, or on leaving [tiny, huge].
  // The stop tests use the two-point envelope: single components may be
  // legitimately tiny mid-rise (e.g. parity-suppressed entries when the
  // diagonal vanishes), but consecutive pairs cannot.
  double vmax = 1.0;
  int peak = 0;
  double env_min = 1.0;
  int stop = N - 1;
  bool overflowed = false;
  v[1] = (lambda - op.diag[0]) / op.offdiag[0];
  for (int m = 1; m < N; ++m) {
    const double am = std::abs(v[m]);
    const double env = std::max(am, std::abs(v[m - 1]));
    // takeover is tested before the peak update: a resurgence out of a
    // 100x-deep valley is rounding noise even when it tops the old peak
    const bool junk_onset = m > peak && env_min < 1e-2 * vmax &&
                            (env > 30.0 * env_min || am >= vmax);
    if (env < kTailCut * vmax || am > 1e250 || junk_onset) {
      stop = m;
      overflowed = am > 1e250;
      std::fill(v.begin() + m, v.end(), 0.0);
      break;
    }
    if (am >= vmax) {
      vmax = am;
      peak = m;
      env_min = env;
    } else {
      env_min = std::min(env_min, env);
    }
    if (m + 1 < N)
      v[m + 1] = ((lambda - op.diag[m]) * v[m] - op.offdiag[m - 1] * v[m - 1]) /
                 op.offdiag[m];
  }

  if (peak >= N - 2 || overflowed) return v;  // still rising at the cut point

  // Backward (Miller) sweep for the decaying tail: seed a truncated solution
  // a safe width past the forward stop and rescale to match at the peak. The
  // decaying solution is dominant in this direction, so the tail comes out
  // with full relative accuracy instead of the forward error floor. Width 40
  // puts the seed far below eps * peak for any base handled here.
  const int m_end = std::min(N - 1, stop + 40);
  std::vector<double> w(static_cast<size_t>(m_end) + 1, 0.0);
  w[m_end] = 1.0;
  if (m_end > peak) {
    if (m_end - 1 >= 0)
      w[m_end - 1] = (lambda - op.diag[m_end]) * w[m_end] / op.offdiag[m_end - 1];
    for (int m = m_end - 1; m > peak; --m) {
      w[m - 1] = ((lambda - op.diag[m]) * w[m] - op.offdiag[m] * w[m + 1]) /
                 op.offdiag[m - 1];
      if (std::abs(w[m - 1]) > 1e280) {  // rescale to avoid overflow
        const double s = 1.0 / std::abs(w[m - 1]);
        for (int i = m - 1; i <= m_end; ++i) w[i] *= s;
      }
    }
  }
  if (w[peak] != 0.0 && std::isfinite(w[peak])) {
    const double scale = v[peak] / w[peak];
    for (int m = peak + 1; m <= m_end; ++m) v[m] = w[m] * scale;
    for (int m = m_end + 1; m < N; ++m) v[m] = 0.0;
  }
  for (double x : v)
    if (!std::isfinite(x))
      throw EigensolverFailure("eigenvector_recurrence: non-finite component");
  return v;
}

namespace {

SpectrumReport pair_descending(std::vector<double> computed, std::vector<double> predicted,
                               int N, double tol) {
  SpectrumReport rep;
  rep.truncation_size = N;
  std::sort(computed.begin(), computed.end(), std::greater<>());
  std::sort(predicted.begin(), predicted.end(), std::greater<>());
  rep.computed = computed;
  rep.predicted = predicted;
  const size_t k = std::min(computed.size(), predicted.size());
  if (computed.size() < predicted.size())
    rep.max_abs_dev = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < k; ++i) {
    const double dev = std::abs(computed[i] - predicted[i]);
    rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
    if (dev <= tol) ++rep.matched_count;
  }
  return rep;
}

}  // namespace

SpectrumReport verify_spectrum_I1(int N, const LittleParams& p, int top_k, double tol) {
  if (top_k < 1 || top_k > N / 4)
    throw DomainError("verify_spectrum_I1: need 1 <= top_k <= N/4");
  const auto eig = eigenvalues(build_I1(N, p));
  std::vector<double> computed(eig.end() - top_k, eig.end());
  std::vector<double> predicted(top_k);
  for (int n = 0; n < top_k; ++n) predicted[n] = std::pow(p.q(), n);
  return pair_descending(std::move(computed), std::move(predicted), N, tol);
}

SpectrumReport verify_spectrum_I2(int N, const BigParams& p, int top_k, double tol) {
  if (top_k < 1 || top_k > N / 4)
    throw DomainError("verify_spectrum_I2: need 1 <= top_k <= N/4");
  const auto eig = eigenvalues(build_I2(N, p));
  std::vector<double> pos, neg;
  for (double x : eig) (x > 0.0 ? pos : neg).push_back(x);
  std::sort(pos.begin(), pos.end(), std::greater<>());  // largest positives first
  std::sort(neg.begin(), neg.end());                    // most negative first
  if (static_cast<int>(pos.size()) > top_k) pos.resize(top_k);
  if (static_cast<int>(neg.size()) > top_k) neg.resize(top_k);

  std::vector<double> computed = pos;
  computed.insert(computed.end(), neg.begin(), neg.end());
  std::vector<double> predicted;
  for (int n = 0; n < top_k; ++n) predicted.push_back(p.a() * std::pow(p.q(), n + 1));
  for (int n = 0; n < top_k; ++n) predicted.push_back(p.c() * std::pow(p.q(), n + 1));
  return pair_descending(std::move(computed), std::move(predicted), N, tol);
}

namespace {

ConnectionMatrix assemble_columns(const TridiagonalOperator& T, ConnectionFamily fam,
                                  int M, int Ncols,
                                  const std::vector<double>& lambdas,
                                  const std::vector<double>& norms) {
  ConnectionMatrix conn;
  conn.family = fam;
  conn.rows = M;
  conn.cols = Ncols;
  conn.entries.assign(static_cast<size_t>(M) * Ncols, 0.0);
  for (int n = 0; n < Ncols; ++n) {
    const auto v = eigenvector_recurrence(T, lambdas[n]);
    for (int m = 0; m < M; ++m)
      conn.entries[static_cast<size_t>(m) * Ncols + n] = norms[n] * v[m];
  }
  return conn;
}

}  // namespace

ConnectionMatrix connection_matrix_little(int M, int Ncols, const LittleParams& p) {
  if (M < 2 || Ncols < 1) throw DomainError("connection_matrix_little: bad extents");
  const double q = p.q(), a = p.a(), b = p.b();
  const auto T = build_I1(M, p);
  const double cinf = pinf(a * q, p.base()) / pinf(a * b * q * q, p.base());
  std::vector<double> lambdas(Ncols), norms(Ncols);
  for (int n = 0; n < Ncols; ++n) {
    lambdas[n] = std::pow(q, n);
    const double rad = cinf * qpochhammer(b * q, p.base(), n) *
                       std::pow(a * q, n) / qpochhammer(q, p.base(), n);
    check_radicand(rad, "connection_matrix_little");
    norms[n] = std::sqrt(rad);
  }
  return assemble_columns(T, ConnectionFamily::little, M, Ncols, lambdas, norms);
}

std::pair<ConnectionMatrix, ConnectionMatrix> connection_matrix_big(int M, int Ncols,
                                                                    const BigParams& p) {
  if (M < 2 || Ncols < 1) throw DomainError("connection_matrix_big: bad extents");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  const auto T = build_I2(M, p);
  const double Ca = pinf(b * q, p.base()) * pinf(c * q, p.base()) /
                    (pinf(a * b * q * q, p.base()) * pinf(c / a, p.base()));
  const double Cc = pinf(a * q, p.base()) * pinf(a * b * q / c, p.base()) /
                    (pinf(a * b * q * q, p.base()) * pinf(a / c, p.base()));
  std::vector<double> la(Ncols), na(Ncols), lc(Ncols), nc(Ncols);
  for (int n = 0; n < Ncols; ++n) {
    const double qn = std::pow(q, n);
    la[n] = a * qn * q;
    lc[n] = c * qn * q;
    const double rad_a = Ca * qn *
                         qpochhammer_list({a * b * q / c, a * q}, p.base(), n) /
                         qpochhammer_list({a * q / c, q}, p.base(), n);
    const double rad_c = Cc * qn *
                         qpochhammer_list({b * q, c * q}, p.base(), n) /
                         qpochhammer_list({c * q / a, q}, p.base(), n);
    check_radicand(rad_a, "connection_matrix_big(a)");
    check_radicand(rad_c, "connection_matrix_big(c)");
    na[n] = std::sqrt(rad_a);
    nc[n] = std::sqrt(rad_c);
  }
  return {assemble_columns(T, ConnectionFamily::big_a_branch, M, Ncols, la, na),
          assemble_columns(T, ConnectionFamily::big_c_branch, M, Ncols, lc, nc)};
}

namespace {

double block_gram_defect(const ConnectionMatrix& A, const ConnectionMatrix& B, int block,
                         bool rows_of_A, bool subtract_identity) {
  // max over i,j < block of |<A_i, B_j> - delta_ij|, vectors being rows or columns
  double worst = 0.0;
  for (int i = 0; i < block; ++i) {
    for (int j = i; j < block; ++j) {
      KahanSum s;
      if (rows_of_A) {
        for (int k = 0; k < A.cols; ++k) s.add(A(i, k) * B(j, k));
      } else {
        for (int k = 0; k < A.rows; ++k) s.add(A(k, i) * B(k, j));
      }
      double dev = s.value();
      if (subtract_identity && i == j) dev -= 1.0;
      worst = std::max(worst, std::abs(dev));
    }
  }
  return worst;
}

double block_row_defect_big(const ConnectionMatrix& A, const ConnectionMatrix& C, int block) {
  double worst = 0.0;
  for (int i = 0; i < block; ++i) {
    for (int j = i; j < block; ++j) {
      KahanSum s;
      for (int k = 0; k < A.cols; ++k) s.add(A(i, k) * A(j, k));
      for (int k = 0; k < C.cols; ++k) s.add(C(i, k) * C(j, k));
      double dev = s.value() - (i == j ? 1.0 : 0.0);
      worst = std::max(worst, std::abs(dev));
    }
  }
  return worst;
}

}  // namespace

UnitarityDefect unitarity_defect_little(const ConnectionMatrix& conn, int block) {
  if (block < 1 || block > conn.rows || block > conn.cols)
    throw DomainError("unitarity_defect_little: block exceeds matrix extents");
  UnitarityDefect d;
  d.row_defect = block_gram_defect(conn, conn, block, /*rows_of_A=*/true, true);
  d.col_defect = block_gram_defect(conn, conn, block, /*rows_of_A=*/false, true);
  return d;
}

UnitarityDefect unitarity_defect_big(const ConnectionMatrix& a_branch,
                                     const ConnectionMatrix& c_branch, int block) {
  if (block < 1 || block > a_branch.rows || block > a_branch.cols ||
      block > c_branch.rows || block > c_branch.cols)
    throw DomainError("unitarity_defect_big: block exceeds matrix extents");
  UnitarityDefect d;
  d.row_defect = block_row_defect_big(a_branch, c_branch, block);
  d.col_defect = std::max(block_gram_defect(a_branch, a_branch, block, false, true),
                          block_gram_defect(c_branch, c_branch, block, false, true));
  // cross-branch columns are orthogonal without an identity part
  double worst = 0.0;
  for (int i = 0; i < block; ++i)
    for (int j = 0; j < block; ++j) {
      KahanSum s;
      for (int k = 0; k < a_branch.rows; ++k) s.add(a_branch(k, i) * c_branch(k, j));
      worst = std::max(worst, std::abs(s.value()));
    }
  d.cross_defect = worst;
  return d;
}

IdentityReport j_dual_symmetry_check(const LittleParams& p, int n_max) {
  if (n_max < 2) throw DomainError("j_dual_symmetry_check: n_max must be at least 2");
  const double q = p.q(), a = p.a(), b = p.b();
  double worst = 0.0;
  for (int n = 0; n + 1 < n_max; ++n) {
    const double qn1 = std::pow(q, n + 1);
    const double ratio = std::sqrt(a * q * (1.0 - b * qn1) / (1.0 - qn1));
    const double upper = a * std::pow(q, -n) * (1.0 - b * qn1) / ratio;
    const double lower = std::pow(q, -n - 1) * (1.0 - qn1) * ratio;
    worst = std::max(worst, std::abs(upper - lower) / std::abs(upper));
  }
  return make_report("jsym-4.4", {{"q", q}, {"a", a}, {"b", b}, {"n_max", double(n_max)}},
                     worst, 0.0, worst, 1e-13, n_max);
}

IdentityReport j_dual_symmetry_check(const BigParams& p, bool primed_branch, int n_max) {
  if (n_max < 2) throw DomainError("j_dual_symmetry_check: n_max must be at least 2");
  const double q = p.q(), a = p.a(), b = p.b(), c = p.c();
  double worst = 0.0;
  for (int n = 0; n + 1 < n_max; ++n) {
    const double qn1 = std::pow(q, n + 1);
    const double q2n1 = std::pow(q, -2 * n - 1);
    double ratio, upper, lower;
    if (!primed_branch) {
      ratio = std::sqrt(q * (1.0 - a * qn1) * (1.0 - a * b * qn1 / c) /
                        ((1.0 - qn1) * (1.0 - a * qn1 / c)));
      upper = q2n1 * (1.0 - a * qn1) * (1.0 - a * b * qn1 / c) / ratio;
      lower = q2n1 / q * (1.0 - a * qn1 / c) * (1.0 - qn1) * ratio;
    } else {
      ratio = std::sqrt(q * (1.0 - c * qn1) * (1.0 - b * qn1) /
                        ((1.0 - qn1) * (1.0 - c * qn1 / a)));
      upper = q2n1 * (1.0 - b * qn1) * (1.0 - c * qn1) / ratio;
      lower = q2n1 / q * (1.0 - c * qn1 / a) * (1.0 - qn1) * ratio;
    }
    worst = std::max(worst, std::abs(upper - lower) / std::abs(upper));
  }
  return make_report("jsym-7.4",
                     {{"q", q}, {"a", a}, {"b", b}, {"c", c},
                      {"branch", primed_branch ? 1.0 : 0.0}, {"n_max", double(n_max)}},
                     worst, 0.0, worst, 1e-13, n_max);
}

}  // namespace qjacobi
