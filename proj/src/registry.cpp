// SPDX-License-Identifier: Apache-2.0

#include "qjacobi/registry.hpp"

#include <algorithm>
#include <cmath>

#include "qjacobi/identities.hpp"
#include "qjacobi/orthogonality.hpp"
#include "qjacobi/spectral.hpp"

namespace qjacobi {

namespace {

LittleParams little_of(const GridPoint& pt) {
  return LittleParams(QBase(pt.q), pt.a, pt.b);
}

BigParams big_of(const GridPoint& pt) {
  return BigParams(QBase(pt.q), pt.a, pt.b, pt.c);
}

// Truncation large enough that a geometric tail with ratio r sits below 1e-14.
int adaptive_trunc(double r, int at_least) {
  const int need = static_cast<int>(std::ceil(std::log(1e-14 * (1.0 - r)) / std::log(r)));
  return std::clamp(std::max(at_least, need), at_least, 3000);
}

IdentityReport report_from_gram(std::string id, std::map<std::string, double> params,
                                const GramReport& rep, double tol) {
  int worst = 0;
  for (int i = 1; i < rep.size; ++i)
    if (std::abs(rep.at(i, i) - rep.rhs_diag[i]) / std::abs(rep.rhs_diag[i]) >
        std::abs(rep.at(worst, worst) - rep.rhs_diag[worst]) / std::abs(rep.rhs_diag[worst]))
      worst = i;
  params["worst_index"] = worst;
  return make_report(std::move(id), std::move(params), rep.at(worst, worst),
                     rep.rhs_diag[worst], std::max(rep.max_diag_reldev, rep.max_offdiag_abs),
                     tol, rep.truncation);
}

IdentityReport worst_of(std::vector<IdentityReport> reports) {
  size_t w = 0;
  for (size_t i = 1; i < reports.size(); ++i)
    if (reports[i].residual > reports[w].residual) w = i;
  return reports[w];
}

const std::vector<double> kTGrid = {-0.1, 0.1, -0.3, 0.3, 0.5};

}  // namespace

const std::vector<IdentityEntry>& identity_registry() {
  static const std::vector<IdentityEntry> entries = {
      {"orth-4.8", ParamNeeds::little, 1e-10, "little-family orthogonality vs closed-form norms"},
      {"orth-5.5", ParamNeeds::little, 1e-10, "dual-little orthogonality on the lattice"},
      {"orth-7.13", ParamNeeds::big, 1e-10, "big-family two-branch orthogonality"},
      {"orth-8.5", ParamNeeds::big, 1e-10, "F-function orthogonality under rho"},
      {"orth-8.6", ParamNeeds::big, 1e-10, "F'-function orthogonality under rho"},
      {"orth-8.9", ParamNeeds::big, 1e-10, "dual-big orthogonality on the lattice"},
      {"cross-8.12", ParamNeeds::big, 1e-10, "alternating cross-orthogonality of dual-big pairs"},
      {"unitary-4.7", ParamNeeds::little, 1e-8, "little connection-matrix row/column orthonormality"},
      {"unitary-7.11", ParamNeeds::big, 1e-8, "big connection-matrix column relations"},
      {"unitary-7.12", ParamNeeds::big, 1e-8, "big connection-matrix combined row relation"},
      {"special-7.1", ParamNeeds::big, 1e-12, "big-family values at the spectral edges"},
      {"symmetry-8.13", ParamNeeds::big, 1e-12, "dual-big parameter symmetry"},
      {"qdiff-3.6", ParamNeeds::little, 1e-11, "little-family q-difference equation"},
      {"qdiff-6.6", ParamNeeds::big, 1e-11, "big-family q-difference equation"},
      {"limit-racah-8.10", ParamNeeds::big, 1e-8, "q-Racah to dual-big truncation limit"},
      {"limit-c0", ParamNeeds::big, 1.0, "dual-big to dual-little contraction as c->0"},
      {"limit-b0-8.11", ParamNeeds::little, 1e-12, "dual-little at b=0 vs Al-Salam-Carlitz II"},
      {"gen-9.1", ParamNeeds::big, 1e-10, "dual-big generating function, first form"},
      {"gen-9.2", ParamNeeds::big, 1e-10, "dual-big generating function, second form"},
      {"gen-9.3", ParamNeeds::big, 1e-10, "dual-big generating function, symmetric weight"},
      {"gen-9.4", ParamNeeds::little, 1e-10, "dual-little generating function"},
      {"sum-A.1", ParamNeeds::little, 1e-12, "little-family norm sum vs infinite product"},
      {"sum-A.4", ParamNeeds::little, 1e-12, "very-well-poised 6phi5 summation"},
      {"sum-A.5", ParamNeeds::little, 1e-12, "very-well-poised 4phi5 limit summation"},
      {"sum-A.6", ParamNeeds::big, 1e-12, "big-family norm sum, a-branch"},
      {"sum-A.7", ParamNeeds::big, 1e-12, "big-family norm sum, c-branch"},
      {"eta-A.8", ParamNeeds::little, 1e-10, "vanishing lattice moments and their recursion"},
      {"complete-7.14", ParamNeeds::big, 1e-11, "two-branch completeness sum equals one"},
      {"qbinom-4.9", ParamNeeds::little, 1e-12, "q-binomial theorem"},
      {"orth-alt-charlier", ParamNeeds::charlier, 1e-10, "alternative q-Charlier dual orthogonality"},
      {"jsym-4.4", ParamNeeds::little, 1e-13, "dual-basis symmetrization, little family"},
      {"jsym-7.4", ParamNeeds::big, 1e-13, "dual-basis symmetrization, big family"},
  };
  return entries;
}

std::vector<std::string> registry_ids() {
  std::vector<std::string> ids;
  for (const auto& e : identity_registry()) ids.push_back(e.id);
  return ids;
}

const IdentityEntry* registry_find(const std::string& id) {
  for (const auto& e : identity_registry())
    if (e.id == id) return &e;
  return nullptr;
}

std::vector<GridPoint> default_grid() {
  std::vector<GridPoint> grid;
  for (double q : {0.3, 0.5, 0.7})
    for (double a : {0.2, 0.5, 0.891 / q})
      for (double b : {0.2, 0.5, 0.891 / q})
        for (double c : {-0.1, -0.5, -2.0}) grid.push_back({q, a, b, c});
  return grid;
}

std::vector<IdentityReport> run_identity(const std::string& id, const GridPoint& pt,
                                         const VerifyOptions& opts) {
  const IdentityEntry* entry = registry_find(id);
  if (!entry) throw DomainError("unknown identity id: " + id);
  const double tol = opts.tolerance.value_or(entry->tolerance);
  const QBase base(pt.q);
  std::map<std::string, double> pl = {{"q", pt.q}, {"a", pt.a}, {"b", pt.b}};
  std::map<std::string, double> pb = {{"q", pt.q}, {"a", pt.a}, {"b", pt.b}, {"c", pt.c}};

  auto with_tol = [&](IdentityReport r) {
    r.tolerance = tol;
    r.pass = r.residual <= tol;
    return std::vector<IdentityReport>{std::move(r)};
  };

  if (id == "orth-4.8") {
    const auto p = little_of(pt);
    const int trunc = adaptive_trunc(pt.a * pt.q, opts.truncation);
    return with_tol(report_from_gram(id, pl, gram_little(13, p, trunc), tol));
  }
  if (id == "orth-5.5") {
    const auto p = little_of(pt);
    return with_tol(report_from_gram(id, pl, gram_dual_little(13, p, opts.truncation), tol));
  }
  if (id == "orth-7.13") {
    const auto p = big_of(pt);
    const int trunc = adaptive_trunc(pt.q, opts.truncation);
    return with_tol(report_from_gram(id, pb, gram_big(11, p, trunc), tol));
  }
  if (id == "orth-8.5" || id == "orth-8.6") {
    const auto p = big_of(pt);
    const auto branch = id == "orth-8.5" ? BigFunctionBranch::F : BigFunctionBranch::FPrime;
    return with_tol(report_from_gram(id, pb, gram_functions_big(11, p, opts.truncation, branch), tol));
  }
  if (id == "orth-8.9") {
    const auto p = big_of(pt);
    return with_tol(report_from_gram(id, pb, gram_dual_big(11, p, opts.truncation), tol));
  }
  if (id == "cross-8.12") {
    const auto p = big_of(pt);
    std::vector<IdentityReport> all;
    for (int n = 0; n <= 10; ++n)
      for (int np = n; np <= 10; ++np)
        all.push_back(cross_orth_dual_big(n, np, p, opts.truncation));
    return with_tol(worst_of(std::move(all)));
  }
  if (id == "unitary-4.7") {
    const auto p = little_of(pt);
    const int M = opts.matrix_size;
    const auto conn = connection_matrix_little(M, M, p);
    const auto defect = unitarity_defect_little(conn, std::min(20, M / 4));
    auto params = pl;
    params["M"] = M;
    return with_tol(make_report(id, params, defect.row_defect, defect.col_defect,
                                defect.max_defect(), tol, M));
  }
  if (id == "unitary-7.11" || id == "unitary-7.12") {
    const auto p = big_of(pt);
    const int M = opts.matrix_size;
    const auto [ca, cc] = connection_matrix_big(M, M, p);
    const auto defect = unitarity_defect_big(ca, cc, std::min(20, M / 4));
    auto params = pb;
    params["M"] = M;
    const double residual = id == "unitary-7.11"
                                ? std::max(defect.col_defect, defect.cross_defect)
                                : defect.row_defect;
    return with_tol(make_report(id, params, defect.col_defect, defect.row_defect,
                                residual, tol, M));
  }
  if (id == "special-7.1") return with_tol(big_special_values(big_of(pt), 20, tol));
  if (id == "symmetry-8.13") return with_tol(symmetry_8_13(big_of(pt), 15, 15, tol));
  if (id == "qdiff-3.6") return with_tol(qdiff_little_check(little_of(pt), 8, tol));
  if (id == "qdiff-6.6") return with_tol(qdiff_big_check(big_of(pt), 8, tol));
  if (id == "limit-racah-8.10") {
    // truncation levels scale with the base so the final level converges
    const int n0 = std::max(13, (int)std::ceil(13.0 * std::log(0.5) / std::log(pt.q)));
    return with_tol(racah_limit(big_of(pt), 8, 8, {n0, 2 * n0, 3 * n0, 4 * n0}, tol));
  }
  if (id == "limit-c0") return with_tol(dual_c0_limit(base, pt.a, pt.b, 10, 10, tol));
  if (id == "limit-b0-8.11")
    return with_tol(asc2_limit(base, pt.a, 12, 12, tol));
  if (id == "gen-9.1" || id == "gen-9.2" || id == "gen-9.3") {
    const auto p = big_of(pt);
    std::vector<double> ts = opts.t ? std::vector<double>{*opts.t} : kTGrid;
    std::vector<int> xs;
    if (opts.x)
      xs = {*opts.x};
    else
      for (int x = 0; x <= 6; ++x) xs.push_back(x);
    std::vector<IdentityReport> all;
    for (double t : ts)
      for (int x : xs) {
        if (id == "gen-9.1") all.push_back(genfun_9_1(p, t, x, tol));
        if (id == "gen-9.2") all.push_back(genfun_9_2(p, t, x, tol));
        if (id == "gen-9.3") all.push_back(genfun_9_3(p, t, x, tol));
      }
    return with_tol(worst_of(std::move(all)));
  }
  if (id == "gen-9.4") {
    const auto p = little_of(pt);
    std::vector<double> ts = opts.t ? std::vector<double>{*opts.t} : kTGrid;
    std::vector<int> xs;
    if (opts.x)
      xs = {*opts.x};
    else
      for (int x = 0; x <= 6; ++x) xs.push_back(x);
    std::vector<IdentityReport> all;
    for (double t : ts)
      for (int x : xs)
        if (std::abs(pt.a * t) < 1.0) all.push_back(genfun_9_4(p, t, x, tol));
    return with_tol(worst_of(std::move(all)));
  }
  if (id == "sum-A.1") return with_tol(check_A1(little_of(pt), tol));
  if (id == "sum-A.4") {
    const double d = pt.q > 0.65 ? 1.2 : 0.8;
    return with_tol(check_A4(0.5, 0.6, 0.7, d, base, tol));
  }
  if (id == "sum-A.5") return with_tol(check_A5(pt.a, pt.b, base, tol));
  if (id == "sum-A.6") return with_tol(check_A6(big_of(pt), tol));
  if (id == "sum-A.7") return with_tol(check_A7(big_of(pt), tol));
  if (id == "eta-A.8") {
    const int kmax = opts.k.value_or(10);
    std::vector<IdentityReport> all;
    for (int k = 0; k <= kmax; ++k) all.push_back(eta_k(pt.a, base, k, tol));
    for (int k = 0; k + 1 <= kmax; ++k) all.push_back(eta_recursion(pt.a, base, k, tol));
    auto w = worst_of(std::move(all));
    w.identity_id = "eta-A.8";
    return with_tol(std::move(w));
  }
  if (id == "complete-7.14") return with_tol(check_7_14(big_of(pt), tol));
  if (id == "qbinom-4.9") return with_tol(qbinomial_check(pt.a, pt.b, base, tol));
  if (id == "orth-alt-charlier") {
    auto params = std::map<std::string, double>{{"q", pt.q}, {"a", pt.a}};
    return with_tol(report_from_gram(id, params,
                                     gram_alt_qcharlier_dual(11, pt.a, base, opts.truncation),
                                     tol));
  }
  if (id == "jsym-4.4") return with_tol(j_dual_symmetry_check(little_of(pt), 25));
  if (id == "jsym-7.4") {
    auto r1 = j_dual_symmetry_check(big_of(pt), false, 25);
    auto r2 = j_dual_symmetry_check(big_of(pt), true, 25);
    return with_tol(worst_of({std::move(r1), std::move(r2)}));
  }
  throw DomainError("unknown identity id: " + id);  // unreachable
}

}  // namespace qjacobi
