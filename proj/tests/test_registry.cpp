// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "qjacobi/registry.hpp"
#include "qjacobi/qcore.hpp"

using namespace qjacobi;

TEST_CASE("registry lists the full catalog") {
  const auto ids = registry_ids();
  CHECK(ids.size() == 32);
  for (const char* id :
       {"orth-4.8", "orth-5.5", "orth-7.13", "orth-8.5", "orth-8.6", "orth-8.9",
        "cross-8.12", "unitary-4.7", "unitary-7.11", "unitary-7.12", "special-7.1",
        "symmetry-8.13", "qdiff-3.6", "qdiff-6.6", "limit-racah-8.10", "limit-c0",
        "limit-b0-8.11", "gen-9.1", "gen-9.2", "gen-9.3", "gen-9.4", "sum-A.1",
        "sum-A.4", "sum-A.5", "sum-A.6", "sum-A.7", "eta-A.8", "complete-7.14",
        "qbinom-4.9", "orth-alt-charlier", "jsym-4.4", "jsym-7.4"})
    CHECK(registry_find(id) != nullptr);
  CHECK(registry_find("nope") == nullptr);
}

TEST_CASE("the whole catalog passes at the canonical point") {
  const GridPoint pt{0.5, 0.3, 0.4, -0.2};
  VerifyOptions opts;
  opts.matrix_size = 150;  // keep the unitary entries quick
  for (const auto& id : registry_ids()) {
    const auto reports = run_identity(id, pt, opts);
    REQUIRE(!reports.empty());
    for (const auto& r : reports) {
      INFO(id, " residual ", r.residual, " tol ", r.tolerance);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("unknown ids and bad points are domain errors") {
  VerifyOptions opts;
  CHECK_THROWS_AS(run_identity("nope", GridPoint{}, opts), DomainError);
  GridPoint bad{0.5, 0.3, 0.4, +0.2};  // c > 0
  CHECK_THROWS_AS(run_identity("orth-7.13", bad, opts), DomainError);
}

TEST_CASE("tolerance override is honored") {
  VerifyOptions opts;
  opts.tolerance = 1e-30;  // nothing passes at this level
  const auto r = run_identity("sum-A.1", GridPoint{0.5, 0.3, 0.4, -0.2}, opts);
  CHECK(r[0].tolerance == 1e-30);
  CHECK_FALSE(r[0].pass);
}

TEST_CASE("default grid shape") {
  const auto grid = default_grid();
  CHECK(grid.size() == 81);
  for (const auto& pt : grid) {
    CHECK(pt.q > 0.0);
    CHECK(pt.q < 1.0);
    CHECK(pt.a > 0.0);
    CHECK(pt.a * pt.q < 1.0);
    CHECK(pt.c < 0.0);
  }
}

TEST_CASE("generating-function entries honor the t and x overrides") {
  VerifyOptions opts;
  opts.t = 0.25;
  opts.x = 2;
  const auto r = run_identity("gen-9.1", GridPoint{0.5, 0.3, 0.4, -0.2}, opts);
  CHECK(r.size() == 1);
  CHECK(r[0].params.at("t") == 0.25);
  CHECK(r[0].params.at("x") == 2.0);
}
