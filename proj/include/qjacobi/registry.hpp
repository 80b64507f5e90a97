// SPDX-License-Identifier: Apache-2.0
//
// Catalog of verifiable identities keyed by stable ids. The CLI's verify and
// sweep commands and the test suites all dispatch through here.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qjacobi/report.hpp"

namespace qjacobi {

/// One point of the verification parameter grid.
struct GridPoint {
  double q = 0.5;
  double a = 0.3;
  double b = 0.4;
  double c = -0.2;
};

/// Which parameters an identity consumes (used to deduplicate sweeps).
enum class ParamNeeds { little, big, charlier };

struct VerifyOptions {
  std::optional<double> tolerance;  // overrides the id's pinned tolerance
  int truncation = 200;
  int matrix_size = 300;
  std::optional<double> t;  // generating-function parameter
  std::optional<int> x;     // lattice index / exponent
  std::optional<int> k;     // eta order
};

struct IdentityEntry {
  std::string id;
  ParamNeeds needs = ParamNeeds::little;
  double tolerance = 1e-10;  // pinned default
  std::string description;
};

const std::vector<IdentityEntry>& identity_registry();
std::vector<std::string> registry_ids();
const IdentityEntry* registry_find(const std::string& id);

/// Runs one identity at one grid point. Unknown ids throw DomainError.
std::vector<IdentityReport> run_identity(const std::string& id, const GridPoint& pt,
                                         const VerifyOptions& opts);

/// The canonical verification grid: q in {0.3, 0.5, 0.7},
/// a, b in {0.2, 0.5, 0.891/q}, c in {-0.1, -0.5, -2}.
std::vector<GridPoint> default_grid();

}  // namespace qjacobi
