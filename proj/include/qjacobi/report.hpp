// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

namespace qjacobi {

/// Outcome of one identity check at one parameter point.
/// pass <=> residual <= tolerance (and both sides converged).
struct IdentityReport {
  std::string identity_id;
  std::map<std::string, double> params;  // sorted keys keep output deterministic
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs-rhs| / max(1,|rhs|) unless the identity documents otherwise
  double tolerance = 0.0;
  bool pass = false;
  long terms_used = 0;
};

inline IdentityReport make_report(std::string id, std::map<std::string, double> params,
                                  double lhs, double rhs, double residual,
                                  double tolerance, long terms_used) {
  IdentityReport r;
  r.identity_id = std::move(id);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  r.terms_used = terms_used;
  return r;
}

}  // namespace qjacobi
