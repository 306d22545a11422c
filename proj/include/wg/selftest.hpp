#pragma once

#include <string>
#include <vector>

namespace wg {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // worst observed value vs bound, or a failure note
};

struct SelftestReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Runs the invariant/property suite (no table comparisons): mesh geometry
/// and connectivity identities, quadrature exactness, weak-operator algebra,
/// projection commutation, RT0 reconstruction properties, coercivity,
/// symmetry and SPD-ness of assembled systems, and solver sanity.
/// `full` adds the large desk-scale meshes (2D n=128, 3D level 6).
SelftestReport run_property_suite(bool full);

}  // namespace wg
