#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nc3/ref_element.hpp"

namespace nc3 {

struct VerifyOptions {
  /// Enrichment of the element under test.
  Enrichment enrichment = Enrichment::XCubedYMinusXYCubed;
  /// Use the misprinted g12 = (-1, +sqrt(3/5)), which duplicates g10.
  bool uncorrected_g12 = false;
  int random_samples = 100000;
  int patch_mesh_n = 4;
  std::uint64_t seed = 12345;
};

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;
  UnisolvencyReport conditioning;

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs the reference-element property suite, the global patch test on an
/// n x n unit-square mesh and the enrichment conditioning comparison.
VerifyReport verify_element(const VerifyOptions& options = {});

void write_verify_report(std::ostream& os, const VerifyReport& report);

}  // namespace nc3
