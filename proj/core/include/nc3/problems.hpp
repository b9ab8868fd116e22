#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nc3/assembly.hpp"

namespace nc3 {

/// A problem with known exact solution on the unit square.
struct PresetProblem {
  std::string name;
  Problem problem;
  ScalarField exact;
  VectorField grad_exact;
};

/// "dirichlet-paper": -lap u = f, u = 0 on the boundary, with
///   u = sin(2 pi x) sin(2 pi y) (x^3 - y^4 + x^2 y^3).
/// "neumann-paper": -lap u + u = f, du/dn = g, with
///   u = cos(2 pi x) cos(2 pi y) (x^3 - y^4 + x^2 y^3).
/// Sources and boundary data are closed forms. Throws ConfigurationError for
/// unknown names.
PresetProblem preset_problem(std::string_view name);

std::vector<std::string> preset_names();

struct PresetCheck {
  /// max |f - (-lap_h u + beta u)| over the samples (central differences).
  double source_discrepancy = 0.0;
  /// max |grad u - grad_h u| over the samples.
  double gradient_discrepancy = 0.0;
  int samples = 0;
};

/// Compares the closed-form source and gradient of a preset against central
/// finite differences of the exact solution at random interior points.
PresetCheck validate_preset(const PresetProblem& preset, int samples = 100, double step = 1e-4,
                            std::uint64_t seed = 20240601);

}  // namespace nc3
