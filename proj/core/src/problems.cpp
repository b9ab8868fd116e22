#include "nc3/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "nc3/errors.hpp"

namespace nc3 {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Polynomial factor x^3 - y^4 + x^2 y^3 shared by both presets.
double poly(Vec2 p) { return p.x * p.x * p.x - std::pow(p.y, 4) + p.x * p.x * p.y * p.y * p.y; }
Vec2 poly_grad(Vec2 p) {
  return {3.0 * p.x * p.x + 2.0 * p.x * p.y * p.y * p.y,
          -4.0 * p.y * p.y * p.y + 3.0 * p.x * p.x * p.y * p.y};
}
double poly_lap(Vec2 p) {
  return 6.0 * p.x + 2.0 * p.y * p.y * p.y - 12.0 * p.y * p.y + 6.0 * p.x * p.x * p.y;
}

// Trigonometric factor T with lap T = -8 pi^2 T for both choices.
struct Trig {
  bool sine;
  double value(Vec2 p) const {
    return sine ? std::sin(kTwoPi * p.x) * std::sin(kTwoPi * p.y)
                : std::cos(kTwoPi * p.x) * std::cos(kTwoPi * p.y);
  }
  Vec2 grad(Vec2 p) const {
    const double sx = std::sin(kTwoPi * p.x), cx = std::cos(kTwoPi * p.x);
    const double sy = std::sin(kTwoPi * p.y), cy = std::cos(kTwoPi * p.y);
    if (sine) return {kTwoPi * cx * sy, kTwoPi * sx * cy};
    return {-kTwoPi * sx * cy, -kTwoPi * cx * sy};
  }
  double lap(Vec2 p) const { return -2.0 * kTwoPi * kTwoPi * value(p); }
};

// u = T P: grad u = P grad T + T grad P, lap u = P lap T + 2 grad T . grad P + T lap P.
struct Product {
  Trig trig;
  double value(Vec2 p) const { return trig.value(p) * poly(p); }
  Vec2 grad(Vec2 p) const { return poly(p) * trig.grad(p) + trig.value(p) * poly_grad(p); }
  double lap(Vec2 p) const {
    return poly(p) * trig.lap(p) + 2.0 * dot(trig.grad(p), poly_grad(p)) +
           trig.value(p) * poly_lap(p);
  }
};

}  // namespace

std::vector<std::string> preset_names() { return {"dirichlet-paper", "neumann-paper"}; }

PresetProblem preset_problem(std::string_view name) {
  PresetProblem out;
  out.name = std::string(name);
  if (name == "dirichlet-paper") {
    const Product u{{true}};
    out.exact = [u](Vec2 p) { return u.value(p); };
    out.grad_exact = [u](Vec2 p) { return u.grad(p); };
    out.problem.alpha = [](Vec2) { return Sym2::identity(); };
    out.problem.beta = [](Vec2) { return 0.0; };
    out.problem.f = [u](Vec2 p) { return -u.lap(p); };
    out.problem.bc = DirichletBC{};
    return out;
  }
  if (name == "neumann-paper") {
    const Product u{{false}};
    out.exact = [u](Vec2 p) { return u.value(p); };
    out.grad_exact = [u](Vec2 p) { return u.grad(p); };
    out.problem.alpha = [](Vec2) { return Sym2::identity(); };
    out.problem.beta = [](Vec2) { return 1.0; };
    out.problem.f = [u](Vec2 p) { return -u.lap(p) + u.value(p); };
    out.problem.bc = NeumannBC{[u](Vec2 p, Vec2 n) { return dot(u.grad(p), n); },
                               [](Vec2) { return 0.0; }};
    return out;
  }
  throw ConfigurationError("unknown problem preset '" + std::string(name) + "'");
}

PresetCheck validate_preset(const PresetProblem& preset, int samples, double step,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.05, 0.95);
  PresetCheck check;
  check.samples = samples;
  const auto& u = preset.exact;
  for (int s = 0; s < samples; ++s) {
    const Vec2 p{coord(rng), coord(rng)};
    const Vec2 ex{step, 0.0};
    const Vec2 ey{0.0, step};
    const double uc = u(p);
    const double lap_h =
        (u(p + ex) + u(p - ex) + u(p + ey) + u(p - ey) - 4.0 * uc) / (step * step);
    const double expected = -lap_h + preset.problem.beta(p) * uc;
    check.source_discrepancy =
        std::max(check.source_discrepancy, std::abs(preset.problem.f(p) - expected));
    const Vec2 grad_h{(u(p + ex) - u(p - ex)) / (2.0 * step), (u(p + ey) - u(p - ey)) / (2.0 * step)};
    check.gradient_discrepancy =
        std::max(check.gradient_discrepancy, norm(preset.grad_exact(p) - grad_h));
  }
  return check;
}

}  // namespace nc3
