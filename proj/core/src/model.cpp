#include "pdm/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

bool finite(double v) { return std::isfinite(v); }

struct AxisExponentials {
  double ex;  // e^{-a1 x}
  double ey;  // e^{-a2 y}
};

AxisExponentials exponentials(const MassParams& mass, double x, double y) {
  return {std::exp(-mass.a1 * x), std::exp(-mass.a2 * y)};
}

void check_finite(double v, const char* what, double x, double y) {
  if (!std::isfinite(v)) throw EvaluationOverflow(what, x, y);
}

}  // namespace

OrderingParams::OrderingParams(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
  require(finite(alpha) && finite(beta) && finite(gamma),
          "ordering parameters must be finite");
  require(std::abs(alpha + beta + gamma + 1.0) <= kConstraintTolerance,
          "ordering parameters must satisfy alpha + beta + gamma = -1 (got " +
              std::to_string(alpha + beta + gamma) + ")");
}

bool OrderingParams::is_ambiguity_free() const noexcept {
  return std::abs(laplacian_coefficient()) <= kConstraintTolerance &&
         std::abs(gradient_coefficient()) <= kConstraintTolerance;
}

void MassParams::validate() const {
  require(finite(m0) && m0 > 0.0, "mass.m0 must be positive");
  require(finite(a1) && a1 > 0.0, "mass.a1 must be positive");
  require(finite(a2) && a2 > 0.0, "mass.a2 must be positive");
  for (double g : {g1, g2, g3, g4}) {
    require(finite(g) && g >= 0.0, "mass.g1..g4 must be non-negative");
  }
}

void PotentialParams::validate() const {
  for (double v : {r, a, b1, b2, b3, b4}) {
    require(finite(v), "potential parameters must be finite");
  }
}

Model::Model(double hbar, MassParams mass, PotentialParams pot,
             OrderingParams ordering)
    : hbar_(hbar), mass_(mass), pot_(pot), ordering_(ordering) {
  require(finite(hbar) && hbar > 0.0, "hbar must be positive");
  mass_.validate();
  pot_.validate();
}

Model Model::paper_example() {
  MassParams mass{.m0 = 1.0, .g1 = 1.0, .g2 = 0.0, .g3 = 1.0, .g4 = 0.0,
                  .a1 = 1.0, .a2 = 1.0};
  PotentialParams pot{.r = 0.0, .a = 1.0, .b1 = -1.0, .b2 = 0.125,
                      .b3 = -1.0, .b4 = 0.125};
  return Model(1.0, mass, pot, solve_ambiguity_free_ordering());
}

Model Model::with_ordering(OrderingParams ordering) const {
  return Model(hbar_, mass_, pot_, ordering);
}

bool Model::is_xy_symmetric() const noexcept {
  return mass_.g1 == mass_.g3 && mass_.g2 == mass_.g4 &&
         mass_.a1 == mass_.a2 && pot_.b1 == pot_.b3 && pot_.b2 == pot_.b4;
}

double mass_at(const MassParams& mass, double x, double y) {
  const auto [ex, ey] = exponentials(mass, x, y);
  const double m = mass.m0 * (1.0 + mass.g1 * ex + mass.g3 * ey +
                              mass.g2 * ex * ex + mass.g4 * ey * ey);
  check_finite(m, "mass_at", x, y);
  return m;
}

MassDerivatives mass_derivatives(const MassParams& mass, double x, double y) {
  const auto [ex, ey] = exponentials(mass, x, y);
  const double a1 = mass.a1;
  const double a2 = mass.a2;
  MassDerivatives d{};
  d.value = mass.m0 * (1.0 + mass.g1 * ex + mass.g3 * ey + mass.g2 * ex * ex +
                       mass.g4 * ey * ey);
  d.dx = -mass.m0 * a1 * (mass.g1 * ex + 2.0 * mass.g2 * ex * ex);
  d.dy = -mass.m0 * a2 * (mass.g3 * ey + 2.0 * mass.g4 * ey * ey);
  d.dxx = mass.m0 * a1 * a1 * (mass.g1 * ex + 4.0 * mass.g2 * ex * ex);
  d.dyy = mass.m0 * a2 * a2 * (mass.g3 * ey + 4.0 * mass.g4 * ey * ey);
  for (double v : {d.value, d.dx, d.dy, d.dxx, d.dyy}) {
    check_finite(v, "mass_derivatives", x, y);
  }
  return d;
}

double potential_at(const Model& model, double x, double y) {
  const MassParams& ms = model.mass();
  const PotentialParams& p = model.pot();
  const auto [ex, ey] = exponentials(ms, x, y);
  const double numerator =
      p.a + p.b1 * ex + p.b3 * ey + p.b2 * ex * ex + p.b4 * ey * ey;
  const double denominator =
      ms.m0 * (1.0 + ms.g1 * ex + ms.g3 * ey + ms.g2 * ex * ex + ms.g4 * ey * ey);
  const double v = p.r + numerator / denominator;
  check_finite(numerator, "potential_at", x, y);
  check_finite(denominator, "potential_at", x, y);
  check_finite(v, "potential_at", x, y);
  return v;
}

OrderingParams solve_ambiguity_free_ordering() {
  // alpha and gamma are the roots of t^2 - s t + p with s = alpha + gamma
  // from the first condition and p = alpha*gamma from the second.
  const double s = -1.0;
  const double p = -0.75 - s;
  const double disc = std::max(0.0, s * s - 4.0 * p);
  const double alpha = 0.5 * (s + std::sqrt(disc));
  const double gamma = 0.5 * (s - std::sqrt(disc));
  return OrderingParams(alpha, -1.0 - alpha - gamma, gamma);
}

}  // namespace pdm
