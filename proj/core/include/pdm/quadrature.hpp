#pragma once

#include <functional>

namespace pdm {

/// Composite globally-adaptive Gauss-Kronrod (7/15) integration. The interval
/// is first cut into `panels` equal pieces; the piece with the largest error
/// estimate is bisected until the summed estimate drops below
/// tolerance * (integral of |f|), or `max_subdivisions` is exhausted.
struct QuadratureSpec {
  double tolerance = 1e-10;
  int panels = 16;
  int max_subdivisions = 20000;
  /// Integrand tails below this fraction of the peak are truncated when a
  /// caller sizes an integration domain automatically.
  double tail_fraction = 1e-16;

  QuadratureSpec refined() const {
    QuadratureSpec s = *this;
    s.panels *= 2;
    return s;
  }
};

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec);

/// N such that the integral of (N f)^2 over [a, b] equals one.
double l2_normalization(const std::function<double(double)>& f, double a,
                        double b, const QuadratureSpec& spec);

}  // namespace pdm
