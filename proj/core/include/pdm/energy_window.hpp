#pragma once

namespace pdm {

/// Closed interval of admissible bound-state energies, lo < hi.
struct EnergyWindow {
  double lo;
  double hi;

  EnergyWindow(double lo_, double hi_);

  bool contains(double e, double slack = 0.0) const noexcept {
    return e >= lo - slack && e <= hi + slack;
  }
  friend bool operator==(const EnergyWindow&, const EnergyWindow&) = default;
};

}  // namespace pdm
