#pragma once

#include <span>

namespace pdm {

/// One published level of the symmetric example parameter set. The first
/// two columns are stored in the order they were printed.
struct ReferenceLevel {
  int m;
  int n;
  double energy;
};

/// The 21 published levels, six significant figures as printed.
std::span<const ReferenceLevel> published_levels();

}  // namespace pdm
