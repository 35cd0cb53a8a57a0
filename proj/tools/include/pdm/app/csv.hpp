#pragma once

// Locale-independent CSV emission. Reals carry 17 significant digits so a
// value read back is bit-identical.

#include <functional>
#include <ostream>
#include <span>
#include <string>

#include "pdm/oracle.hpp"
#include "pdm/spectrum2d.hpp"

namespace pdm::app {

std::string format_number(double v);

void write_spectrum_csv(std::ostream& os, std::span<const SpectrumEntry> entries);

/// Row-major (y outer, x inner) over the grid nodes.
void write_field_csv(std::ostream& os, const Grid2D& grid,
                     const std::function<double(double, double)>& field);

void write_table_compare_csv(std::ostream& os, const TableComparison& report);

}  // namespace pdm::app
