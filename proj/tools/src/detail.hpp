#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "pdm/app/config.hpp"

namespace pdm::app::detail {

/// The configured window, or the computed one.
EnergyWindow resolve_window(const RunConfig& config);

/// Opens out_dir/name for writing with the classic locale, creating out_dir.
std::ofstream open_output(const std::filesystem::path& out_dir,
                          const std::string& name);

/// Fixed 10-decimal rendering for the human-readable reports.
std::string fixed(double v, int digits = 10);

/// Shortest %g rendering, for tolerances in report headers.
std::string brief(double v);

}  // namespace pdm::app::detail
