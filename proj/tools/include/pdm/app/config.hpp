#pragma once

// Run configuration for the pdmorse tool: one JSON document, every key
// optional (defaults reproduce the published example), unknown keys rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pdm/energy_window.hpp"
#include "pdm/model.hpp"
#include "pdm/oracle.hpp"
#include "pdm/spectrum2d.hpp"

namespace pdm::app {

/// Malformed or invalid configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double x0 = -3.0;
  double x1 = 8.0;
  int nx = 111;
  double y0 = -3.0;
  double y1 = 8.0;
  int ny = 111;

  Grid2D grid() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Tolerances {
  double root = 1e-12;
  double degeneracy = 1e-6;
  double quadrature = 1e-8;
  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct RunConfig {
  static constexpr int kMinScanPoints = 100;

  Model model = Model::paper_example();
  Variant variant = Variant::kFirstPrinciples;
  int max_q = 6;
  std::optional<EnergyWindow> window;
  int scan_points = 2000;
  GridSpec grid;
  Tolerances tolerances;

  RootOptions root_options() const { return {scan_points, tolerances.root}; }
  QuadratureSpec quadrature() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// `source` names the document in diagnostics.
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Effective configuration with every default spelled out; parsing the
/// result yields an equal RunConfig.
std::string dump_config(const RunConfig& config);

}  // namespace pdm::app
