// pdmorse: self-consistent spectrum of the two-dimensional position-dependent
// mass Morse model.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pdm/app/commands.hpp"
#include "pdm/app/config.hpp"

int main(int argc, char** argv) {
  using namespace pdm::app;

  CLI::App app{"Self-consistent spectrum of a 2D position-dependent-mass Morse model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string variant;
  std::string out_dir = ".";
  app.add_option("--config", config_path, "JSON run configuration (default: built-in example)");
  app.add_option("--variant", variant, "first-principles | paper-printed (overrides the config)")
      ->check(CLI::IsMember({"first-principles", "paper-printed"}));
  app.add_option("--out", out_dir, "Directory receiving output files");

  auto* spectrum = app.add_subcommand("spectrum", "Emit spectrum.csv and degeneracy clusters");
  auto* fields = app.add_subcommand("fields", "Emit field.csv on the configured grid");
  FieldRequest request;
  int m = -1, n = -1;
  double energy = 0.0;
  fields->add_option("--which", request.which, "potential | mass | ueff | chi | psi")
      ->required()
      ->check(CLI::IsMember({"potential", "mass", "ueff", "chi", "psi"}));
  auto* m_opt = fields->add_option("--m", m, "x quantum number")->check(CLI::NonNegativeNumber);
  auto* n_opt = fields->add_option("--n", n, "y quantum number")->check(CLI::NonNegativeNumber);
  auto* e_opt = fields->add_option("--energy", energy,
                                   "Trial energy for ueff, or root selector for chi/psi");
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  auto* compare = app.add_subcommand("compare-table", "Compare both variants with the reference table");
  auto* oracle = app.add_subcommand("oracle", "Finite-difference cross-check of the lowest levels");
  int nodes = 192;
  int levels = 3;
  oracle->add_option("--nodes", nodes, "Nodes per axis of the coarse grid")->check(CLI::Range(16, 4096));
  oracle->add_option("--levels", levels, "Number of lowest levels")->check(CLI::Range(1, 100));
  auto* config_cmd = app.add_subcommand("config", "Print the effective configuration");

  for (auto* sub : {spectrum, fields, verify, compare, oracle, config_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  return run_guarded(
      [&]() -> int {
        RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!variant.empty()) config.variant = *pdm::parse_variant(variant);
        if (*spectrum) return cmd_spectrum(config, out_dir, std::cout);
        if (*fields) {
          if (*m_opt) request.m = m;
          if (*n_opt) request.n = n;
          if (*e_opt) request.energy = energy;
          return cmd_fields(config, request, out_dir, std::cout);
        }
        if (*verify) return cmd_verify(config, out_dir, std::cout);
        if (*compare) return cmd_compare_table(config, out_dir, std::cout);
        if (*oracle) return cmd_oracle(config, out_dir, std::cout, nodes, levels);
        return cmd_config(config, out_dir, std::cout);
      },
      std::cerr);
}
