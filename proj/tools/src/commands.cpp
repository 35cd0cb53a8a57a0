#include "pdm/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <locale>
#include <memory>
#include <set>
#include <sstream>

#include "detail.hpp"
#include "pdm/app/csv.hpp"
#include "pdm/effective_potential.hpp"
#include "pdm/errors.hpp"
#include "pdm/table_reference.hpp"

namespace pdm::app {

namespace detail {

EnergyWindow resolve_window(const RunConfig& config) {
  return config.window ? *config.window : energy_window(config.model);
}

std::ofstream open_output(const std::filesystem::path& out_dir,
                          const std::string& name) {
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / name;
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os.imbue(std::locale::classic());
  return os;
}

std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

using detail::fixed;
using detail::open_output;
using detail::resolve_window;

std::string error_kind(const std::exception& e) {
  // Most derived first.
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const UnknownLevel*>(&e)) return "UnknownLevel";
  if (dynamic_cast<const InvalidParameter*>(&e)) return "InvalidParameter";
  if (dynamic_cast<const EvaluationOverflow*>(&e)) return "EvaluationOverflow";
  if (dynamic_cast<const OrderingNotSolvable*>(&e)) return "OrderingNotSolvable";
  if (dynamic_cast<const NoBoundStates*>(&e)) return "NoBoundStates";
  if (dynamic_cast<const InvalidLevel*>(&e)) return "InvalidLevel";
  if (dynamic_cast<const ChannelUnsupported*>(&e)) return "ChannelUnsupported";
  if (dynamic_cast<const QuadratureNotConverged*>(&e)) return "QuadratureNotConverged";
  if (dynamic_cast<const GridTooSmall*>(&e)) return "GridTooSmall";
  if (dynamic_cast<const NotConverged*>(&e)) return "NotConverged";
  if (dynamic_cast<const NoBracket*>(&e)) return "NoBracket";
  if (dynamic_cast<const Unbounded*>(&e)) return "Unbounded";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InternalError";
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const UnknownLevel*>(&e) ||
      dynamic_cast<const InvalidParameter*>(&e) ||
      dynamic_cast<const OrderingNotSolvable*>(&e)) {
    return kConfigError;
  }
  if (dynamic_cast<const Error*>(&e)) return kNumericalFailure;
  return kCheckFailed;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << error_kind(e) << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
}

namespace {

std::string label(int m, int n) {
  return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

void print_clusters(std::ostream& log, const std::vector<DegeneracyCluster>& clusters) {
  for (const DegeneracyCluster& c : clusters) {
    log << "  E = " << fixed(c.energy) << "  multiplicity " << c.multiplicity << ":";
    for (const SpectrumEntry& e : c.members) log << ' ' << label(e.m, e.n);
    log << '\n';
  }
}

}  // namespace

int cmd_spectrum(const RunConfig& config, const std::filesystem::path& out_dir,
                 std::ostream& log) {
  std::vector<SpectrumEntry> spectrum;
  std::optional<EnergyWindow> window;
  std::string no_binding;
  try {
    window = resolve_window(config);
  } catch (const NoBoundStates& e) {
    no_binding = e.what();
  } catch (const Unbounded& e) {
    no_binding = e.what();
  }
  if (window) {
    spectrum = enumerate_spectrum(config.model, config.variant, *window,
                                  config.max_q, config.root_options());
  }

  auto csv = open_output(out_dir, "spectrum.csv");
  write_spectrum_csv(csv, spectrum);

  log << "variant: " << to_string(config.variant) << '\n';
  if (!window) {
    log << "no bound states: " << no_binding << '\n';
    log << "levels: 0\n";
    return kOk;
  }
  log << "window: [" << fixed(window->lo) << ", " << fixed(window->hi) << "]\n";
  log << "levels: " << spectrum.size() << " (0 <= m, n <= " << config.max_q << ")\n";
  if (spectrum.empty()) {
    log << "no bound states in the window\n";
    return kOk;
  }
  const auto clusters = group_degeneracies(spectrum, config.tolerances.degeneracy);
  log << "degeneracy clusters (tolerance " << detail::brief(config.tolerances.degeneracy)
      << "): " << clusters.size() << '\n';
  print_clusters(log, clusters);
  return kOk;
}

namespace {

SpectrumEntry locate_level(const RunConfig& config, int m, int n,
                           std::optional<double> energy) {
  const EnergyWindow window = resolve_window(config);
  const auto roots =
      find_roots(config.model, config.variant, m, n, window, config.root_options());
  std::optional<SpectrumEntry> best;
  for (const SpectrumEntry& e : roots) {
    if (!e.valid.all()) continue;
    if (!best) {
      best = e;
    } else if (energy && std::abs(e.energy - *energy) < std::abs(best->energy - *energy)) {
      best = e;
    }
  }
  if (!best) {
    throw UnknownLevel("level " + label(m, n) + " has no valid " +
                       std::string(to_string(config.variant)) +
                       " root in the window");
  }
  return *best;
}

}  // namespace

int cmd_fields(const RunConfig& config, const FieldRequest& request,
               const std::filesystem::path& out_dir, std::ostream& log) {
  const Model& model = config.model;
  const Grid2D grid = config.grid.grid();
  const std::string& which = request.which;
  const bool wants_level = which == "chi" || which == "psi";
  if (which != "potential" && which != "mass" && which != "ueff" && !wants_level) {
    throw ConfigError("--which must be one of potential, mass, ueff, chi, psi");
  }
  if (request.m.has_value() != request.n.has_value()) {
    throw ConfigError("--m and --n must be given together");
  }
  if (wants_level && !request.m) {
    throw ConfigError("--which " + which + " needs --m and --n");
  }

  std::function<double(double, double)> field;
  std::optional<SpectrumEntry> level;
  if (request.m) level = locate_level(config, *request.m, *request.n, request.energy);

  if (which == "potential") {
    field = [&](double x, double y) { return potential_at(model, x, y); };
  } else if (which == "mass") {
    field = [&](double x, double y) { return mass_at(model.mass(), x, y); };
  } else if (which == "ueff") {
    double e = 0.0;
    if (request.energy) {
      e = *request.energy;
    } else if (level) {
      e = level->energy;
    } else {
      throw ConfigError("--which ueff needs --energy or a level (--m, --n)");
    }
    field = [&model, e](double x, double y) { return ueff_at(model, e, x, y); };
  } else {
    auto state = std::make_shared<Level2D>(model, *level, config.quadrature());
    if (which == "chi") {
      field = [state](double x, double y) { return state->chi(x, y); };
    } else {
      field = [state](double x, double y) { return state->psi(x, y); };
    }
  }

  auto csv = open_output(out_dir, "field.csv");
  write_field_csv(csv, grid, field);
  log << "field: " << which;
  if (level) log << " level " << label(level->m, level->n) << " E = " << fixed(level->energy);
  log << "\ngrid: " << grid.x.n() << " x " << grid.y.n() << " nodes over ["
      << format_number(grid.x.x0()) << ", " << format_number(grid.x.x1()) << "] x ["
      << format_number(grid.y.x0()) << ", " << format_number(grid.y.x1()) << "]\n";
  return kOk;
}

int cmd_verify(const RunConfig& config, const std::filesystem::path& out_dir,
               std::ostream& log) {
  const std::vector<CheckResult> checks = run_verification(config);
  std::ostringstream report;
  report.imbue(std::locale::classic());
  int passed = 0;
  const CheckResult* first_failure = nullptr;
  for (const CheckResult& c : checks) {
    report << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
    if (c.passed) {
      ++passed;
    } else if (!first_failure) {
      first_failure = &c;
    }
  }
  report << "verify: " << passed << "/" << checks.size() << " checks passed";
  if (first_failure) report << "; first failing check: " << first_failure->name;
  report << '\n';

  auto out = open_output(out_dir, "verify.txt");
  out << report.str();
  log << report.str();
  return first_failure ? kCheckFailed : kOk;
}

int cmd_compare_table(const RunConfig& config,
                      const std::filesystem::path& out_dir, std::ostream& log) {
  if (!(config.model == Model::paper_example())) {
    throw ConfigError(
        "compare-table needs the published parameter set (the reference levels "
        "are specific to it); drop the model overrides from the config");
  }
  CompareOptions options;
  options.roots = config.root_options();
  options.degeneracy_tolerance = config.tolerances.degeneracy;
  const auto reference = published_levels();
  const TableComparison report = compare_table(config.model, reference, options);

  auto csv = open_output(out_dir, "table_compare.csv");
  write_table_compare_csv(csv, report);

  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "window: [" << fixed(report.window.lo) << ", " << fixed(report.window.hi) << "]\n";
  os << "reference levels: " << report.rows.size() << ", match tolerance "
     << detail::brief(report.match_tolerance) << "\n\n";
  os << "  (m,n)       E_ref     E_first-principles    dE       E_paper-printed     dE\n";
  auto cell = [](const std::optional<double>& v) {
    return v ? fixed(*v, 7) : std::string("      none");
  };
  auto delta = [](const std::optional<double>& v) {
    if (!v) return std::string("     -   ");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%9.2e", *v);
    return std::string(buf);
  };
  for (const TableRow& row : report.rows) {
    char head[64];
    std::snprintf(head, sizeof head, "  %-7s %11.7f", label(row.reference.m, row.reference.n).c_str(),
                  row.reference.energy);
    os << head << "   " << cell(row.e_first_principles) << (row.match_first_principles ? "*" : " ")
       << "  " << delta(row.delta_first_principles()) << "   " << cell(row.e_paper_printed)
       << (row.match_paper_printed ? "*" : " ") << "  " << delta(row.delta_paper_printed())
       << '\n';
  }
  os << "\nmatches (|dE| < " << detail::brief(report.match_tolerance)
     << "): first-principles " << report.matches_first_principles << "/" << report.rows.size()
     << ", paper-printed " << report.matches_paper_printed << "/" << report.rows.size() << '\n';

  os << "\nmulti-root labels (several roots of one (m,n) in the window):\n";
  if (report.multi_roots.empty()) os << "  none\n";
  for (const MultiRoot& mr : report.multi_roots) {
    os << "  " << to_string(mr.variant) << ' ' << label(mr.m, mr.n) << ':';
    for (double e : mr.energies) os << ' ' << fixed(e, 7);
    os << '\n';
  }

  auto degenerate = [](const std::vector<DegeneracyCluster>& cs) {
    std::vector<DegeneracyCluster> out;
    for (const auto& c : cs) {
      if (c.multiplicity > 2) out.push_back(c);
    }
    return out;
  };
  os << "\nreference clusters beyond the x<->y pairing (multiplicity > 2):\n";
  print_clusters(os, degenerate(report.reference_clusters));
  for (const DegeneracyCluster& c : report.reference_clusters) {
    if (std::abs(c.energy - 0.25) < 1e-9) {
      os << "  -> the E = 0.250000 cluster has multiplicity " << c.multiplicity << '\n';
    }
  }
  auto reproduces_quarter = [](const std::vector<DegeneracyCluster>& cs) {
    for (const auto& c : cs) {
      if (std::abs(c.energy - 0.25) < 1e-5 && c.multiplicity >= 8) return true;
    }
    return false;
  };
  os << "  first-principles reproduces the 0.250000 cluster: "
     << (reproduces_quarter(report.clusters_first_principles) ? "yes" : "no") << '\n';
  os << "  paper-printed reproduces the 0.250000 cluster: "
     << (reproduces_quarter(report.clusters_paper_printed) ? "yes" : "no") << '\n';
  os << "first-principles clusters (multiplicity > 2): "
     << degenerate(report.clusters_first_principles).size() << '\n';
  print_clusters(os, degenerate(report.clusters_first_principles));
  os << "paper-printed clusters (multiplicity > 2): "
     << degenerate(report.clusters_paper_printed).size() << '\n';
  print_clusters(os, degenerate(report.clusters_paper_printed));

  auto inversions = [&os](const char* name, const std::vector<Inversion>& inv) {
    os << name << " energy inversions (larger m+n below smaller m+n): " << inv.size() << '\n';
    const std::size_t shown = std::min<std::size_t>(inv.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) {
      const Inversion& v = inv[i];
      os << "  " << label(v.higher_quanta.m, v.higher_quanta.n) << " "
         << fixed(v.higher_quanta.energy, 7) << " < "
         << label(v.lower_quanta.m, v.lower_quanta.n) << " "
         << fixed(v.lower_quanta.energy, 7) << '\n';
    }
    if (inv.size() > shown) os << "  ...\n";
  };
  os << '\n';
  inversions("reference", report.reference_inversions);
  inversions("first-principles", report.inversions_first_principles);
  inversions("paper-printed", report.inversions_paper_printed);

  os << "\nreference values reproduced by m0 (r - E) of a root (sign-flipped energy):\n";
  if (report.reflected_hits.empty()) os << "  none\n";
  {
    std::set<std::pair<int, int>> explained;
    for (const ReflectedHit& h : report.reflected_hits) {
      explained.insert({h.reference.m, h.reference.n});
    }
    os << "  reference levels explained: " << explained.size() << "/" << report.rows.size();
    std::string missing;
    for (const TableRow& row : report.rows) {
      if (!explained.count({row.reference.m, row.reference.n})) {
        missing += " " + label(row.reference.m, row.reference.n);
      }
    }
    if (!missing.empty()) os << " (unexplained:" << missing << ")";
    os << '\n';
  }
  for (const ReflectedHit& h : report.reflected_hits) {
    os << "  " << label(h.reference.m, h.reference.n) << ' ' << fixed(h.reference.energy, 7)
       << "  <-  " << to_string(h.variant) << ' ' << label(h.m, h.n) << " E = "
       << fixed(h.energy, 7) << '\n';
  }

  auto txt = open_output(out_dir, "table_compare.txt");
  txt << os.str();
  log << os.str();
  return kOk;
}

int cmd_oracle(const RunConfig& config, const std::filesystem::path& out_dir,
               std::ostream& log, int nodes, int levels) {
  const EnergyWindow window = resolve_window(config);
  const auto spectrum = enumerate_spectrum(config.model, Variant::kFirstPrinciples,
                                           window, config.max_q, config.root_options());
  const Grid2D coarse = oracle_grid(config.model, window, nodes);
  const Grid2D fine = coarse.halved();

  auto csv = open_output(out_dir, "oracle.csv");
  csv << "m,n,E_closed,E_oracle_h,E_oracle_h2,dE_h,dE_h2,ratio\n";
  log << "grid: " << nodes << " and " << fine.x.n() << " nodes per axis over ["
      << fixed(coarse.x.x0(), 4) << ", " << fixed(coarse.x.x1(), 4) << "] x ["
      << fixed(coarse.y.x0(), 4) << ", " << fixed(coarse.y.x1(), 4) << "]\n";
  bool ok = true;
  const int count = std::min<int>(levels, static_cast<int>(spectrum.size()));
  for (int i = 0; i < count; ++i) {
    const SpectrumEntry& e = spectrum[i];
    const double oh = oracle_energy_2d(config.model, e.m, e.n, window, coarse);
    const double oh2 = oracle_energy_2d(config.model, e.m, e.n, window, fine);
    const double d1 = std::abs(oh - e.energy);
    const double d2 = std::abs(oh2 - e.energy);
    const double ratio = d1 / d2;
    ok = ok && d1 < 1e-3;
    csv << e.m << ',' << e.n << ',' << format_number(e.energy) << ',' << format_number(oh)
        << ',' << format_number(oh2) << ',' << format_number(d1) << ','
        << format_number(d2) << ',' << format_number(ratio) << '\n';
    char line[160];
    std::snprintf(line, sizeof line,
                  "  %-7s closed %.9f  oracle(h) %.9f  oracle(h/2) %.9f  |d| %.2e -> %.2e  ratio %.2f\n",
                  label(e.m, e.n).c_str(), e.energy, oh, oh2, d1, d2, ratio);
    log << line;
  }
  if (count == 0) log << "no first-principles levels in the window\n";
  return ok ? kOk : kCheckFailed;
}

int cmd_config(const RunConfig& config, const std::filesystem::path& out_dir,
               std::ostream& log) {
  const std::string text = dump_config(config);
  auto out = open_output(out_dir, "config.json");
  out << text;
  log << text;
  return kOk;
}

}  // namespace pdm::app
