#include "pdm/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pdm/errors.hpp"

namespace pdm::app {

using nlohmann::json;
using nlohmann::ordered_json;

Grid2D GridSpec::grid() const {
  return {Grid1D(x0, x1, nx), Grid1D(y0, y1, ny)};
}

QuadratureSpec RunConfig::quadrature() const {
  QuadratureSpec q;
  q.tolerance = tolerances.quadrature;
  return q;
}

namespace {

// 1-based line of byte offset `pos`.
std::size_t line_of(std::string_view text, std::size_t pos) {
  pos = std::min(pos, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < pos; ++i) line += text[i] == '\n';
  return line;
}

class Reader {
 public:
  Reader(std::string_view text, std::string source)
      : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    // Best effort: point at the first occurrence of the offending key.
    const auto slash = path.find_last_of('/');
    if (slash != std::string::npos && slash + 1 < path.size()) {
      const auto at = text_.find("\"" + path.substr(slash + 1) + "\"");
      if (at != std::string_view::npos) os << ":" << line_of(text_, at);
    }
    os << ": " << (path.empty() ? "/" : path) << ": " << msg;
    throw ConfigError(os.str());
  }

  void only_keys(const json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) fail(path, "expected an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
      if (!keys.count(key)) fail(path + "/" + key, "unknown key");
    }
  }

  void number(const json& obj, const std::string& path, const char* key,
              double& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "/" + key, "expected a number");
    out = v.get<double>();
    if (!std::isfinite(out)) fail(path + "/" + key, "must be finite");
  }

  void integer(const json& obj, const std::string& path, const char* key,
               int& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
    out = v.get<int>();
  }

 private:
  std::string_view text_;
  std::string source_;
};

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ":" + std::to_string(line_of(text, e.byte)) +
                      ": malformed JSON: " + e.what());
  }
  const Reader rd(text, source);
  rd.only_keys(doc, "", {"model", "variant", "max_q", "window", "scan_points",
                         "grid", "tolerances"});

  RunConfig cfg;
  const Model def = Model::paper_example();
  double hbar = def.hbar();
  MassParams mass = def.mass();
  PotentialParams pot = def.pot();
  double alpha = def.ordering().alpha();
  double beta = def.ordering().beta();
  double gamma = def.ordering().gamma();

  if (doc.contains("model")) {
    const json& m = doc["model"];
    rd.only_keys(m, "/model", {"hbar", "m0", "g1", "g2", "g3", "g4", "a1", "a2",
                               "r", "a", "b1", "b2", "b3", "b4", "ordering"});
    rd.number(m, "/model", "hbar", hbar);
    rd.number(m, "/model", "m0", mass.m0);
    rd.number(m, "/model", "g1", mass.g1);
    rd.number(m, "/model", "g2", mass.g2);
    rd.number(m, "/model", "g3", mass.g3);
    rd.number(m, "/model", "g4", mass.g4);
    rd.number(m, "/model", "a1", mass.a1);
    rd.number(m, "/model", "a2", mass.a2);
    rd.number(m, "/model", "r", pot.r);
    rd.number(m, "/model", "a", pot.a);
    rd.number(m, "/model", "b1", pot.b1);
    rd.number(m, "/model", "b2", pot.b2);
    rd.number(m, "/model", "b3", pot.b3);
    rd.number(m, "/model", "b4", pot.b4);
    if (m.contains("ordering")) {
      const json& o = m["ordering"];
      rd.only_keys(o, "/model/ordering", {"alpha", "beta", "gamma"});
      rd.number(o, "/model/ordering", "alpha", alpha);
      rd.number(o, "/model/ordering", "beta", beta);
      rd.number(o, "/model/ordering", "gamma", gamma);
    }
  }
  try {
    cfg.model = Model(hbar, mass, pot, OrderingParams(alpha, beta, gamma));
  } catch (const InvalidParameter& e) {
    rd.fail("/model", e.what());
  }

  if (doc.contains("variant")) {
    const json& v = doc["variant"];
    if (!v.is_string()) rd.fail("/variant", "expected a string");
    const auto parsed = parse_variant(v.get<std::string>());
    if (!parsed) {
      rd.fail("/variant", "expected \"first-principles\" or \"paper-printed\"");
    }
    cfg.variant = *parsed;
  }

  rd.integer(doc, "", "max_q", cfg.max_q);
  if (cfg.max_q < 0) rd.fail("/max_q", "must be non-negative");

  if (doc.contains("window") && !doc["window"].is_null()) {
    const json& w = doc["window"];
    rd.only_keys(w, "/window", {"lo", "hi"});
    if (!w.contains("lo") || !w.contains("hi")) {
      rd.fail("/window", "needs both lo and hi (or null for the computed window)");
    }
    double lo = 0.0, hi = 0.0;
    rd.number(w, "/window", "lo", lo);
    rd.number(w, "/window", "hi", hi);
    if (!(lo < hi)) rd.fail("/window", "lo must be below hi");
    cfg.window = EnergyWindow(lo, hi);
  }

  rd.integer(doc, "", "scan_points", cfg.scan_points);
  if (cfg.scan_points < RunConfig::kMinScanPoints) {
    rd.fail("/scan_points", "must be at least " +
                                std::to_string(RunConfig::kMinScanPoints) +
                                " (got " + std::to_string(cfg.scan_points) + ")");
  }

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    rd.only_keys(g, "/grid", {"x0", "x1", "nx", "y0", "y1", "ny"});
    rd.number(g, "/grid", "x0", cfg.grid.x0);
    rd.number(g, "/grid", "x1", cfg.grid.x1);
    rd.integer(g, "/grid", "nx", cfg.grid.nx);
    rd.number(g, "/grid", "y0", cfg.grid.y0);
    rd.number(g, "/grid", "y1", cfg.grid.y1);
    rd.integer(g, "/grid", "ny", cfg.grid.ny);
  }
  try {
    (void)cfg.grid.grid();
  } catch (const InvalidParameter& e) {
    rd.fail("/grid", e.what());
  }

  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    rd.only_keys(t, "/tolerances", {"root", "degeneracy", "quadrature"});
    rd.number(t, "/tolerances", "root", cfg.tolerances.root);
    rd.number(t, "/tolerances", "degeneracy", cfg.tolerances.degeneracy);
    rd.number(t, "/tolerances", "quadrature", cfg.tolerances.quadrature);
  }
  if (!(cfg.tolerances.root > 0.0)) rd.fail("/tolerances/root", "must be positive");
  if (!(cfg.tolerances.degeneracy >= 0.0)) {
    rd.fail("/tolerances/degeneracy", "must be non-negative");
  }
  if (!(cfg.tolerances.quadrature > 0.0)) {
    rd.fail("/tolerances/quadrature", "must be positive");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string dump_config(const RunConfig& c) {
  const Model& m = c.model;
  ordered_json doc;
  doc["model"] = {
      {"hbar", m.hbar()},     {"m0", m.mass().m0}, {"g1", m.mass().g1},
      {"g2", m.mass().g2},    {"g3", m.mass().g3}, {"g4", m.mass().g4},
      {"a1", m.mass().a1},    {"a2", m.mass().a2}, {"r", m.pot().r},
      {"a", m.pot().a},       {"b1", m.pot().b1},  {"b2", m.pot().b2},
      {"b3", m.pot().b3},     {"b4", m.pot().b4},
      {"ordering",
       {{"alpha", m.ordering().alpha()},
        {"beta", m.ordering().beta()},
        {"gamma", m.ordering().gamma()}}}};
  doc["variant"] = std::string(to_string(c.variant));
  doc["max_q"] = c.max_q;
  if (c.window) {
    doc["window"] = {{"lo", c.window->lo}, {"hi", c.window->hi}};
  } else {
    doc["window"] = nullptr;
  }
  doc["scan_points"] = c.scan_points;
  doc["grid"] = {{"x0", c.grid.x0}, {"x1", c.grid.x1}, {"nx", c.grid.nx},
                 {"y0", c.grid.y0}, {"y1", c.grid.y1}, {"ny", c.grid.ny}};
  doc["tolerances"] = {{"root", c.tolerances.root},
                       {"degeneracy", c.tolerances.degeneracy},
                       {"quadrature", c.tolerances.quadrature}};
  return doc.dump(2) + "\n";
}

}  // namespace pdm::app
