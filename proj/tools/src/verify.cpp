#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>

#include "detail.hpp"
#include "pdm/app/commands.hpp"
#include "pdm/effective_potential.hpp"
#include "pdm/errors.hpp"
#include "pdm/morse1d.hpp"
#include "pdm/quadrature.hpp"

namespace pdm::app {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

struct Context {
  const RunConfig& config;
  std::optional<EnergyWindow> window;
  std::vector<SpectrumEntry> spectrum;     // configured variant
  std::vector<SpectrumEntry> fp_spectrum;  // first principles
  std::vector<MorseChannel> channels;      // distinct channels at FP levels
  bool spectrum_ready = false;
};

// A prerequisite check failed, so this one cannot run.
class Prerequisite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void need_spectrum(const Context& ctx) {
  if (!ctx.spectrum_ready) throw Prerequisite("spectrum check did not complete");
}

const EnergyWindow& need_window(const Context& ctx) {
  if (!ctx.window) throw NoBoundStates("no energy window available");
  return *ctx.window;
}

CheckResult check_ordering() {
  const OrderingParams o = solve_ambiguity_free_ordering();
  const bool exact = o.alpha() == -0.5 && o.beta() == 0.0 && o.gamma() == -0.5 &&
                     o.laplacian_coefficient() == 0.0 &&
                     o.gradient_coefficient() == 0.0 &&
                     o.alpha() + o.beta() + o.gamma() == -1.0;
  return {"ordering-solution", exact,
          exact ? "(-1/2, 0, -1/2); both coefficient combinations vanish"
                : "solution does not reproduce (-1/2, 0, -1/2) exactly"};
}

CheckResult check_window(Context& ctx) {
  const Model& model = ctx.config.model;
  ctx.window = detail::resolve_window(ctx.config);
  const double far = potential_at(model, 40.0 / model.mass().a1, 40.0 / model.mass().a2);
  std::string detail = "[" + detail::fixed(ctx.window->lo) + ", " +
                       detail::fixed(ctx.window->hi) + "]";
  bool ok = ctx.window->lo < ctx.window->hi;
  if (!ctx.config.window) {
    const PotentialMinimum min = minimize_potential(model);
    ok = ok && min.gradient_norm < 1e-6 &&
         std::abs(ctx.window->hi - far) < 1e-10;
    detail += ", |grad V| at minimum " + sci(min.gradient_norm) +
              ", |hi - V(far)| " + sci(std::abs(ctx.window->hi - far));
  } else {
    detail += " (configured)";
  }
  return {"energy-window", ok, detail};
}

CheckResult check_reduction(const Context& ctx) {
  const Model& model = ctx.config.model;
  const EnergyWindow& w = need_window(ctx);
  double worst = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const double e = w.lo + (w.hi - w.lo) * k / 6.0;
    for (int i = 0; i < 41; ++i) {
      const double x = -2.0 + 8.0 * i / 40.0;
      for (int j = 0; j < 41; ++j) {
        const double y = -2.0 + 8.0 * j / 40.0;
        const double reduced = ueff_at(model, e, x, y);
        const double general = ueff_general(model, e, x, y);
        worst = std::max(worst, std::abs(reduced - general) / std::max(1.0, std::abs(reduced)));
      }
    }
  }
  return {"reduction-identity", worst < 1e-10,
          "41x41 nodes on [-2,6]^2, 5 energies, max deviation " + sci(worst)};
}

CheckResult check_oracle_1d(const Context& ctx) {
  need_spectrum(ctx);
  double worst = 0.0;
  int levels = 0;
  std::string mismatch;
  for (const MorseChannel& ch : ctx.channels) {
    const int top = *m_max(ch);
    const MorseLevels fd = fd_morse_levels(ch.eta, ch.nu, ch.alpha);
    if (static_cast<int>(fd.eigenvalues.size()) != top + 1 && mismatch.empty()) {
      mismatch = "channel (" + detail::fixed(ch.eta, 6) + ", " + detail::fixed(ch.nu, 6) +
                 "): " + std::to_string(fd.eigenvalues.size()) +
                 " negative FD eigenvalues vs m_max+1 = " + std::to_string(top + 1);
    }
    const int shared = std::min<int>(top + 1, static_cast<int>(fd.eigenvalues.size()));
    for (int m = 0; m < shared; ++m) {
      const double exact = energy_1d(ch, m).epsilon;
      worst = std::max(worst, std::abs(fd.eigenvalues[m] - exact) / std::abs(exact));
      ++levels;
    }
  }
  const bool ok = mismatch.empty() && worst < 1e-4;
  return {"oracle-1d", ok,
          mismatch.empty() ? std::to_string(ctx.channels.size()) + " channels, " +
                                 std::to_string(levels) + " levels, max relative error " +
                                 sci(worst)
                           : mismatch};
}

int sign_changes(const MorseChannel& ch, const Bound1D& s, const QuadratureSpec& quad) {
  const auto [lo, hi] = wavefunction_support(ch, s, quad);
  const int samples = 20000;
  int changes = 0;
  double prev = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double v = wavefunction_1d(ch, s, lo + (hi - lo) * i / samples);
    if (v == 0.0) continue;
    if (prev != 0.0 && (v < 0.0) != (prev < 0.0)) ++changes;
    prev = v;
  }
  return changes;
}

CheckResult check_nodes(const Context& ctx) {
  need_spectrum(ctx);
  const QuadratureSpec quad = ctx.config.quadrature();
  int states = 0;
  for (const MorseChannel& ch : ctx.channels) {
    for (int m = 0; m <= std::min(*m_max(ch), 4); ++m) {
      const int nodes = sign_changes(ch, energy_1d(ch, m), quad);
      if (nodes != m) {
        return {"node-counts", false,
                "level " + std::to_string(m) + " has " + std::to_string(nodes) + " nodes"};
      }
      ++states;
    }
  }
  return {"node-counts", true, std::to_string(states) + " states have m nodes"};
}

double overlap(const MorseChannel& ch, const Bound1D& a, const Bound1D& b,
               const QuadratureSpec& quad) {
  const auto [l1, h1] = wavefunction_support(ch, a, quad);
  const auto [l2, h2] = wavefunction_support(ch, b, quad);
  return integrate(
      [&](double x) {
        return wavefunction_1d(ch, a, x) * wavefunction_1d(ch, b, x);
      },
      std::min(l1, l2), std::max(h1, h2), quad);
}

CheckResult check_orthogonality(const Context& ctx) {
  need_spectrum(ctx);
  const QuadratureSpec quad = ctx.config.quadrature();
  double worst = 0.0;
  double worst_norm = 0.0;
  int pairs = 0;
  for (const MorseChannel& ch : ctx.channels) {
    std::vector<Bound1D> states;
    for (int m = 0; m <= std::min(*m_max(ch), 4); ++m) {
      Bound1D s = energy_1d(ch, m);
      normalize_1d(ch, s, quad);
      states.push_back(s);
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
      worst_norm = std::max(worst_norm, std::abs(overlap(ch, states[i], states[i], quad) - 1.0));
      for (std::size_t j = i + 1; j < states.size(); ++j) {
        worst = std::max(worst, std::abs(overlap(ch, states[i], states[j], quad)));
        ++pairs;
      }
    }
  }
  return {"orthogonality", worst < 1e-8 && worst_norm < 1e-8,
          std::to_string(pairs) + " pairs, max |<m|m'>| " + sci(worst) +
              ", max |<m|m> - 1| " + sci(worst_norm)};
}

CheckResult check_normalization(const Context& ctx) {
  need_spectrum(ctx);
  const QuadratureSpec quad = ctx.config.quadrature();
  double worst = 0.0;
  for (const MorseChannel& ch : ctx.channels) {
    for (int m = 0; m <= std::min(*m_max(ch), 4); ++m) {
      Bound1D a = energy_1d(ch, m);
      Bound1D b = a;
      const double n1 = normalize_1d(ch, a, quad);
      const double n2 = normalize_1d(ch, b, quad.refined());
      worst = std::max(worst, std::abs(n1 - n2) / n1);
    }
  }
  return {"normalization", worst < 1e-8,
          "doubling quadrature panels changes N by at most " + sci(worst)};
}

CheckResult check_backsubstitution(const Context& ctx) {
  need_spectrum(ctx);
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto* list : {&ctx.spectrum, &ctx.fp_spectrum}) {
    for (const SpectrumEntry& e : *list) {
      worst = std::max(worst, std::abs(mismatch_checked(ctx.config.model, e.variant, e.m, e.n,
                                                        e.energy)));
      ++count;
    }
  }
  return {"back-substitution", worst < 1e-10,
          std::to_string(count) + " roots, max |F(E)| " + sci(worst)};
}

CheckResult check_symmetry(const Context& ctx) {
  need_spectrum(ctx);
  if (!ctx.config.model.is_xy_symmetric()) {
    return {"xy-symmetry", true, "parameters are not x<->y symmetric; nothing to check"};
  }
  std::map<std::pair<int, int>, std::vector<double>> by_label;
  for (const SpectrumEntry& e : ctx.spectrum) by_label[{e.m, e.n}].push_back(e.energy);
  for (const auto& [lbl, energies] : by_label) {
    const auto it = by_label.find({lbl.second, lbl.first});
    if (it == by_label.end() || it->second != energies) {
      return {"xy-symmetry", false,
              "(" + std::to_string(lbl.first) + "," + std::to_string(lbl.second) +
                  ") has no identical mirrored partner"};
    }
  }
  return {"xy-symmetry", true,
          "every (m,n) has an (n,m) partner with identical energy"};
}

CheckResult check_containment(const Context& ctx) {
  need_spectrum(ctx);
  const EnergyWindow& w = need_window(ctx);
  for (const auto* list : {&ctx.spectrum, &ctx.fp_spectrum}) {
    for (const SpectrumEntry& e : *list) {
      if (!w.contains(e.energy, 1e-9)) {
        return {"window-containment", false,
                "E = " + detail::fixed(e.energy) + " lies outside the window"};
      }
    }
  }
  return {"window-containment", true, "all roots inside the window"};
}

CheckResult check_pde(const Context& ctx) {
  need_spectrum(ctx);
  const GridSpec& g = ctx.config.grid;
  const Grid2D grid{Grid1D(g.x0, g.x1, 101), Grid1D(g.y0, g.y1, 101)};
  double worst = 0.0;
  const std::size_t count = std::min<std::size_t>(3, ctx.fp_spectrum.size());
  for (std::size_t i = 0; i < count; ++i) {
    worst = std::max(worst, pde_residual(ctx.config.model, ctx.fp_spectrum[i], grid));
  }
  return {"pde-residual", worst < 1e-10,
          std::to_string(count) + " lowest first-principles levels on 101x101 nodes, max " +
              sci(worst)};
}

CheckResult check_degeneracy(const Context& ctx) {
  need_spectrum(ctx);
  const auto clusters = group_degeneracies(ctx.spectrum, ctx.config.tolerances.degeneracy);
  int largest = 0;
  for (const auto& c : clusters) largest = std::max(largest, c.multiplicity);
  bool ok = true;
  if (ctx.config.model.is_xy_symmetric()) {
    for (const auto& c : clusters) {
      for (const SpectrumEntry& e : c.members) {
        if (e.m != e.n && c.multiplicity < 2) ok = false;
      }
    }
  }
  return {"degeneracy-detection", ok,
          std::to_string(ctx.spectrum.size()) + " levels in " + std::to_string(clusters.size()) +
              " clusters, largest multiplicity " + std::to_string(largest)};
}

std::vector<MorseChannel> distinct_channels(const Model& model,
                                            const std::vector<SpectrumEntry>& levels) {
  std::vector<MorseChannel> out;
  std::set<std::tuple<double, double, double>> seen;
  for (const SpectrumEntry& e : levels) {
    const auto [cx, cy] = axis_channels(model, e.energy);
    for (const MorseChannel& ch : {cx, cy}) {
      if (!ch.supports_bound_states() || !m_max(ch)) continue;
      if (seen.insert({ch.eta, ch.nu, ch.alpha}).second) out.push_back(ch);
    }
  }
  return out;
}

}  // namespace

std::vector<CheckResult> run_verification(const RunConfig& config) {
  Context ctx{config, std::nullopt, {}, {}, {}};
  std::vector<CheckResult> results;
  auto run = [&](const std::string& name, const std::function<CheckResult()>& check) {
    try {
      results.push_back(check());
    } catch (const Prerequisite& e) {
      results.push_back({name, false, std::string("not run: ") + e.what()});
    } catch (const std::exception& e) {
      results.push_back({name, false, error_kind(e) + ": " + e.what()});
    }
  };

  run("ordering-solution", check_ordering);
  run("energy-window", [&] { return check_window(ctx); });
  run("reduction-identity", [&] { return check_reduction(ctx); });
  run("spectrum", [&] {
    const EnergyWindow& w = need_window(ctx);
    ctx.spectrum = enumerate_spectrum(config.model, config.variant, w, config.max_q,
                                      config.root_options());
    ctx.fp_spectrum = config.variant == Variant::kFirstPrinciples
                          ? ctx.spectrum
                          : enumerate_spectrum(config.model, Variant::kFirstPrinciples, w,
                                               config.max_q, config.root_options());
    ctx.channels = distinct_channels(config.model, ctx.fp_spectrum);
    ctx.spectrum_ready = true;
    std::string detail = std::to_string(ctx.spectrum.size()) + " " +
                         std::string(to_string(config.variant)) + " levels";
    if (config.variant != Variant::kFirstPrinciples) {
      detail += ", " + std::to_string(ctx.fp_spectrum.size()) + " first-principles levels";
    }
    return CheckResult{"spectrum", true, detail};
  });
  run("oracle-1d", [&] { return check_oracle_1d(ctx); });
  run("node-counts", [&] { return check_nodes(ctx); });
  run("orthogonality", [&] { return check_orthogonality(ctx); });
  run("normalization", [&] { return check_normalization(ctx); });
  run("back-substitution", [&] { return check_backsubstitution(ctx); });
  run("xy-symmetry", [&] { return check_symmetry(ctx); });
  run("window-containment", [&] { return check_containment(ctx); });
  run("pde-residual", [&] { return check_pde(ctx); });
  run("degeneracy-detection", [&] { return check_degeneracy(ctx); });
  return results;
}

}  // namespace pdm::app
