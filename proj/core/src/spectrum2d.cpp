#include "pdm/spectrum2d.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "pdm/effective_potential.hpp"
#include "pdm/errors.hpp"

namespace pdm {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kFirstPrinciples:
      return "first-principles";
    case Variant::kPaperPrinted:
      return "paper-printed";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "first-principles") return Variant::kFirstPrinciples;
  if (text == "paper-printed") return Variant::kPaperPrinted;
  return std::nullopt;
}

double SpectrumEntry::in_value(const Model& model) const {
  return in_of(model, energy);
}

std::pair<MorseChannel, MorseChannel> axis_channels(const Model& model, double e) {
  const GammaSet g = gammas_at(model, e);
  return {channel_from_gammas(g.gamma1, g.gamma2, model.mass().a1, model.hbar()),
          channel_from_gammas(g.gamma3, g.gamma4, model.mass().a2, model.hbar())};
}

ValidityFlags validity_at(const Model& model, int m, int n, double e,
                          const EnergyWindow& window) {
  const auto [cx, cy] = axis_channels(model, e);
  ValidityFlags f;
  f.support_x = cx.supports_bound_states();
  f.support_y = cy.supports_bound_states();
  const auto mx = m_max(cx);
  const auto my = m_max(cy);
  f.level_x_allowed = mx && m <= *mx;
  f.level_y_allowed = my && n <= *my;
  f.in_window = window.contains(e);
  return f;
}

namespace {

void require_solvable(const Model& model) {
  if (!model.ordering().is_ambiguity_free()) {
    throw OrderingNotSolvable(
        "the self-consistent spectrum requires the ambiguity-free ordering "
        "alpha = gamma = -1/2, beta = 0");
  }
}

std::optional<double> first_principles(const Model& model, int m, int n,
                                       double e) {
  const auto [cx, cy] = axis_channels(model, e);
  if (!cx.supports_bound_states() || !cy.supports_bound_states()) {
    return std::nullopt;
  }
  const auto mx = m_max(cx);
  const auto my = m_max(cy);
  if (!mx || !my || m > *mx || n > *my) return std::nullopt;
  return energy_1d(cx, m).epsilon + energy_1d(cy, n).epsilon -
         epsilon_of(model, e);
}

std::optional<double> paper_printed(const Model& model, int m, int n, double e) {
  const GammaSet g = gammas_at(model, e);
  if (g.gamma2 < 0.0 || g.gamma4 < 0.0) return std::nullopt;
  const double in = in_of(model, e);
  const double abar1 = model.hbar() * model.mass().a1;
  const double abar2 = model.hbar() * model.mass().a2;
  const double first =
      std::abs(g.gamma3) - abar1 * std::sqrt(g.gamma2 / 2.0) * (2.0 * n + 1.0);
  const double second =
      std::abs(g.gamma3) - abar2 * std::sqrt(g.gamma4 / 2.0) * (2.0 * m + 1.0);
  return 8.0 * g.gamma2 * g.gamma4 * (model.pot().a + in) -
         g.gamma4 * first * first - g.gamma2 * second * second;
}

bool same_sign(double a, double b) { return (a < 0.0) == (b < 0.0); }

}  // namespace

std::optional<double> mismatch(const Model& model, Variant variant, int m, int n,
                               double e) {
  require_solvable(model);
  if (m < 0 || n < 0) throw InvalidLevel("quantum numbers must be non-negative");
  switch (variant) {
    case Variant::kFirstPrinciples:
      return first_principles(model, m, n, e);
    case Variant::kPaperPrinted:
      return paper_printed(model, m, n, e);
  }
  return std::nullopt;
}

double mismatch_checked(const Model& model, Variant variant, int m, int n,
                        double e) {
  const auto f = mismatch(model, variant, m, n, e);
  if (!f) throw ChannelUnsupported(e);
  return *f;
}

namespace {

// Minimizes |F| on [lo, hi]; the argmin is a root when the minimum is below
// touch_tolerance. Precision in E is limited to about sqrt(machine epsilon).
std::optional<double> touching_root(
    const std::function<std::optional<double>(double)>& f, double lo, double hi,
    const RootOptions& options) {
  bool broken = false;
  auto magnitude = [&](double e) {
    const std::optional<double> v = f(e);
    if (!v) {
      broken = true;
      return std::numeric_limits<double>::max();
    }
    return std::abs(*v);
  };
  std::uintmax_t iterations = 200;
  const auto [e, v] = boost::math::tools::brent_find_minima(
      magnitude, lo, hi, std::numeric_limits<double>::digits / 2, iterations);
  if (broken || !(v <= options.touch_tolerance)) return std::nullopt;
  return e;
}

// Uniform scan over scan_points intervals, bisection on every sign change
// between supported samples, plus a minimization wherever |F| has a local
// minimum without a sign change. A bracket containing an unsupported point
// is dropped rather than reported.
std::vector<double> scan_roots(
    const std::function<std::optional<double>(double)>& f,
    const EnergyWindow& window, const RootOptions& options) {
  const int intervals = options.scan_points;
  const double width = window.hi - window.lo;
  auto node = [&](int i) {
    return i == intervals ? window.hi : window.lo + width * i / intervals;
  };

  std::vector<double> roots;
  std::optional<double> prev = f(node(0));
  if (prev && *prev == 0.0) roots.push_back(node(0));
  for (int i = 1; i <= intervals; ++i) {
    const double e = node(i);
    const std::optional<double> cur = f(e);
    if (cur && *cur == 0.0) {
      roots.push_back(e);
    } else if (prev && cur && *prev != 0.0 && !same_sign(*prev, *cur)) {
      double lo = node(i - 1), hi = e;
      double flo = *prev, fhi = *cur;
      bool broken = false;
      while (hi - lo > options.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const std::optional<double> fm = f(mid);
        if (!fm) {
          broken = true;  // unsupported pocket inside the bracket
          break;
        }
        if (*fm == 0.0) {
          lo = hi = mid;
          flo = fhi = 0.0;
          break;
        }
        if (same_sign(*fm, flo)) {
          lo = mid;
          flo = *fm;
        } else {
          hi = mid;
          fhi = *fm;
        }
      }
      if (!broken) roots.push_back(std::abs(flo) <= std::abs(fhi) ? lo : hi);
    }
    // Touching root: |F| dips between two same-signed neighbours.
    if (i >= 2 && prev && cur && *prev != 0.0 && same_sign(*prev, *cur)) {
      const std::optional<double> before = f(node(i - 2));
      if (before && same_sign(*before, *prev) &&
          std::abs(*prev) <= std::abs(*before) && std::abs(*prev) <= std::abs(*cur)) {
        if (auto t = touching_root(f, node(i - 2), e, options)) roots.push_back(*t);
      }
    }
    prev = cur;
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double a, double b) {
                            return std::abs(a - b) <= 4.0 * options.tolerance;
                          }),
              roots.end());

  return roots;
}

}  // namespace

std::vector<SpectrumEntry> find_roots(const Model& model, Variant variant, int m,
                                      int n, const EnergyWindow& window,
                                      const RootOptions& options) {
  if (options.scan_points < 100) {
    throw InvalidParameter("scan_points must be at least 100");
  }
  require_solvable(model);
  auto f = [&](double e) { return mismatch(model, variant, m, n, e); };
  const std::vector<double> roots = scan_roots(f, window, options);

  std::vector<SpectrumEntry> out;
  out.reserve(roots.size());
  for (double e : roots) {
    SpectrumEntry s;
    s.m = m;
    s.n = n;
    s.energy = e;
    s.residual = std::abs(*f(e));
    s.valid = validity_at(model, m, n, e, window);
    s.variant = variant;
    out.push_back(s);
  }
  return out;
}

namespace {

bool entry_less(const SpectrumEntry& a, const SpectrumEntry& b) {
  if (a.energy != b.energy) return a.energy < b.energy;
  if (a.m != b.m) return a.m < b.m;
  return a.n < b.n;
}

SpectrumEntry mirrored(const SpectrumEntry& e) {
  SpectrumEntry r = e;
  std::swap(r.m, r.n);
  std::swap(r.valid.support_x, r.valid.support_y);
  std::swap(r.valid.level_x_allowed, r.valid.level_y_allowed);
  return r;
}

}  // namespace

std::vector<SpectrumEntry> enumerate_spectrum(const Model& model, Variant variant,
                                              const EnergyWindow& window,
                                              int max_q,
                                              const RootOptions& options) {
  if (max_q < 0) throw InvalidParameter("max_q must be non-negative");
  const bool symmetric = model.is_xy_symmetric();
  std::vector<SpectrumEntry> all;
  for (int m = 0; m <= max_q; ++m) {
    for (int n = symmetric ? m : 0; n <= max_q; ++n) {
      for (const SpectrumEntry& e : find_roots(model, variant, m, n, window, options)) {
        all.push_back(e);
        if (symmetric && m != n) all.push_back(mirrored(e));
      }
    }
  }
  std::sort(all.begin(), all.end(), entry_less);
  all.erase(std::unique(all.begin(), all.end(),
                        [](const SpectrumEntry& a, const SpectrumEntry& b) {
                          return a.m == b.m && a.n == b.n &&
                                 std::abs(a.energy - b.energy) < 1e-10;
                        }),
            all.end());
  return all;
}

EnergyWindow energy_window(const Model& model) {
  const PotentialMinimum minimum = minimize_potential(model);
  const double hi = model.asymptotic_potential();
  if (!(minimum.value < hi)) {
    throw NoBoundStates(
        "degenerate energy window: potential minimum " +
        std::to_string(minimum.value) + " does not lie below the asymptote " +
        std::to_string(hi) + " (no binding)");
  }
  return EnergyWindow(minimum.value, hi);
}

std::vector<DegeneracyCluster> group_degeneracies(
    std::span<const SpectrumEntry> entries, double tol) {
  std::vector<DegeneracyCluster> clusters;
  for (const SpectrumEntry& e : entries) {
    if (!clusters.empty() && e.energy - clusters.back().energy < tol) {
      clusters.back().members.push_back(e);
    } else {
      clusters.push_back({e.energy, {e}, 0});
    }
  }
  for (DegeneracyCluster& c : clusters) {
    std::set<std::pair<int, int>> labels;
    for (const SpectrumEntry& e : c.members) {
      labels.insert({e.m, e.n});
      labels.insert({e.n, e.m});
    }
    c.multiplicity = static_cast<int>(labels.size());
  }
  return clusters;
}

std::vector<Inversion> find_inversions(std::span<const SpectrumEntry> entries) {
  std::vector<Inversion> out;
  for (const SpectrumEntry& a : entries) {
    for (const SpectrumEntry& b : entries) {
      if (a.m + a.n > b.m + b.n && a.energy < b.energy) out.push_back({a, b});
    }
  }
  std::sort(out.begin(), out.end(), [](const Inversion& l, const Inversion& r) {
    return std::tie(l.higher_quanta.energy, l.higher_quanta.m, l.higher_quanta.n,
                    l.lower_quanta.energy, l.lower_quanta.m, l.lower_quanta.n) <
           std::tie(r.higher_quanta.energy, r.higher_quanta.m, r.higher_quanta.n,
                    r.lower_quanta.energy, r.lower_quanta.m, r.lower_quanta.n);
  });
  return out;
}

Level2D::Level2D(const Model& model, const SpectrumEntry& entry,
                 const QuadratureSpec& quad)
    : model_(model), entry_(entry) {
  std::tie(cx_, cy_) = axis_channels(model, entry.energy);
  sx_ = energy_1d(cx_, entry.m);
  sy_ = energy_1d(cy_, entry.n);
  normalize_1d(cx_, sx_, quad);
  normalize_1d(cy_, sy_, quad);
}

double Level2D::chi(double x, double y) const {
  return wavefunction_1d(cx_, sx_, x) * wavefunction_1d(cy_, sy_, y);
}

double Level2D::psi(double x, double y) const {
  return std::sqrt(mass_at(model_.mass(), x, y)) * chi(x, y);
}

double Level2D::laplacian(double x, double y) const {
  return wavefunction_1d_second_derivative(cx_, sx_, x) *
             wavefunction_1d(cy_, sy_, y) +
         wavefunction_1d(cx_, sx_, x) *
             wavefunction_1d_second_derivative(cy_, sy_, y);
}

double chi_mn(const Model& model, const SpectrumEntry& entry, double x, double y) {
  return Level2D(model, entry).chi(x, y);
}

double psi_mn(const Model& model, const SpectrumEntry& entry, double x, double y) {
  return Level2D(model, entry).psi(x, y);
}

double pde_residual(const Model& model, const SpectrumEntry& entry,
                    const Grid2D& grid) {
  const Level2D level(model, entry);
  const double e = entry.energy;
  const double scale = 2.0 / (model.hbar() * model.hbar());
  const double eps = epsilon_of(model, e);
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < grid.x.n(); ++i) {
    const double x = grid.x.node(i);
    for (int j = 0; j < grid.y.n(); ++j) {
      const double y = grid.y.node(j);
      const double chi = level.chi(x, y);
      const double r = -level.laplacian(x, y) +
                       scale * ueff_at(model, e, x, y) * chi - eps * chi;
      num += r * r;
      den += (eps * chi) * (eps * chi);
    }
  }
  if (!(den > 0.0)) throw InvalidLevel("pde_residual: chi vanishes on the grid");
  return std::sqrt(num / den);
}

std::optional<double> TableRow::delta_first_principles() const {
  if (!e_first_principles) return std::nullopt;
  return std::abs(*e_first_principles - reference.energy);
}

std::optional<double> TableRow::delta_paper_printed() const {
  if (!e_paper_printed) return std::nullopt;
  return std::abs(*e_paper_printed - reference.energy);
}

std::vector<SpectrumEntry> reference_entries(
    std::span<const ReferenceLevel> reference) {
  std::vector<SpectrumEntry> out;
  std::set<std::pair<int, int>> seen;
  for (const ReferenceLevel& r : reference) {
    for (auto [m, n] : {std::pair{r.m, r.n}, std::pair{r.n, r.m}}) {
      if (!seen.insert({m, n}).second) continue;
      SpectrumEntry s;
      s.m = m;
      s.n = n;
      s.energy = r.energy;
      s.variant = Variant::kPaperPrinted;
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), entry_less);
  return out;
}

TableComparison compare_table(const Model& model,
                              std::span<const ReferenceLevel> reference,
                              const CompareOptions& options) {
  const EnergyWindow window = energy_window(model);
  TableComparison report{window, options.match_tolerance};

  std::map<std::tuple<int, int, int>, std::vector<SpectrumEntry>> cache;
  auto roots = [&](Variant v, int m, int n) -> const std::vector<SpectrumEntry>& {
    const auto key = std::tuple{static_cast<int>(v), m, n};
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, find_roots(model, v, m, n, window, options.roots)).first;
    }
    return it->second;
  };
  auto nearest = [&](Variant v, const ReferenceLevel& ref) -> std::optional<double> {
    std::optional<double> best;
    for (const SpectrumEntry& e : roots(v, ref.m, ref.n)) {
      if (!best || std::abs(e.energy - ref.energy) < std::abs(*best - ref.energy)) {
        best = e.energy;
      }
    }
    return best;
  };

  for (const ReferenceLevel& ref : reference) {
    TableRow row;
    row.reference = ref;
    row.e_first_principles = nearest(Variant::kFirstPrinciples, ref);
    row.e_paper_printed = nearest(Variant::kPaperPrinted, ref);
    row.match_first_principles = row.delta_first_principles() &&
                                 *row.delta_first_principles() < options.match_tolerance;
    row.match_paper_printed = row.delta_paper_printed() &&
                              *row.delta_paper_printed() < options.match_tolerance;
    report.matches_first_principles += row.match_first_principles;
    report.matches_paper_printed += row.match_paper_printed;
    report.rows.push_back(row);
  }

  for (const auto& [key, entries] : cache) {
    if (entries.size() > 1) {
      MultiRoot mr{static_cast<Variant>(std::get<0>(key)), std::get<1>(key),
                   std::get<2>(key), {}};
      for (const SpectrumEntry& e : entries) mr.energies.push_back(e.energy);
      report.multi_roots.push_back(std::move(mr));
    }
  }

  const std::vector<SpectrumEntry> ref_entries = reference_entries(reference);
  report.reference_clusters = group_degeneracies(ref_entries, options.degeneracy_tolerance);
  report.reference_inversions = find_inversions(ref_entries);

  int max_q = 0;
  for (const ReferenceLevel& r : reference) max_q = std::max({max_q, r.m, r.n});
  for (Variant v : {Variant::kFirstPrinciples, Variant::kPaperPrinted}) {
    const auto spectrum = enumerate_spectrum(model, v, window, max_q, options.roots);
    auto clusters = group_degeneracies(spectrum, options.degeneracy_tolerance);
    auto inversions = find_inversions(spectrum);
    if (v == Variant::kFirstPrinciples) {
      report.clusters_first_principles = std::move(clusters);
      report.inversions_first_principles = std::move(inversions);
    } else {
      report.clusters_paper_printed = std::move(clusters);
      report.inversions_paper_printed = std::move(inversions);
    }
  }

  // Reflected inventory: roots E whose m0 (r - E) lands in the window. The
  // printed equation is also evaluated at negative labels, outside its
  // physical domain, because the published values turn up there.
  const double m0 = model.mass().m0;
  const double r = model.pot().r;
  const EnergyWindow reflected(r - window.hi / m0, r - window.lo / m0);
  const int q = options.reflected_max_q;
  std::vector<SpectrumEntry> reflected_roots;
  auto collect = [&](Variant v, int m, int n, auto&& f) {
    for (double e : scan_roots(f, reflected, options.roots)) {
      SpectrumEntry s;
      s.m = m;
      s.n = n;
      s.energy = e;
      s.residual = std::abs(*f(e));
      s.variant = v;
      reflected_roots.push_back(s);
    }
  };
  for (int m = 0; m <= q; ++m) {
    for (int n = 0; n <= q; ++n) {
      collect(Variant::kFirstPrinciples, m, n,
              [&](double e) { return first_principles(model, m, n, e); });
    }
  }
  for (int m = -q; m <= q; ++m) {
    for (int n = -q; n <= q; ++n) {
      collect(Variant::kPaperPrinted, m, n,
              [&](double e) { return paper_printed(model, m, n, e); });
    }
  }
  for (const ReferenceLevel& ref : reference) {
    for (const SpectrumEntry& e : reflected_roots) {
      const double in = e.in_value(model);
      if (std::abs(in - ref.energy) < options.match_tolerance) {
        report.reflected_hits.push_back({ref, e.variant, e.m, e.n, e.energy, in});
      }
    }
  }
  return report;
}

}  // namespace pdm
