#pragma once

// Self-consistent two-dimensional spectrum of the reduced Morse problem.
//
// The Morse coefficients depend on the energy through gamma_i(E), so each
// level (m, n) is a root of a mismatch function F(E). Two encodings of F are
// provided:
//
//   FIRST_PRINCIPLES  F(E) = eps_m(E) + eps_n(E) - 2 xi(E) / hbar^2, built
//                     from the per-axis closed forms of morse1d.
//   PAPER_PRINTED     the transcendental equation exactly as published:
//                     8 g2 g4 (A + in) - g4 [|g3| - hbar a1 sqrt(g2/2)(2n+1)]^2
//                                      - g2 [|g3| - hbar a2 sqrt(g4/2)(2m+1)]^2
//                     with g_i = gamma_i and in = m0 (r - E).
//
// The two disagree (prefactor 8 vs 4, |g3| in both brackets, swapped m/n);
// both are kept so the published table can be checked against each.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdm/energy_window.hpp"
#include "pdm/model.hpp"
#include "pdm/morse1d.hpp"
#include "pdm/oracle.hpp"
#include "pdm/table_reference.hpp"

namespace pdm {

enum class Variant { kFirstPrinciples, kPaperPrinted };

std::string_view to_string(Variant v);
/// Accepts "first-principles" and "paper-printed".
std::optional<Variant> parse_variant(std::string_view text);

struct ValidityFlags {
  bool support_x = false;
  bool support_y = false;
  bool level_x_allowed = false;
  bool level_y_allowed = false;
  bool in_window = false;

  bool all() const noexcept {
    return support_x && support_y && level_x_allowed && level_y_allowed &&
           in_window;
  }
  friend bool operator==(const ValidityFlags&, const ValidityFlags&) = default;
};

struct SpectrumEntry {
  int m = 0;
  int n = 0;
  double energy = 0.0;
  double residual = 0.0;
  ValidityFlags valid;
  Variant variant = Variant::kFirstPrinciples;

  /// m0 (r - E), the published parametrization of the energy.
  double in_value(const Model& model) const;
};

/// Per-axis channels at trial energy e (x uses gamma1/gamma2 and a1, y uses
/// gamma3/gamma4 and a2).
std::pair<MorseChannel, MorseChannel> axis_channels(const Model& model, double e);

ValidityFlags validity_at(const Model& model, int m, int n, double e,
                          const EnergyWindow& window);

/// F(e) for level (m, n), or nullopt where the variant is undefined at e
/// (FIRST_PRINCIPLES: lost support or level above m_max / n_max;
/// PAPER_PRINTED: gamma2 or gamma4 negative under the square root).
/// Throws OrderingNotSolvable unless the ordering is ambiguity-free.
std::optional<double> mismatch(const Model& model, Variant variant, int m, int n,
                               double e);

/// As mismatch, but throws ChannelUnsupported instead of returning nullopt.
double mismatch_checked(const Model& model, Variant variant, int m, int n,
                        double e);

struct RootOptions {
  int scan_points = 2000;
  /// Bisection stops once the bracket is narrower than this.
  double tolerance = 1e-12;
  /// A local minimum of |F| without a sign change counts as a (double) root
  /// when |F| drops below this there.
  double touch_tolerance = 1e-12;
};

/// Every root of F in the window: uniform scan over scan_points intervals,
/// bisection on each supported sign change, minimization of |F| at each
/// sign-preserving dip (double roots). Sorted by energy.
std::vector<SpectrumEntry> find_roots(const Model& model, Variant variant, int m,
                                      int n, const EnergyWindow& window,
                                      const RootOptions& options = {});

/// find_roots over all (m, n) with 0 <= m, n <= max_q. For x<->y symmetric
/// models only m <= n is solved and the results are mirrored. Sorted by
/// energy, then m, then n.
std::vector<SpectrumEntry> enumerate_spectrum(const Model& model, Variant variant,
                                              const EnergyWindow& window,
                                              int max_q,
                                              const RootOptions& options = {});

/// [global minimum of V, r + a/m0]. Throws NoBoundStates when the window
/// is degenerate (flat potential) and propagates Unbounded.
EnergyWindow energy_window(const Model& model);

struct DegeneracyCluster {
  double energy;  // lowest member energy
  std::vector<SpectrumEntry> members;
  /// Distinct (m, n) labels counting both orientations.
  int multiplicity;
};

/// Groups energy-sorted entries into clusters whose members differ pairwise
/// by less than tol.
std::vector<DegeneracyCluster> group_degeneracies(
    std::span<const SpectrumEntry> entries, double tol);

struct Inversion {
  SpectrumEntry higher_quanta;  // larger m + n ...
  SpectrumEntry lower_quanta;   // ... yet lies below this one
};

/// Pairs where a level with larger m + n lies strictly below one with
/// smaller m + n.
std::vector<Inversion> find_inversions(std::span<const SpectrumEntry> entries);

/// Normalized product state chi_mn = X_m(x) Y_n(y) for a valid entry.
class Level2D {
 public:
  Level2D(const Model& model, const SpectrumEntry& entry,
          const QuadratureSpec& quad = {});

  double chi(double x, double y) const;
  double psi(double x, double y) const;

  /// -lap chi from the per-axis relations X'' = (U_x - eps_m) X.
  double laplacian(double x, double y) const;

  const MorseChannel& channel_x() const noexcept { return cx_; }
  const MorseChannel& channel_y() const noexcept { return cy_; }
  const Bound1D& state_x() const noexcept { return sx_; }
  const Bound1D& state_y() const noexcept { return sy_; }
  const SpectrumEntry& entry() const noexcept { return entry_; }

 private:
  Model model_;
  SpectrumEntry entry_;
  MorseChannel cx_;
  MorseChannel cy_;
  Bound1D sx_;
  Bound1D sy_;
};

double chi_mn(const Model& model, const SpectrumEntry& entry, double x, double y);
double psi_mn(const Model& model, const SpectrumEntry& entry, double x, double y);

/// Relative L2 residual of -lap chi + (2/hbar^2) U_eff(E) chi - eps(E) chi
/// over the grid nodes, normalized by ||eps(E) chi||.
double pde_residual(const Model& model, const SpectrumEntry& entry,
                    const Grid2D& grid);

struct TableRow {
  ReferenceLevel reference;
  std::optional<double> e_first_principles;
  std::optional<double> e_paper_printed;
  bool match_first_principles = false;
  bool match_paper_printed = false;

  std::optional<double> delta_first_principles() const;
  std::optional<double> delta_paper_printed() const;
};

/// A reference value reproduced by m0 (r - E) of some root, i.e. with the
/// sign of E flipped (r = 0, m0 = 1), possibly under a different label.
/// PAPER_PRINTED labels range over [-reflected_max_q, reflected_max_q]:
/// the printed formula is evaluated even where 2m+1 < 0.
struct ReflectedHit {
  ReferenceLevel reference;
  Variant variant;
  int m;
  int n;
  double energy;
  double in_value;
};

struct MultiRoot {
  Variant variant;
  int m;
  int n;
  std::vector<double> energies;
};

struct TableComparison {
  EnergyWindow window;
  double match_tolerance;
  std::vector<TableRow> rows{};
  int matches_first_principles = 0;
  int matches_paper_printed = 0;
  std::vector<MultiRoot> multi_roots{};
  std::vector<DegeneracyCluster> reference_clusters{};
  std::vector<DegeneracyCluster> clusters_first_principles{};
  std::vector<DegeneracyCluster> clusters_paper_printed{};
  std::vector<Inversion> reference_inversions{};
  std::vector<Inversion> inversions_first_principles{};
  std::vector<Inversion> inversions_paper_printed{};
  std::vector<ReflectedHit> reflected_hits{};
};

struct CompareOptions {
  RootOptions roots;
  double match_tolerance = 1e-5;
  double degeneracy_tolerance = 1e-6;
  /// Label bound for the reflected-energy inventory.
  int reflected_max_q = 6;
};

/// Reports, never asserts: nearest root of each variant for every reference
/// level, match flags at match_tolerance, and the surrounding inventory.
TableComparison compare_table(const Model& model,
                              std::span<const ReferenceLevel> reference,
                              const CompareOptions& options = {});

/// Reference levels plus their mirrored labels, as SpectrumEntry values
/// sorted for group_degeneracies.
std::vector<SpectrumEntry> reference_entries(
    std::span<const ReferenceLevel> reference);

}  // namespace pdm
