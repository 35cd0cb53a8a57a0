#pragma once

// Finite-difference ground truth for the closed forms. Nothing here calls
// into morse1d or spectrum2d; the only shared inputs are the model and the
// gamma coefficients.

#include <array>
#include <cstddef>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "pdm/block_lanczos.hpp"
#include "pdm/energy_window.hpp"
#include "pdm/model.hpp"

namespace pdm {

/// `n` equally spaced nodes spanning [x0, x1] including both ends. For the
/// eigensolvers the end nodes carry the Dirichlet condition, so the unknowns
/// are the n - 2 interior nodes.
class Grid1D {
 public:
  static constexpr int kMinNodes = 16;

  Grid1D(double x0, double x1, int n);

  double x0() const noexcept { return x0_; }
  double x1() const noexcept { return x1_; }
  int n() const noexcept { return n_; }
  double step() const noexcept { return (x1_ - x0_) / (n_ - 1); }
  double node(int i) const noexcept { return x0_ + i * step(); }
  /// Same span, step halved (2n - 1 nodes).
  Grid1D halved() const { return Grid1D(x0_, x1_, 2 * n_ - 1); }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double x0_;
  double x1_;
  int n_;
};

struct Grid2D {
  Grid1D x;
  Grid1D y;

  Grid2D halved() const { return {x.halved(), y.halved()}; }
  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

struct EigenResult {
  std::vector<double> eigenvalues;
  /// Interior-node values, one vector per eigenvalue; empty unless requested.
  std::vector<std::vector<double>> eigenvectors;
  std::variant<Grid1D, Grid2D> grid;
  std::array<double, 2> h{};
  /// The potential at a boundary lies below the highest returned level, so
  /// the box rather than the potential confines that state.
  bool boundary_limited = false;
};

using Potential1D = std::function<double(double)>;
using Potential2D = std::function<double(double, double)>;

/// Lowest k eigenvalues of -d^2/dx^2 + U(x) with Dirichlet ends, three-point
/// stencil, Sturm-sequence bisection.
EigenResult fd_eigen_1d(const Potential1D& potential, const Grid1D& grid,
                        int k, bool with_vectors = false);

/// Lowest k eigenvalues of -lap + U(x, y) with the five-point stencil,
/// computed by block Lanczos on the full 2D operator.
EigenResult fd_eigen_2d(const Potential2D& potential, const Grid2D& grid, int k,
                        const LanczosOptions& options = {});

struct SeparablePotential {
  Potential1D x;
  Potential1D y;
};

struct LabeledLevel {
  int m;
  int n;
  double value;
};

/// All sums lambda^x_m + lambda^y_n for m < kx, n < ky, ascending (ties by
/// m, then n). The eigenvalues of the 2D five-point operator for
/// U = Ux(x) + Uy(y) are exactly these sums.
std::vector<LabeledLevel> separable_levels(const SeparablePotential& potential,
                                           const Grid2D& grid, int kx, int ky);

/// Lowest k eigenvalues of the 2D problem through the separable route.
EigenResult fd_eigen_2d(const SeparablePotential& potential, const Grid2D& grid,
                        int k);

/// Self-consistent root of  lambda^x_m(E) + lambda^y_n(E) - 2 xi(E)/hbar^2,
/// where the lambdas are finite-difference eigenvalues of the reduced
/// potential at trial energy E. The first sign change (scanning upwards) at
/// which both per-axis levels are bound is bisected to `tolerance`.
struct OracleOptions {
  int scan_points = 64;
  double tolerance = 1e-8;
};

double oracle_energy_2d(const Model& model, int m, int n,
                        const EnergyWindow& window, const Grid2D& grid,
                        const OracleOptions& options = {});

/// Domain for one axis with potential eta e^{-alpha x} + nu e^{-2 alpha x}
/// (nu > 0, eta < 0): the left end is where the potential exceeds
/// max(50 * depth, (40 alpha)^2), the right end where |U| < 1e-10 * depth.
/// `depth` defaults to the well depth eta^2 / (4 nu), an upper bound on
/// |eps_0|.
std::pair<double, double> morse_domain(double eta, double nu, double alpha,
                                       double depth = 0.0);

/// Bound levels of one Morse axis on an auto-sized domain. The node count
/// starts at `start_nodes` and the step is halved until every negative
/// eigenvalue changes by less than `rel_tol` (relative) between refinements.
struct MorseLevels {
  std::vector<double> eigenvalues;  // all negative eigenvalues, ascending
  Grid1D grid;
  double last_change;
};

MorseLevels fd_morse_levels(double eta, double nu, double alpha,
                            double rel_tol = 2e-5, int start_nodes = 4000,
                            int max_nodes = 1 << 21);

/// Grid sized for the reduced problem of `model` over the given window
/// (per-axis domains from morse_domain at the deepest energy in the window),
/// with `nodes` nodes per axis.
Grid2D oracle_grid(const Model& model, const EnergyWindow& window, int nodes);

struct PotentialMinimum {
  double x;
  double y;
  double value;
  double gradient_norm;
};

/// Global minimum of potential_at: coarse scan, alternating golden-section
/// line searches, then a Newton polish on finite-difference derivatives.
/// Throws Unbounded when the scan minimum sits on the scan boundary.
PotentialMinimum minimize_potential(const Model& model);

}  // namespace pdm
