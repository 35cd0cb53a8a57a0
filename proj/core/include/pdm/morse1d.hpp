#pragma once

#include <optional>
#include <utility>

#include "pdm/quadrature.hpp"

namespace pdm {

/// One separated axis: -X'' + (eta e^{-alpha x} + nu e^{-2 alpha x}) X = eps X.
struct MorseChannel {
  double eta = 0.0;
  double nu = 0.0;
  double alpha = 1.0;

  /// Bound states need a repulsive wall (nu > 0) and an attractive well
  /// (eta < 0).
  bool supports_bound_states() const noexcept { return nu > 0.0 && eta < 0.0; }
};

/// A closed-form bound state of a MorseChannel. `norm` multiplies the raw
/// closed form; it is 1 until normalize_1d fills it in.
struct Bound1D {
  int m = 0;
  double epsilon = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double z_scale = 0.0;
  double norm = 1.0;
};

/// eta = 2 gamma_lin / hbar^2, nu = 2 gamma_quad / hbar^2.
MorseChannel channel_from_gammas(double gamma_lin, double gamma_quad,
                                 double decay, double hbar);

/// Largest m with |eta| > alpha sqrt(nu) (2m + 1); empty when no level exists.
std::optional<int> m_max(const MorseChannel& ch);

/// eps_m = -(1 / 4nu) [|eta| - alpha sqrt(nu) (2m + 1)]^2.
/// Throws NoBoundStates or InvalidLevel.
Bound1D energy_1d(const MorseChannel& ch, int m);

/// Generalized Laguerre polynomial L_n^a(z) by upward three-term recurrence.
double laguerre(int n, double a, double z);

/// Raw closed form z^mu e^{-z/2} L_m^{2 mu}(z), z = (2 sqrt(nu) / alpha)
/// e^{-alpha x}, multiplied by state.norm.
double wavefunction_1d(const MorseChannel& ch, const Bound1D& state, double x);

/// X'' evaluated through the channel equation, (U(x) - eps) X(x).
double wavefunction_1d_second_derivative(const MorseChannel& ch,
                                         const Bound1D& state, double x);

/// x at which the channel potential is minimal.
double well_minimum(const MorseChannel& ch);

/// Interval outside of which |X|^2 falls below quad.tail_fraction of its peak.
std::pair<double, double> wavefunction_support(const MorseChannel& ch,
                                               const Bound1D& state,
                                               const QuadratureSpec& quad);

/// Normalizes `state` in place and returns the constant N applied to the raw
/// closed form.
double normalize_1d(const MorseChannel& ch, Bound1D& state,
                    const QuadratureSpec& quad);

}  // namespace pdm
