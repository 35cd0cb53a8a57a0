#pragma once

#include "pdm/model.hpp"

namespace pdm {

/// Energy-dependent Morse coefficients gamma_i(E) = b_i + m0 (r - E) g_i.
/// gamma1/gamma2 drive the x axis, gamma3/gamma4 the y axis.
struct GammaSet {
  double gamma1;
  double gamma2;
  double gamma3;
  double gamma4;
  double e_trial;
};

/// Ordering-dependent effective potential U(alpha, gamma; x, y) of the
/// von Roos Hamiltonian.
double von_roos_U(const OrderingParams& ordering, const MassParams& mass,
                  double x, double y, double hbar);

/// V_eff seen by chi = M^{-1/2} psi:
///   V + (hbar^2 / 4M) [2 c_grad (grad M / M)^2 - c_lap (lap M / M)].
double veff_at(const Model& model, double x, double y);

GammaSet gammas_at(const Model& model, double e_trial);

/// xi(E) = -a + m0 (E - r).
double xi_of(const Model& model, double e);

/// 2 xi(E) / hbar^2, the eigenvalue of the reduced constant-mass problem.
double epsilon_of(const Model& model, double e);

/// The quantity m0 (r - E) used by the printed transcendental equation.
double in_of(const Model& model, double e);

/// Four-exponential reduced potential; valid only under the ambiguity-free
/// ordering (throws OrderingNotSolvable otherwise).
double ueff_at(const Model& model, double e_trial, double x, double y);

/// General constant-mass reduction for any ordering:
///   M V - E M + (hbar^2/4)[2 c_grad (grad M/M)^2 - c_lap lap M/M] + xi(E).
/// Agrees with ueff_at when the ordering is ambiguity-free.
double ueff_general(const Model& model, double e_trial, double x, double y);

}  // namespace pdm
