#include "pdm/effective_potential.hpp"

#include <cmath>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

double checked(double v, const char* what, double x, double y) {
  if (!std::isfinite(v)) throw EvaluationOverflow(what, x, y);
  return v;
}

// (grad M / M)^2 and lap M / M.
struct MassRatios {
  double grad_sq;
  double lap;
};

MassRatios mass_ratios(const MassDerivatives& d) {
  const double rx = d.dx / d.value;
  const double ry = d.dy / d.value;
  return {rx * rx + ry * ry, (d.dxx + d.dyy) / d.value};
}

// Bracket of V_eff - V and of the reduction, without the 1/M factor.
double ordering_bracket(const OrderingParams& ordering, const MassRatios& r) {
  return 2.0 * ordering.gradient_coefficient() * r.grad_sq -
         ordering.laplacian_coefficient() * r.lap;
}

}  // namespace

double von_roos_U(const OrderingParams& ordering, const MassParams& mass,
                  double x, double y, double hbar) {
  const MassDerivatives d = mass_derivatives(mass, x, y);
  const MassRatios r = mass_ratios(d);
  const double sum = ordering.alpha() + ordering.gamma();
  const double mixed = sum + ordering.alpha() * ordering.gamma();
  const double u =
      -(hbar * hbar / (4.0 * d.value)) * (sum * r.lap - 2.0 * mixed * r.grad_sq);
  return checked(u, "von_roos_U", x, y);
}

double veff_at(const Model& model, double x, double y) {
  const double v = potential_at(model, x, y);
  const MassDerivatives d = mass_derivatives(model.mass(), x, y);
  const double hb2 = model.hbar() * model.hbar();
  const double extra =
      hb2 / (4.0 * d.value) * ordering_bracket(model.ordering(), mass_ratios(d));
  return checked(v + extra, "veff_at", x, y);
}

GammaSet gammas_at(const Model& model, double e_trial) {
  const MassParams& ms = model.mass();
  const PotentialParams& p = model.pot();
  const double shift = ms.m0 * (p.r - e_trial);
  return {p.b1 + shift * ms.g1, p.b2 + shift * ms.g2, p.b3 + shift * ms.g3,
          p.b4 + shift * ms.g4, e_trial};
}

double xi_of(const Model& model, double e) {
  return -model.pot().a + model.mass().m0 * (e - model.pot().r);
}

double epsilon_of(const Model& model, double e) {
  return 2.0 * xi_of(model, e) / (model.hbar() * model.hbar());
}

double in_of(const Model& model, double e) {
  return model.mass().m0 * (model.pot().r - e);
}

double ueff_at(const Model& model, double e_trial, double x, double y) {
  if (!model.ordering().is_ambiguity_free()) {
    throw OrderingNotSolvable(
        "the four-exponential reduction requires alpha = gamma = -1/2, beta = 0");
  }
  const GammaSet g = gammas_at(model, e_trial);
  const double ex = std::exp(-model.mass().a1 * x);
  const double ey = std::exp(-model.mass().a2 * y);
  const double u = g.gamma1 * ex + g.gamma2 * ex * ex + g.gamma3 * ey +
                   g.gamma4 * ey * ey;
  return checked(u, "ueff_at", x, y);
}

double ueff_general(const Model& model, double e_trial, double x, double y) {
  const MassDerivatives d = mass_derivatives(model.mass(), x, y);
  const double v = potential_at(model, x, y);
  const double hb2 = model.hbar() * model.hbar();
  const double u = d.value * v - e_trial * d.value +
                   0.25 * hb2 * ordering_bracket(model.ordering(), mass_ratios(d)) +
                   xi_of(model, e_trial);
  return checked(u, "ueff_general", x, y);
}

}  // namespace pdm
