#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pdm/effective_potential.hpp"
#include "pdm/errors.hpp"
#include "pdm/oracle.hpp"
#include "pdm/spectrum2d.hpp"

namespace pdm {
namespace {

constexpr double kPi = std::numbers::pi;

double harmonic(double x) { return x * x; }
double zero(double) { return 0.0; }

TEST(Grid1D, GeometryAndValidation) {
  const Grid1D g(-1.0, 1.0, 21);
  EXPECT_DOUBLE_EQ(g.step(), 0.1);
  EXPECT_DOUBLE_EQ(g.node(20), 1.0);
  EXPECT_EQ(g.halved().n(), 41);
  EXPECT_DOUBLE_EQ(g.halved().step(), 0.05);
  EXPECT_THROW(Grid1D(1.0, 0.0, 100), InvalidParameter);
  EXPECT_THROW(Grid1D(0.0, 1.0, Grid1D::kMinNodes - 1), InvalidParameter);
}

TEST(FdEigen1D, BoxModes) {
  const EigenResult r = fd_eigen_1d(zero, Grid1D(0.0, kPi, 2000), 3);
  for (int k = 1; k <= 3; ++k) EXPECT_NEAR(r.eigenvalues[k - 1], k * k, 1e-3);
}

TEST(FdEigen1D, HarmonicOscillator) {
  const EigenResult r = fd_eigen_1d(harmonic, Grid1D(-12.0, 12.0, 4000), 3);
  EXPECT_NEAR(r.eigenvalues[0], 1.0, 1e-4);
  EXPECT_NEAR(r.eigenvalues[1], 3.0, 1e-4);
  EXPECT_NEAR(r.eigenvalues[2], 5.0, 1e-4);
  EXPECT_FALSE(r.boundary_limited);
}

TEST(FdEigen1D, SecondOrderConvergence) {
  for (const auto& [u, x0, x1, exact] :
       {std::tuple{Potential1D(zero), 0.0, kPi, 4.0}, std::tuple{Potential1D(harmonic), -10.0, 10.0, 3.0}}) {
    const Grid1D g(x0, x1, 400);
    const double e1 = std::abs(fd_eigen_1d(u, g, 2).eigenvalues[1] - exact);
    const double e2 = std::abs(fd_eigen_1d(u, g.halved(), 2).eigenvalues[1] - exact);
    EXPECT_NEAR(e1 / e2, 4.0, 0.8);
  }
}

// The example channel on [-12, 40] with n = 4000 misses 1e-4 by a hair
// (the step is 0.013); convergence is second order, and one halving gets
// well inside the tolerance.
TEST(FdEigen1D, MorseExampleChannel) {
  const auto u = [](double x) { return -2.0 * std::exp(-x) + 0.25 * std::exp(-2.0 * x); };
  const Grid1D g(-12.0, 40.0, 4000);
  const EigenResult coarse = fd_eigen_1d(u, g, 3);
  const EigenResult fine = fd_eigen_1d(u, g.halved(), 3);
  const double exact[] = {-2.25, -0.25};
  EXPECT_LT(coarse.eigenvalues[1], 0.0);
  EXPECT_GT(coarse.eigenvalues[2], 0.0);
  for (int k = 0; k < 2; ++k) {
    const double d1 = std::abs(coarse.eigenvalues[k] - exact[k]);
    const double d2 = std::abs(fine.eigenvalues[k] - exact[k]);
    EXPECT_LT(d1 / std::abs(exact[k]), 2e-4);
    EXPECT_NEAR(d1 / d2, 4.0, 0.8);
    EXPECT_LT(d2 / std::abs(exact[k]), 1e-4);
  }
}

TEST(FdEigen1D, Errors) {
  EXPECT_THROW(fd_eigen_1d(zero, Grid1D(0.0, 1.0, 20), 0), InvalidParameter);
  EXPECT_THROW(fd_eigen_1d(zero, Grid1D(0.0, 1.0, 20), 19), GridTooSmall);
}

TEST(FdEigen1D, FlagsBoxConfinement) {
  EXPECT_TRUE(fd_eigen_1d(zero, Grid1D(0.0, kPi, 200), 1).boundary_limited);
}

TEST(FdEigen2D, BoxGroundState) {
  const Grid1D g(0.0, kPi, 101);
  const EigenResult r = fd_eigen_2d(Potential2D([](double, double) { return 0.0; }), Grid2D{g, g}, 3);
  EXPECT_NEAR(r.eigenvalues[0], 2.0, 5e-3);
  EXPECT_NEAR(r.eigenvalues[1], 5.0, 5e-3);
  EXPECT_NEAR(r.eigenvalues[2], 5.0, 5e-3);
}

TEST(FdEigen2D, SeparableOscillator) {
  const Grid1D g(-7.0, 7.0, 201);
  const EigenResult r =
      fd_eigen_2d(Potential2D([](double x, double y) { return x * x + y * y; }), Grid2D{g, g}, 1);
  EXPECT_NEAR(r.eigenvalues[0], 2.0, 1e-3);
}

TEST(FdEigen2D, IterativeAndSeparablePathsAgree) {
  const Model model = Model::paper_example();
  const Grid2D grid = oracle_grid(model, energy_window(model), 64);
  const double e = 0.0;
  const MassParams& p = model.mass();
  const GammaSet g = gammas_at(model, e);
  const double s = 2.0 / (model.hbar() * model.hbar());
  const Potential1D ux = [&](double x) {
    const double t = std::exp(-p.a1 * x);
    return s * (g.gamma1 * t + g.gamma2 * t * t);
  };
  const Potential1D uy = [&](double y) {
    const double t = std::exp(-p.a2 * y);
    return s * (g.gamma3 * t + g.gamma4 * t * t);
  };
  const Potential2D u2 = [&](double x, double y) { return s * ueff_at(model, e, x, y); };
  const EigenResult iterative = fd_eigen_2d(u2, grid, 6);
  const EigenResult separable = fd_eigen_2d(SeparablePotential{ux, uy}, grid, 6);
  ASSERT_EQ(iterative.eigenvalues.size(), 6u);
  for (int k = 0; k < 6; ++k) {
    EXPECT_NEAR(iterative.eigenvalues[k], separable.eigenvalues[k],
                1e-8 * std::max(1.0, std::abs(separable.eigenvalues[k])));
  }
}

TEST(SeparableLevels, SortedSumsWithLabels) {
  const Grid1D g(0.0, kPi, 300);
  const std::vector<LabeledLevel> l =
      separable_levels({Potential1D(zero), Potential1D(zero)}, Grid2D{g, g}, 3, 3);
  ASSERT_EQ(l.size(), 9u);
  EXPECT_EQ(l[0].m, 0);
  EXPECT_EQ(l[0].n, 0);
  EXPECT_EQ(l[1].m, 0);
  EXPECT_EQ(l[1].n, 1);
  EXPECT_EQ(l[2].m, 1);
  EXPECT_EQ(l[2].n, 0);
  EXPECT_EQ(l[1].value, l[2].value);
  for (std::size_t i = 1; i < l.size(); ++i) EXPECT_LE(l[i - 1].value, l[i].value);
}

TEST(MorseDomain, WallAndTail) {
  const auto [lo, hi] = morse_domain(-2.0, 0.25, 1.0);
  const auto u = [](double x) { return -2.0 * std::exp(-x) + 0.25 * std::exp(-2.0 * x); };
  EXPECT_GE(u(lo), 50.0 * 4.0 * (1 - 1e-9));
  EXPECT_LT(std::abs(u(hi)), 1e-10 * 4.0 * (1 + 1e-9));
  EXPECT_THROW(morse_domain(1.0, 0.25, 1.0), NoBoundStates);
}

TEST(FdMorseLevels, Deterministic) {
  const MorseLevels a = fd_morse_levels(-3.1, 0.4, 1.3);
  const MorseLevels b = fd_morse_levels(-3.1, 0.4, 1.3);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_LT(a.last_change, 2e-5);
}

TEST(OracleEnergy2D, GroundStateAgreesAndConvergesAtSecondOrder) {
  const Model model = Model::paper_example();
  const EnergyWindow w = energy_window(model);
  const auto roots = find_roots(model, Variant::kFirstPrinciples, 0, 0, w);
  ASSERT_EQ(roots.size(), 1u);
  const Grid2D grid = oracle_grid(model, w, 96);
  const double d1 = std::abs(oracle_energy_2d(model, 0, 0, w, grid) - roots[0].energy);
  const double d2 = std::abs(oracle_energy_2d(model, 0, 0, w, grid.halved()) - roots[0].energy);
  EXPECT_LT(d2, 1e-3);
  EXPECT_NEAR(d1 / d2, 4.0, 0.8);
}

TEST(OracleEnergy2D, NoBracketWithoutSignChange) {
  const Model model = Model::paper_example();
  const Grid2D grid = oracle_grid(model, energy_window(model), 48);
  EXPECT_THROW(oracle_energy_2d(model, 0, 0, EnergyWindow(0.6, 1.0), grid), NoBracket);
  EXPECT_THROW(oracle_energy_2d(model, -1, 0, energy_window(model), grid), InvalidParameter);
}

TEST(MinimizePotential, PaperParameters) {
  const Model model = Model::paper_example();
  const PotentialMinimum m = minimize_potential(model);
  EXPECT_NEAR(m.value, -0.40693, 1e-4);
  EXPECT_NEAR(m.x, m.y, 1e-8);
  EXPECT_LT(m.gradient_norm, 1e-6);
  const double h = 1e-3, v = potential_at(model, m.x, m.y);
  EXPECT_GT(potential_at(model, m.x + h, m.y) - 2 * v + potential_at(model, m.x - h, m.y), 0.0);
  EXPECT_GT(potential_at(model, m.x, m.y + h) - 2 * v + potential_at(model, m.x, m.y - h), 0.0);
  EXPECT_LE(m.value, potential_at(model, 0.0, 0.0));
}

TEST(MinimizePotential, AsymmetricParameters) {
  // Two independent one-dimensional problems: the minimum is the sum of
  // the per-axis minima of -2e^{-x} + e^{-2x} (value -1 at x = 0) shifted.
  const Model model(1.0, MassParams{}, {0.0, 0.0, -2.0, 1.0, -4.0, 1.0},
                    solve_ambiguity_free_ordering());
  const PotentialMinimum m = minimize_potential(model);
  EXPECT_NEAR(m.x, 0.0, 1e-6);
  EXPECT_NEAR(m.y, -std::log(2.0), 1e-6);
  EXPECT_NEAR(m.value, -1.0 - 4.0, 1e-10);
}

TEST(MinimizePotential, UnboundedWithoutAttraction) {
  MassParams p = Model::paper_example().mass();
  const Model model(1.0, p, {0.0, 1.0, 0.0, 0.0, 0.0, 0.0}, solve_ambiguity_free_ordering());
  EXPECT_THROW(minimize_potential(model), Unbounded);
}

}  // namespace
}  // namespace pdm
