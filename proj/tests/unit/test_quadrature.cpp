#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pdm/errors.hpp"
#include "pdm/quadrature.hpp"

namespace pdm {
namespace {

TEST(Integrate, Polynomial) {
  const QuadratureSpec q;
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0, q), 9.0, 1e-12);
  EXPECT_NEAR(integrate([](double x) { return 5.0 * std::pow(x, 4) - 1.0; }, -1.0, 2.0, q),
              33.0 - 3.0, 1e-11);
}

TEST(Integrate, Gaussian) {
  const double v = integrate([](double x) { return std::exp(-x * x); }, -12.0, 12.0, {});
  EXPECT_NEAR(v, std::sqrt(std::numbers::pi), 1e-12);
}

TEST(Integrate, SharpPeakNeedsAdaptivity) {
  // Narrow Lorentzian off the panel centres.
  const double w = 1e-4;
  const auto f = [w](double x) { return w / ((x - 0.3141) * (x - 0.3141) + w * w); };
  const double exact = std::atan((1.0 - 0.3141) / w) - std::atan((-1.0 - 0.3141) / w);
  EXPECT_NEAR(integrate(f, -1.0, 1.0, {}), exact, 1e-8 * exact);
}

TEST(Integrate, OscillatoryIntegrand) {
  const double v = integrate([](double x) { return std::sin(40.0 * x); }, 0.0, 1.0, {});
  EXPECT_NEAR(v, (1.0 - std::cos(40.0)) / 40.0, 1e-12);
}

TEST(Integrate, RejectsEmptyInterval) {
  const auto f = [](double x) { return std::exp(x); };
  EXPECT_THROW(integrate(f, 2.0, 0.0, {}), InvalidParameter);
  QuadratureSpec q;
  q.panels = 0;
  EXPECT_THROW(integrate(f, 0.0, 1.0, q), InvalidParameter);
}

TEST(Integrate, ThrowsWhenBudgetExhausted) {
  QuadratureSpec q;
  q.max_subdivisions = 4;
  q.tolerance = 1e-15;
  const auto f = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.123456789)); };
  EXPECT_THROW(integrate(f, -1.0, 1.0, q), QuadratureNotConverged);
}

TEST(L2Normalization, KnownConstant) {
  const double n = l2_normalization([](double x) { return std::exp(-x * x / 2); }, -15, 15, {});
  EXPECT_NEAR(n, std::pow(std::numbers::pi, -0.25), 1e-12);
}

TEST(L2Normalization, Homogeneity) {
  const auto f = [](double x) { return x * std::exp(-std::abs(x)); };
  const double n1 = l2_normalization(f, -40, 40, {});
  const double n7 = l2_normalization([&](double x) { return 7.0 * f(x); }, -40, 40, {});
  EXPECT_NEAR(n7, n1 / 7.0, 1e-14 * n1);
}

TEST(L2Normalization, RefinedSpecAgrees) {
  const auto f = [](double x) { return std::exp(-std::exp(-x) - 0.7 * x); };
  const QuadratureSpec q;
  const double a = l2_normalization(f, -5, 60, q);
  const double b = l2_normalization(f, -5, 60, q.refined());
  EXPECT_LT(std::abs(a - b) / a, 1e-10);
}

}  // namespace
}  // namespace pdm
