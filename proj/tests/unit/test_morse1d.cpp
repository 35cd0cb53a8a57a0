#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pdm/errors.hpp"
#include "pdm/morse1d.hpp"
#include "pdm/oracle.hpp"
#include "random_channels.hpp"

namespace pdm {
namespace {

const MorseChannel kPaper{-2.0, 0.25, 1.0};

// Explicit sum  sum_k (-1)^k C(n+a, n-k) z^k / k!.
double laguerre_sum(int n, double a, double z) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double binom =
        std::exp(std::lgamma(n + a + 1) - std::lgamma(n - k + 1) - std::lgamma(a + k + 1));
    s += ((k % 2) ? -1.0 : 1.0) * binom * std::pow(z, k) / std::tgamma(k + 1.0);
  }
  return s;
}

// The unsimplified product form of the closed-form state.
double paper_form(const MorseChannel& ch, const Bound1D& s, double x) {
  const double rn = std::sqrt(ch.nu);
  const double z = (2 * rn / ch.alpha) * std::exp(-ch.alpha * x);
  return std::pow(2 * rn / ch.alpha, s.mu) *
         std::exp(-(s.mu * ch.alpha * x + (rn / ch.alpha) * std::exp(-ch.alpha * x))) *
         laguerre_sum(s.m, 2 * s.mu, z);
}

int sign_changes(const MorseChannel& ch, const Bound1D& s) {
  const auto [lo, hi] = wavefunction_support(ch, s, {});
  int changes = 0;
  double prev = 0.0;
  const int samples = 20000;
  for (int i = 0; i <= samples; ++i) {
    const double v = wavefunction_1d(ch, s, lo + (hi - lo) * i / samples);
    if (v == 0.0) continue;
    if (prev != 0.0 && (v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  return changes;
}

TEST(ChannelFromGammas, Examples) {
  const MorseChannel a = channel_from_gammas(-1.0, 0.125, 1.0, 1.0);
  EXPECT_EQ(a.eta, -2.0);
  EXPECT_EQ(a.nu, 0.25);
  EXPECT_EQ(a.alpha, 1.0);
  EXPECT_TRUE(a.supports_bound_states());
  EXPECT_FALSE(channel_from_gammas(0.0, 0.0, 1.0, 1.0).supports_bound_states());
  const MorseChannel c = channel_from_gammas(-1.0, 0.125, 1.0, 2.0);
  EXPECT_EQ(c.eta, -0.5);
  EXPECT_EQ(c.nu, 1.0 / 16.0);
  EXPECT_THROW(channel_from_gammas(-1.0, 0.1, 0.0, 1.0), InvalidParameter);
  EXPECT_THROW(channel_from_gammas(-1.0, 0.1, 1.0, -1.0), InvalidParameter);
}

TEST(MMax, Examples) {
  EXPECT_EQ(m_max(kPaper), 1);
  EXPECT_FALSE(m_max({-0.4, 0.25, 1.0}).has_value());
  EXPECT_FALSE(m_max({1.0, 0.25, 1.0}).has_value());
  EXPECT_FALSE(m_max({-1.0, -0.25, 1.0}).has_value());
}

TEST(MMax, StrictInequalityAtThreshold) {
  // |eta| = alpha sqrt(nu) (2m + 1) exactly for m = 2: level 2 is excluded.
  EXPECT_EQ(m_max({-2.5, 0.25, 1.0}), 1);
  EXPECT_EQ(m_max({-0.5, 0.25, 1.0}), std::nullopt);
}

TEST(MMax, AgreesWithDirectScan) {
  testing::ChannelGenerator gen(7);
  for (int i = 0; i < 200; ++i) {
    const MorseChannel ch = gen.next();
    int top = -1;
    while (std::abs(ch.eta) > ch.alpha * std::sqrt(ch.nu) * (2 * (top + 1) + 1)) ++top;
    ASSERT_EQ(m_max(ch), top);
  }
}

TEST(Energy1D, Examples) {
  const Bound1D g = energy_1d(kPaper, 0);
  EXPECT_DOUBLE_EQ(g.epsilon, -2.25);
  EXPECT_DOUBLE_EQ(g.mu, 1.5);
  EXPECT_DOUBLE_EQ(g.lambda, 2.0);
  EXPECT_DOUBLE_EQ(g.z_scale, 1.0);
  EXPECT_EQ(g.norm, 1.0);
  EXPECT_DOUBLE_EQ(energy_1d(kPaper, 1).epsilon, -0.25);
  EXPECT_THROW(energy_1d(kPaper, 2), InvalidLevel);
  EXPECT_THROW(energy_1d(kPaper, -1), InvalidLevel);
  EXPECT_THROW(energy_1d({1.0, 0.25, 1.0}, 0), NoBoundStates);
  EXPECT_THROW(energy_1d({-0.4, 0.25, 1.0}, 0), NoBoundStates);
}

TEST(Energy1D, MatchesFiniteDifferenceForExampleChannel) {
  const MorseLevels fd = fd_morse_levels(kPaper.eta, kPaper.nu, kPaper.alpha);
  ASSERT_EQ(fd.eigenvalues.size(), 2u);
  EXPECT_NEAR(fd.eigenvalues[0] / -2.25, 1.0, 1e-4);
  EXPECT_NEAR(fd.eigenvalues[1] / -0.25, 1.0, 1e-4);
}

TEST(Energy1D, InvariantsOnRandomChannels) {
  testing::ChannelGenerator gen(11);
  for (int i = 0; i < 200; ++i) {
    const MorseChannel ch = gen.next();
    const int top = *m_max(ch);
    double previous = -INFINITY;
    for (int m = 0; m <= top; ++m) {
      const Bound1D s = energy_1d(ch, m);
      ASSERT_NEAR(s.mu, s.lambda - m - 0.5, 1e-12 * std::max(1.0, s.lambda));
      ASSERT_NEAR(s.epsilon, -(ch.alpha * s.mu) * (ch.alpha * s.mu),
                  1e-12 * std::abs(s.epsilon));
      ASSERT_LT(s.epsilon, 0.0);
      ASSERT_GT(s.epsilon, previous);
      previous = s.epsilon;
    }
  }
}

TEST(Energy1D, OracleEquivalenceOnRandomChannels) {
  testing::ChannelGenerator gen;
  double worst = 0.0;
  for (int i = 0; i < 12; ++i) {
    const MorseChannel ch = gen.next();
    const MorseLevels fd = fd_morse_levels(ch.eta, ch.nu, ch.alpha);
    const int top = *m_max(ch);
    ASSERT_EQ(static_cast<int>(fd.eigenvalues.size()), top + 1)
        << "eta=" << ch.eta << " nu=" << ch.nu << " alpha=" << ch.alpha;
    for (int m = 0; m <= top; ++m) {
      const double eps = energy_1d(ch, m).epsilon;
      worst = std::max(worst, std::abs(fd.eigenvalues[m] - eps) / std::abs(eps));
    }
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(Laguerre, BaseCasesAndExample) {
  EXPECT_EQ(laguerre(0, 3.7, -2.0), 1.0);
  EXPECT_DOUBLE_EQ(laguerre(1, 2.5, 0.75), 1.0 + 2.5 - 0.75);
  EXPECT_DOUBLE_EQ(laguerre(2, 0.0, 2.0), -1.0);
  EXPECT_THROW(laguerre(-1, 0.0, 1.0), InvalidParameter);
}

TEST(Laguerre, MatchesExplicitSum) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ad(0.0, 8.0), zd(0.0, 12.0);
  for (int t = 0; t < 100; ++t) {
    const double a = ad(rng), z = zd(rng);
    for (int n = 0; n <= 6; ++n) {
      const double ref = laguerre_sum(n, a, z);
      ASSERT_NEAR(laguerre(n, a, z), ref, 1e-10 * std::max(1.0, std::abs(ref)))
          << "n=" << n << " a=" << a << " z=" << z;
    }
  }
}

TEST(Wavefunction, MatchesProductForm) {
  for (int m = 0; m <= 1; ++m) {
    const Bound1D s = energy_1d(kPaper, m);
    for (double x = -3.0; x <= 15.0; x += 0.5) {
      const double ref = paper_form(kPaper, s, x);
      ASSERT_NEAR(wavefunction_1d(kPaper, s, x), ref, 1e-12 * std::max(1e-3, std::abs(ref)));
    }
  }
}

TEST(Wavefunction, GroundStateIsPositive) {
  testing::ChannelGenerator gen(5);
  for (int i = 0; i < 20; ++i) {
    const MorseChannel ch = gen.next();
    const Bound1D s = energy_1d(ch, 0);
    const auto [lo, hi] = wavefunction_support(ch, s, {});
    for (double x = lo; x <= hi; x += (hi - lo) / 500) ASSERT_GE(wavefunction_1d(ch, s, x), 0.0);
    EXPECT_GT(wavefunction_1d(ch, s, well_minimum(ch)), 0.0);
  }
}

TEST(Wavefunction, FirstExcitedNodeAtLaguerreRoot) {
  const Bound1D s = energy_1d(kPaper, 1);
  const double z_node = 1.0 + 2.0 * s.mu;
  const double x_node = -std::log(z_node / s.z_scale) / kPaper.alpha;
  EXPECT_NEAR(wavefunction_1d(kPaper, s, x_node), 0.0, 1e-12);
  EXPECT_LT(wavefunction_1d(kPaper, s, x_node - 0.01) * wavefunction_1d(kPaper, s, x_node + 0.01), 0.0);
  EXPECT_EQ(sign_changes(kPaper, s), 1);
}

TEST(Wavefunction, DecaysAtBothEnds) {
  const Bound1D s = energy_1d(kPaper, 0);
  const double peak = wavefunction_1d(kPaper, s, well_minimum(kPaper));
  EXPECT_LT(std::abs(wavefunction_1d(kPaper, s, -6.0)), 1e-12 * peak);
  EXPECT_LT(std::abs(wavefunction_1d(kPaper, s, 40.0)), 1e-12 * peak);
  EXPECT_THROW(wavefunction_1d(kPaper, s, -1000.0), EvaluationOverflow);
}

TEST(Wavefunction, NodeCountsEqualQuantumNumber) {
  testing::ChannelGenerator gen(13);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    const MorseChannel ch = gen.next();
    const int top = std::min(*m_max(ch), 4);
    for (int m = 0; m <= top; ++m) {
      ASSERT_EQ(sign_changes(ch, energy_1d(ch, m)), m);
      ++checked;
    }
  }
  EXPECT_GT(checked, 60);
}

TEST(Wavefunction, SecondDerivativeMatchesFiniteDifference) {
  const Bound1D s = energy_1d(kPaper, 1);
  const double h = 1e-4;
  for (double x = -1.0; x <= 6.0; x += 0.7) {
    const double fd = (wavefunction_1d(kPaper, s, x + h) - 2 * wavefunction_1d(kPaper, s, x) +
                       wavefunction_1d(kPaper, s, x - h)) / (h * h);
    EXPECT_NEAR(wavefunction_1d_second_derivative(kPaper, s, x), fd, 1e-6);
  }
}

TEST(WellMinimum, ExampleChannel) {
  // t = e^{-x} = -eta / (2 nu) = 4.
  EXPECT_DOUBLE_EQ(well_minimum(kPaper), -std::log(4.0));
  EXPECT_THROW(well_minimum({1.0, 0.25, 1.0}), NoBoundStates);
}

TEST(Normalize, UnitNormAndConvergence) {
  const QuadratureSpec q;
  testing::ChannelGenerator gen(17);
  for (int i = 0; i < 15; ++i) {
    const MorseChannel ch = gen.next();
    for (int m = 0; m <= std::min(*m_max(ch), 3); ++m) {
      Bound1D s = energy_1d(ch, m);
      const double n = normalize_1d(ch, s, q);
      EXPECT_EQ(s.norm, n);
      Bound1D r = energy_1d(ch, m);
      const double n2 = normalize_1d(ch, r, q.refined());
      EXPECT_LT(std::abs(n2 - n) / n, 1e-8);
      const auto [lo, hi] = wavefunction_support(ch, s, q);
      const double one = integrate(
          [&](double x) { const double v = wavefunction_1d(ch, s, x); return v * v; }, lo, hi, q);
      EXPECT_NEAR(one, 1.0, 1e-8);
    }
  }
}

TEST(Normalize, IgnoresPreviousNormAndScalesInversely) {
  Bound1D s = energy_1d(kPaper, 0);
  const double n = normalize_1d(kPaper, s, {});
  s.norm = 123.0;
  EXPECT_DOUBLE_EQ(normalize_1d(kPaper, s, {}), n);
  const auto [lo, hi] = wavefunction_support(kPaper, energy_1d(kPaper, 0), {});
  Bound1D raw = energy_1d(kPaper, 0);
  const double n7 = l2_normalization([&](double x) { return 7.0 * wavefunction_1d(kPaper, raw, x); },
                                     lo, hi, {});
  EXPECT_NEAR(n7, n / 7.0, 1e-12 * n);
}

TEST(Normalize, SameChannelOrthogonality) {
  testing::ChannelGenerator gen(19);
  const QuadratureSpec q;
  int pairs = 0;
  for (int i = 0; i < 10; ++i) {
    const MorseChannel ch = gen.next();
    const int top = std::min(*m_max(ch), 3);
    for (int a = 0; a <= top; ++a) {
      for (int b = a + 1; b <= top; ++b) {
        Bound1D sa = energy_1d(ch, a), sb = energy_1d(ch, b);
        normalize_1d(ch, sa, q);
        normalize_1d(ch, sb, q);
        const auto [la, ha] = wavefunction_support(ch, sa, q);
        const auto [lb, hb] = wavefunction_support(ch, sb, q);
        const double overlap = integrate(
            [&](double x) { return wavefunction_1d(ch, sa, x) * wavefunction_1d(ch, sb, x); },
            std::min(la, lb), std::max(ha, hb), q);
        EXPECT_LT(std::abs(overlap), 1e-8) << "m=" << a << "," << b;
        ++pairs;
      }
    }
  }
  EXPECT_GT(pairs, 5);
}

}  // namespace
}  // namespace pdm
