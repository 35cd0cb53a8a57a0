#include "pdm/morse1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

constexpr double kMuTolerance = 1e-12;

void require_support(const MorseChannel& ch) {
  if (!ch.supports_bound_states()) {
    throw NoBoundStates("channel (eta=" + std::to_string(ch.eta) +
                        ", nu=" + std::to_string(ch.nu) +
                        ") has no bound states");
  }
}

double level_gap(const MorseChannel& ch, int m) {
  return std::abs(ch.eta) - ch.alpha * std::sqrt(ch.nu) * (2.0 * m + 1.0);
}

}  // namespace

MorseChannel channel_from_gammas(double gamma_lin, double gamma_quad,
                                 double decay, double hbar) {
  if (!(decay > 0.0) || !(hbar > 0.0)) {
    throw InvalidParameter("channel_from_gammas: decay and hbar must be positive");
  }
  const double scale = 2.0 / (hbar * hbar);
  return {scale * gamma_lin, scale * gamma_quad, decay};
}

std::optional<int> m_max(const MorseChannel& ch) {
  if (!ch.supports_bound_states() || !(ch.alpha > 0.0)) return std::nullopt;
  const double q = std::abs(ch.eta) / (ch.alpha * std::sqrt(ch.nu));
  if (!std::isfinite(q)) return std::nullopt;
  // Estimate from (q - 1) / 2, then settle the strict inequality directly.
  int m = static_cast<int>(std::ceil(0.5 * (q - 1.0))) - 1;
  m = std::max(m, -1);
  while (level_gap(ch, m + 1) > 0.0) ++m;
  while (m >= 0 && !(level_gap(ch, m) > 0.0)) --m;
  if (m < 0) return std::nullopt;
  return m;
}

Bound1D energy_1d(const MorseChannel& ch, int m) {
  require_support(ch);
  const auto top = m_max(ch);
  if (!top) throw NoBoundStates("channel supports no discrete level");
  if (m < 0 || m > *top) {
    throw InvalidLevel("level " + std::to_string(m) + " exceeds m_max=" +
                       std::to_string(*top));
  }
  const double sqrt_nu = std::sqrt(ch.nu);
  const double gap = level_gap(ch, m);
  Bound1D s;
  s.m = m;
  s.epsilon = -gap * gap / (4.0 * ch.nu);
  s.lambda = std::abs(ch.eta) / (2.0 * ch.alpha * sqrt_nu);
  s.mu = gap / (2.0 * ch.alpha * sqrt_nu);  // == sqrt|eps| / alpha
  s.z_scale = 2.0 * sqrt_nu / ch.alpha;
  s.norm = 1.0;
  if (std::abs(s.mu - (s.lambda - m - 0.5)) > kMuTolerance * std::max(1.0, s.lambda)) {
    throw InvalidLevel("mu/lambda consistency violated");
  }
  return s;
}

double laguerre(int n, double a, double z) {
  if (n < 0) throw InvalidParameter("laguerre: degree must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + a - z;
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0 + a - z) * curr - (k - 1.0 + a) * prev) / k;
    prev = curr;
    curr = next;
  }
  return curr;
}

double wavefunction_1d(const MorseChannel& ch, const Bound1D& state, double x) {
  // Product-form exponent: mu log(z_scale) - mu alpha x - z/2, which equals
  // mu log z - z/2. Working with log z keeps the right tail (z -> 0) and the
  // wall (z -> inf) free of overflow until z itself is unrepresentable.
  const double log_z = std::log(state.z_scale) - ch.alpha * x;
  const double z = std::exp(log_z);
  if (!std::isfinite(z) || !std::isfinite(log_z)) {
    throw EvaluationOverflow("wavefunction_1d", x, 0.0);
  }
  const double exponent = state.mu * log_z - 0.5 * z;
  if (exponent < -745.0) return 0.0;
  const double value =
      state.norm * std::exp(exponent) * laguerre(state.m, 2.0 * state.mu, z);
  if (!std::isfinite(value)) throw EvaluationOverflow("wavefunction_1d", x, 0.0);
  return value;
}

double wavefunction_1d_second_derivative(const MorseChannel& ch,
                                         const Bound1D& state, double x) {
  const double e = std::exp(-ch.alpha * x);
  const double u = ch.eta * e + ch.nu * e * e;
  return (u - state.epsilon) * wavefunction_1d(ch, state, x);
}

double well_minimum(const MorseChannel& ch) {
  // d/dx (eta t + nu t^2) = 0 at t = -eta / (2 nu), t = e^{-alpha x}.
  require_support(ch);
  return -std::log(-ch.eta / (2.0 * ch.nu)) / ch.alpha;
}

std::pair<double, double> wavefunction_support(const MorseChannel& ch,
                                               const Bound1D& state,
                                               const QuadratureSpec& quad) {
  const double center = well_minimum(ch);
  const double step = 0.25 / ch.alpha;
  auto density = [&](double x) {
    const double v = wavefunction_1d(ch, state, x);
    return v * v;
  };

  double peak = 0.0;
  // Right-hand decay length 1/(mu alpha) can be long for shallow levels.
  const double right_reach = 40.0 / (state.mu * ch.alpha) + 20.0 / ch.alpha;
  for (double x = center - 10.0 / ch.alpha; x <= center + right_reach; x += step) {
    peak = std::max(peak, density(x));
  }
  const double threshold = quad.tail_fraction * peak;

  // Walk outwards until three consecutive samples sit below the threshold,
  // so isolated nodes of X never end the walk early.
  auto walk = [&](double direction) {
    double x = center;
    int quiet = 0;
    for (int i = 0; i < 200000 && quiet < 3; ++i) {
      x += direction * step;
      quiet = density(x) < threshold ? quiet + 1 : 0;
    }
    return x;
  };
  return {walk(-1.0), walk(+1.0)};
}

double normalize_1d(const MorseChannel& ch, Bound1D& state,
                    const QuadratureSpec& quad) {
  Bound1D raw = state;
  raw.norm = 1.0;
  const auto [lo, hi] = wavefunction_support(ch, raw, quad);
  const double n = l2_normalization(
      [&](double x) { return wavefunction_1d(ch, raw, x); }, lo, hi, quad);
  state.norm = n;
  return n;
}

}  // namespace pdm
