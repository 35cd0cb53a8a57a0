#include "pdm/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>
#include <string>
#include <vector>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  double l1;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod_segment(const std::function<double(double)>& f, double lo,
                        double hi) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& nodes = Kronrod::abscissa();
  const auto& kw = Kronrod::weights();
  const auto& gw = Gauss::weights();

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  // Kronrod abscissae are stored for x >= 0; even indices coincide with
  // the Gauss nodes.
  double f0 = f(center);
  double kron = kw[0] * f0;
  double gauss = gw[0] * f0;
  double l1 = kw[0] * std::abs(f0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double dx = half * nodes[i];
    const double fl = f(center - dx);
    const double fr = f(center + dx);
    kron += kw[i] * (fl + fr);
    l1 += kw[i] * (std::abs(fl) + std::abs(fr));
    if (i % 2 == 0) gauss += gw[i / 2] * (fl + fr);
  }
  kron *= half;
  gauss *= half;
  l1 *= half;
  const double err = std::max(std::abs(kron - gauss),
                              4.0 * std::numeric_limits<double>::epsilon() * l1);
  return {lo, hi, kron, err, l1};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  if (!(b > a) || spec.panels < 1) {
    throw InvalidParameter("integrate: need a < b and at least one panel");
  }
  std::priority_queue<Segment> queue;
  const double width = (b - a) / spec.panels;
  for (int p = 0; p < spec.panels; ++p) {
    const double lo = a + p * width;
    const double hi = (p + 1 == spec.panels) ? b : lo + width;
    queue.push(kronrod_segment(f, lo, hi));
  }

  auto totals = [&queue]() {
    // Re-summing from scratch keeps the result independent of the order in
    // which segments were refined.
    std::vector<Segment> items;
    auto copy = queue;
    while (!copy.empty()) {
      items.push_back(copy.top());
      copy.pop();
    }
    std::sort(items.begin(), items.end(),
              [](const Segment& l, const Segment& r) { return l.lo < r.lo; });
    double value = 0.0, error = 0.0, l1 = 0.0;
    for (const Segment& s : items) {
      value += s.value;
      error += s.error;
      l1 += s.l1;
    }
    return std::tuple{value, error, l1};
  };

  double error_sum = 0.0;
  double l1_sum = 0.0;
  {
    auto copy = queue;
    while (!copy.empty()) {
      error_sum += copy.top().error;
      l1_sum += copy.top().l1;
      copy.pop();
    }
  }
  int splits = 0;
  while (error_sum > spec.tolerance * l1_sum && splits < spec.max_subdivisions) {
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    const Segment left = kronrod_segment(f, worst.lo, mid);
    const Segment right = kronrod_segment(f, mid, worst.hi);
    error_sum += left.error + right.error - worst.error;
    l1_sum += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
    ++splits;
  }

  const auto [value, error, l1] = totals();
  if (!std::isfinite(value)) {
    throw QuadratureNotConverged("integrand produced a non-finite value");
  }
  if (error > spec.tolerance * l1) {
    throw QuadratureNotConverged("adaptive quadrature error estimate " +
                                 std::to_string(error) + " exceeds tolerance " +
                                 std::to_string(spec.tolerance * l1));
  }
  return value;
}

double l2_normalization(const std::function<double(double)>& f, double a,
                        double b, const QuadratureSpec& spec) {
  const double mass = integrate(
      [&f](double x) {
        const double v = f(x);
        return v * v;
      },
      a, b, spec);
  if (!(mass > 0.0)) {
    throw QuadratureNotConverged("function has zero L2 norm on the domain");
  }
  return 1.0 / std::sqrt(mass);
}

}  // namespace pdm
