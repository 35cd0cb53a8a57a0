#include "pdm/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

void check_shape(const SymmetricTridiagonal& t) {
  if (t.diag.empty() || t.off.size() + 1 != t.diag.size()) {
    throw InvalidParameter("tridiagonal matrix has inconsistent dimensions");
  }
}

std::pair<double, double> gershgorin(const SymmetricTridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  const double pad = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return {lo - pad, hi + pad};
}

}  // namespace

std::size_t count_eigenvalues_below(const SymmetricTridiagonal& t, double shift) {
  check_shape(t);
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = t.diag[0] - shift;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == t.size()) break;
    q = t.diag[i + 1] - shift - t.off[i] * t.off[i] / q;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t,
                                       std::size_t k) {
  check_shape(t);
  if (k > t.size()) {
    throw GridTooSmall("requested " + std::to_string(k) + " eigenvalues of a " +
                       std::to_string(t.size()) + "x" + std::to_string(t.size()) +
                       " matrix");
  }
  const auto [glo, ghi] = gershgorin(t);
  std::vector<double> values;
  values.reserve(k);
  double floor = glo;
  for (std::size_t j = 0; j < k; ++j) {
    // Find the smallest x with count(x) > j.
    double lo = floor;
    double hi = ghi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      if (count_eigenvalues_below(t, mid) > j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double value = 0.5 * (lo + hi);
    values.push_back(value);
    floor = lo;
  }
  return values;
}

std::vector<double> tridiagonal_eigenvector(const SymmetricTridiagonal& t,
                                            double eigenvalue) {
  check_shape(t);
  const std::size_t n = t.size();
  const double scale =
      std::max(1.0, std::abs(eigenvalue)) * std::numeric_limits<double>::epsilon();
  const double shift = eigenvalue + 16.0 * scale;

  // Gaussian elimination with partial pivoting on (T - shift). Row i of the
  // upper factor holds columns i, i+1, i+2.
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), lmul(n, 0.0);
  std::vector<bool> swapped(n, false);
  double c0 = t.diag[0] - shift;
  double c1 = n > 1 ? t.off[0] : 0.0;
  double c2 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double r0 = t.off[i];
    const double r1 = t.diag[i + 1] - shift;
    const double r2 = i + 2 < n ? t.off[i + 1] : 0.0;
    if (std::abs(r0) > std::abs(c0)) {
      swapped[i] = true;
      const double m = c0 / r0;
      lmul[i] = m;
      u0[i] = r0;
      u1[i] = r1;
      u2[i] = r2;
      c0 = c1 - m * r1;
      c1 = c2 - m * r2;
    } else {
      if (c0 == 0.0) c0 = scale;
      const double m = r0 / c0;
      lmul[i] = m;
      u0[i] = c0;
      u1[i] = c1;
      u2[i] = c2;
      c0 = r1 - m * c1;
      c1 = r2 - m * c2;
    }
    c2 = 0.0;
  }
  u0[n - 1] = c0 == 0.0 ? scale : c0;

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int sweep = 0; sweep < 4; ++sweep) {
    std::vector<double> b = v;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= lmul[i] * b[i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = b[ii];
      if (ii + 1 < n) s -= u1[ii] * b[ii + 1];
      if (ii + 2 < n) s -= u2[ii] * b[ii + 2];
      b[ii] = s / u0[ii];
    }
    double norm = 0.0;
    for (double x : b) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NotConverged("inverse iteration broke down");
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = b[i] / norm;
  }
  // Fix the sign so the largest component is positive.
  const auto big = std::max_element(v.begin(), v.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  if (*big < 0.0) {
    for (double& x : v) x = -x;
  }
  return v;
}

}  // namespace pdm
