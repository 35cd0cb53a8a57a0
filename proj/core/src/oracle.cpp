#include "pdm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pdm/effective_potential.hpp"
#include "pdm/errors.hpp"
#include "pdm/tridiagonal.hpp"

namespace pdm {

EnergyWindow::EnergyWindow(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo < hi)) {
    throw InvalidParameter("energy window needs lo < hi (got lo=" +
                           std::to_string(lo) + ", hi=" + std::to_string(hi) +
                           ")");
  }
}

Grid1D::Grid1D(double x0, double x1, int n) : x0_(x0), x1_(x1), n_(n) {
  if (!(x0 < x1)) throw InvalidParameter("grid needs x0 < x1");
  if (n < kMinNodes) {
    throw InvalidParameter("grid needs at least " + std::to_string(kMinNodes) +
                           " nodes");
  }
}

namespace {

SymmetricTridiagonal build_operator(const Potential1D& potential,
                                    const Grid1D& grid) {
  const int interior = grid.n() - 2;
  const double h = grid.step();
  const double inv_h2 = 1.0 / (h * h);
  SymmetricTridiagonal t;
  t.diag.resize(interior);
  t.off.assign(interior - 1, -inv_h2);
  for (int i = 0; i < interior; ++i) {
    const double x = grid.node(i + 1);
    const double u = potential(x);
    if (!std::isfinite(u)) throw EvaluationOverflow("fd potential", x, 0.0);
    t.diag[i] = 2.0 * inv_h2 + u;
  }
  return t;
}

std::vector<double> axis_levels(const Potential1D& potential, const Grid1D& grid,
                                int k) {
  if (k < 1 || k > grid.n() - 2) {
    throw GridTooSmall("grid with " + std::to_string(grid.n()) +
                       " nodes cannot resolve " + std::to_string(k) + " levels");
  }
  return lowest_eigenvalues(build_operator(potential, grid),
                            static_cast<std::size_t>(k));
}

}  // namespace

EigenResult fd_eigen_1d(const Potential1D& potential, const Grid1D& grid, int k,
                        bool with_vectors) {
  if (k < 1) throw InvalidParameter("fd_eigen_1d: k must be >= 1");
  if (k > grid.n() - 2) {
    throw GridTooSmall("grid with " + std::to_string(grid.n()) +
                       " nodes cannot resolve " + std::to_string(k) + " levels");
  }
  const SymmetricTridiagonal t = build_operator(potential, grid);
  EigenResult r{lowest_eigenvalues(t, static_cast<std::size_t>(k)), {}, grid,
                {grid.step(), 0.0}, false};
  if (with_vectors) {
    for (double lambda : r.eigenvalues) {
      r.eigenvectors.push_back(tridiagonal_eigenvector(t, lambda));
    }
  }
  const double top = r.eigenvalues.back();
  r.boundary_limited =
      potential(grid.x0()) < top || potential(grid.x1()) < top;
  return r;
}

EigenResult fd_eigen_2d(const Potential2D& potential, const Grid2D& grid, int k,
                        const LanczosOptions& options) {
  const int nx = grid.x.n() - 2;
  const int ny = grid.y.n() - 2;
  const std::size_t dim = static_cast<std::size_t>(nx) * ny;
  if (k < 1 || static_cast<std::size_t>(k) > dim) {
    throw GridTooSmall("2D grid cannot resolve " + std::to_string(k) + " levels");
  }
  const double cx = 1.0 / (grid.x.step() * grid.x.step());
  const double cy = 1.0 / (grid.y.step() * grid.y.step());

  std::vector<double> diag(dim);
  for (int j = 0; j < ny; ++j) {
    const double y = grid.y.node(j + 1);
    for (int i = 0; i < nx; ++i) {
      const double x = grid.x.node(i + 1);
      const double u = potential(x, y);
      if (!std::isfinite(u)) throw EvaluationOverflow("fd potential", x, y);
      diag[static_cast<std::size_t>(j) * nx + i] = 2.0 * cx + 2.0 * cy + u;
    }
  }
  // Row-major over y, x fastest.
  const SymmetricOperator apply = [&](std::span<const double> in,
                                      std::span<double> out) {
    for (int j = 0; j < ny; ++j) {
      const std::size_t row = static_cast<std::size_t>(j) * nx;
      for (int i = 0; i < nx; ++i) {
        const std::size_t p = row + i;
        double acc = diag[p] * in[p];
        if (i > 0) acc -= cx * in[p - 1];
        if (i + 1 < nx) acc -= cx * in[p + 1];
        if (j > 0) acc -= cy * in[p - nx];
        if (j + 1 < ny) acc -= cy * in[p + nx];
        out[p] = acc;
      }
    }
  };
  LanczosResult lr =
      block_lanczos_lowest(apply, dim, static_cast<std::size_t>(k), options);
  EigenResult r{std::move(lr.eigenvalues), {}, grid,
                {grid.x.step(), grid.y.step()}, false};
  return r;
}

std::vector<LabeledLevel> separable_levels(const SeparablePotential& potential,
                                           const Grid2D& grid, int kx, int ky) {
  const std::vector<double> lx = axis_levels(potential.x, grid.x, kx);
  const std::vector<double> ly = axis_levels(potential.y, grid.y, ky);
  std::vector<LabeledLevel> levels;
  levels.reserve(lx.size() * ly.size());
  for (int m = 0; m < kx; ++m) {
    for (int n = 0; n < ky; ++n) levels.push_back({m, n, lx[m] + ly[n]});
  }
  std::sort(levels.begin(), levels.end(),
            [](const LabeledLevel& a, const LabeledLevel& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.m != b.m) return a.m < b.m;
              return a.n < b.n;
            });
  return levels;
}

EigenResult fd_eigen_2d(const SeparablePotential& potential, const Grid2D& grid,
                        int k) {
  if (k < 1) throw InvalidParameter("fd_eigen_2d: k must be >= 1");
  // The lowest k sums only involve the lowest k levels of each axis.
  const int kx = std::min(k, grid.x.n() - 2);
  const int ky = std::min(k, grid.y.n() - 2);
  if (static_cast<long>(kx) * ky < k) {
    throw GridTooSmall("2D grid cannot resolve " + std::to_string(k) + " levels");
  }
  const auto levels = separable_levels(potential, grid, kx, ky);
  EigenResult r{{}, {}, grid, {grid.x.step(), grid.y.step()}, false};
  for (int i = 0; i < k; ++i) r.eigenvalues.push_back(levels[i].value);
  return r;
}

std::pair<double, double> morse_domain(double eta, double nu, double alpha,
                                       double depth) {
  if (!(nu > 0.0) || !(eta < 0.0) || !(alpha > 0.0)) {
    throw NoBoundStates("morse_domain: channel has no well");
  }
  if (!(depth > 0.0)) depth = eta * eta / (4.0 * nu);
  // nu t^2 + eta t = wall with t = e^{-alpha x}. Beyond 50 depth the wall
  // must also be tall enough that the WKB decay under it, roughly
  // sqrt(U)/alpha, reaches 40; shallow wells otherwise leak into it.
  const double wall = std::max(50.0 * depth, 1600.0 * alpha * alpha);
  const double t = (-eta + std::sqrt(eta * eta + 4.0 * nu * wall)) / (2.0 * nu);
  const double left = -std::log(t) / alpha;
  const double right = std::log(-eta / (1e-10 * depth)) / alpha;
  return {left, right};
}

MorseLevels fd_morse_levels(double eta, double nu, double alpha, double rel_tol,
                            int start_nodes, int max_nodes) {
  const auto [left, right] = morse_domain(eta, nu, alpha);
  const Potential1D u = [=](double x) {
    const double e = std::exp(-alpha * x);
    return eta * e + nu * e * e;
  };
  auto solve = [&](const Grid1D& g) {
    const SymmetricTridiagonal t = build_operator(u, g);
    const std::size_t bound = count_eigenvalues_below(t, 0.0);
    return bound == 0 ? std::vector<double>{} : lowest_eigenvalues(t, bound);
  };

  // The potential-based right end can cut off a weakly bound top level,
  // whose tail decays only like e^{-kappa x}. Widen (same step) until the
  // estimated tail is below e^{-20} at the boundary.
  const double well = -std::log(-eta / (2.0 * nu)) / alpha;
  auto widened = [&](const Grid1D& g, const std::vector<double>& levels) {
    if (levels.empty()) return g;
    const double need = well + 20.0 / std::sqrt(-levels.back());
    if (need <= g.x1()) return g;
    const int n = static_cast<int>(std::ceil((need - g.x0()) / g.step())) + 1;
    if (n > max_nodes) throw NotConverged("fd_morse_levels: node budget exhausted");
    return Grid1D(g.x0(), g.x0() + (n - 1) * g.step(), n);
  };

  Grid1D grid(left, right, start_nodes);
  // A weakly bound level may not fit in the box at all: double the span
  // (same step) while that still uncovers new negative eigenvalues.
  for (int k = 0; k < 8; ++k) {
    const int n = 2 * grid.n() - 1;
    if (n > max_nodes) break;
    const Grid1D wide(grid.x0(), grid.x0() + (n - 1) * grid.step(), n);
    if (count_eigenvalues_below(build_operator(u, wide), 0.0) <=
        count_eigenvalues_below(build_operator(u, grid), 0.0)) {
      break;
    }
    grid = wide;
  }
  std::vector<double> coarse = solve(grid);
  for (Grid1D wide = widened(grid, coarse); !(wide == grid); wide = widened(grid, coarse)) {
    grid = wide;
    coarse = solve(grid);
  }
  while (true) {
    if (grid.n() * 2 - 1 > max_nodes) {
      throw NotConverged("fd_morse_levels: node budget exhausted");
    }
    const Grid1D finer = grid.halved();
    std::vector<double> fine = solve(finer);
    double change = 0.0;
    if (fine.size() == coarse.size()) {
      for (std::size_t i = 0; i < fine.size(); ++i) {
        change = std::max(change, std::abs(fine[i] - coarse[i]) / std::abs(fine[i]));
      }
    } else {
      change = std::numeric_limits<double>::infinity();
    }
    grid = finer;
    coarse = std::move(fine);
    if (change < rel_tol) return {std::move(coarse), grid, change};
  }
}

double oracle_energy_2d(const Model& model, int m, int n,
                        const EnergyWindow& window, const Grid2D& grid,
                        const OracleOptions& options) {
  if (m < 0 || n < 0) throw InvalidParameter("oracle_energy_2d: negative level");
  const double scale = 2.0 / (model.hbar() * model.hbar());
  const double a1 = model.mass().a1;
  const double a2 = model.mass().a2;

  struct Sample {
    double g;
    bool bound;
  };
  auto evaluate = [&](double e) -> Sample {
    const GammaSet gs = gammas_at(model, e);
    const Potential1D ux = [&](double x) {
      const double t = std::exp(-a1 * x);
      return scale * (gs.gamma1 * t + gs.gamma2 * t * t);
    };
    const Potential1D uy = [&](double y) {
      const double t = std::exp(-a2 * y);
      return scale * (gs.gamma3 * t + gs.gamma4 * t * t);
    };
    const double lx = axis_levels(ux, grid.x, m + 1)[m];
    const double ly = axis_levels(uy, grid.y, n + 1)[n];
    return {lx + ly - epsilon_of(model, e), lx < 0.0 && ly < 0.0};
  };

  const int points = std::max(options.scan_points, 2);
  double prev_e = window.lo;
  Sample prev = evaluate(prev_e);
  for (int i = 1; i <= points; ++i) {
    const double e = window.lo + (window.hi - window.lo) * i / points;
    const Sample cur = evaluate(e);
    const bool sign_change = (prev.g <= 0.0) != (cur.g <= 0.0);
    if (sign_change && (prev.bound || cur.bound)) {
      double lo = prev_e, hi = e;
      double glo = prev.g;
      while (hi - lo > options.tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double gm = evaluate(mid).g;
        if ((gm <= 0.0) == (glo <= 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev_e = e;
    prev = cur;
  }
  throw NoBracket("oracle_energy_2d: no bound sign change for level (" +
                  std::to_string(m) + "," + std::to_string(n) + ") in [" +
                  std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                  "]");
}

Grid2D oracle_grid(const Model& model, const EnergyWindow& window, int nodes) {
  const double scale = 2.0 / (model.hbar() * model.hbar());
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  bool any = false;
  for (double e : {window.lo, window.hi}) {
    const GammaSet g = gammas_at(model, e);
    const double ex = scale * g.gamma1, nx = scale * g.gamma2;
    const double ey = scale * g.gamma3, ny = scale * g.gamma4;
    if (ex < 0.0 && nx > 0.0 && ey < 0.0 && ny > 0.0) {
      const auto [l1, r1] = morse_domain(ex, nx, model.mass().a1);
      const auto [l2, r2] = morse_domain(ey, ny, model.mass().a2);
      x_lo = std::min(x_lo, l1);
      x_hi = std::max(x_hi, r1);
      y_lo = std::min(y_lo, l2);
      y_hi = std::max(y_hi, r2);
      any = true;
    }
  }
  if (!any) throw NoBoundStates("oracle_grid: no well at either window end");
  return {Grid1D(x_lo, x_hi, nodes), Grid1D(y_lo, y_hi, nodes)};
}

namespace {

constexpr double kGolden = 0.6180339887498949;

template <typename F>
double golden_minimize(F&& f, double lo, double hi, int iterations = 200) {
  double a = lo, b = hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace

PotentialMinimum minimize_potential(const Model& model) {
  const double a1 = model.mass().a1;
  const double a2 = model.mass().a2;
  const double x_lo = -12.0 / a1, x_hi = 30.0 / a1;
  const double y_lo = -12.0 / a2, y_hi = 30.0 / a2;
  constexpr int kScan = 241;
  const double sx = (x_hi - x_lo) / (kScan - 1);
  const double sy = (y_hi - y_lo) / (kScan - 1);

  auto v = [&](double x, double y) { return potential_at(model, x, y); };

  int bi = 0, bj = 0;
  double best = std::numeric_limits<double>::infinity();
  double worst = -best;
  for (int i = 0; i < kScan; ++i) {
    for (int j = 0; j < kScan; ++j) {
      const double val = v(x_lo + i * sx, y_lo + j * sy);
      worst = std::max(worst, val);
      if (val < best) {
        best = val;
        bi = i;
        bj = j;
      }
    }
  }
  const double flat_tol = 1e-13 * (1.0 + std::abs(best));
  if (worst - best <= flat_tol) {
    // Constant surface: every point is a minimizer; report the origin.
    return {0.0, 0.0, v(0.0, 0.0), 0.0};
  }
  if (bi == 0 || bj == 0 || bi == kScan - 1 || bj == kScan - 1) {
    throw Unbounded(x_lo + bi * sx, y_lo + bj * sy, best);
  }

  double x = x_lo + bi * sx;
  double y = y_lo + bj * sy;
  for (int sweep = 0; sweep < 500; ++sweep) {
    const double nx = golden_minimize([&](double t) { return v(t, y); },
                                      x - 2.0 * sx, x + 2.0 * sx);
    const double ny = golden_minimize([&](double t) { return v(nx, t); },
                                      y - 2.0 * sy, y + 2.0 * sy);
    const double move = std::hypot(nx - x, ny - y);
    x = nx;
    y = ny;
    if (move < 1e-12) break;
  }

  // Newton polish on central differences; golden section alone stalls at
  // ~sqrt(eps) in position.
  auto gradient = [&](double px, double py) {
    const double h = 1e-5;
    return std::pair{(v(px + h, py) - v(px - h, py)) / (2 * h),
                     (v(px, py + h) - v(px, py - h)) / (2 * h)};
  };
  auto [gx, gy] = gradient(x, y);
  for (int it = 0; it < 8; ++it) {
    const double h = 1e-4;
    const double f0 = v(x, y);
    const double hxx = (v(x + h, y) - 2 * f0 + v(x - h, y)) / (h * h);
    const double hyy = (v(x, y + h) - 2 * f0 + v(x, y - h)) / (h * h);
    const double hxy = (v(x + h, y + h) - v(x + h, y - h) - v(x - h, y + h) +
                        v(x - h, y - h)) / (4 * h * h);
    const double det = hxx * hyy - hxy * hxy;
    if (!(det > 0.0) || !(hxx > 0.0)) break;
    const double dx = -(hyy * gx - hxy * gy) / det;
    const double dy = -(-hxy * gx + hxx * gy) / det;
    const auto [ngx, ngy] = gradient(x + dx, y + dy);
    if (std::hypot(ngx, ngy) >= std::hypot(gx, gy)) break;
    x += dx;
    y += dy;
    gx = ngx;
    gy = ngy;
  }
  return {x, y, v(x, y), std::hypot(gx, gy)};
}

}  // namespace pdm
