#include "pdm/block_lanczos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

using Matrix = Eigen::MatrixXd;

void apply_block(const SymmetricOperator& apply, const Matrix& in, Matrix& out,
                 std::size_t& matvecs) {
  out.resize(in.rows(), in.cols());
  for (Eigen::Index c = 0; c < in.cols(); ++c) {
    apply(std::span<const double>(in.col(c).data(), in.rows()),
          std::span<double>(out.col(c).data(), out.rows()));
    ++matvecs;
  }
}

// Orthogonalizes the columns of w against basis.leftCols(used) (twice) and
// then among themselves; columns that collapse are dropped.
Matrix orthonormal_extension(const Matrix& basis, Eigen::Index used, Matrix w) {
  for (int pass = 0; pass < 2; ++pass) {
    if (used > 0) {
      w -= basis.leftCols(used) * (basis.leftCols(used).transpose() * w);
    }
  }
  Matrix kept(w.rows(), 0);
  for (Eigen::Index c = 0; c < w.cols(); ++c) {
    Eigen::VectorXd v = w.col(c);
    const double before = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      if (used > 0) v -= basis.leftCols(used) * (basis.leftCols(used).transpose() * v);
      if (kept.cols() > 0) v -= kept * (kept.transpose() * v);
    }
    const double after = v.norm();
    if (after > 1e-10 * std::max(before, 1e-300) && after > 1e-300) {
      kept.conservativeResize(Eigen::NoChange, kept.cols() + 1);
      kept.col(kept.cols() - 1) = v / after;
    }
  }
  return kept;
}

}  // namespace

LanczosResult block_lanczos_lowest(const SymmetricOperator& apply,
                                   std::size_t dim, std::size_t k,
                                   const LanczosOptions& options) {
  if (k == 0 || k > dim) {
    throw GridTooSmall("block_lanczos_lowest: cannot extract " +
                       std::to_string(k) + " eigenvalues from dimension " +
                       std::to_string(dim));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  const Eigen::Index block = static_cast<Eigen::Index>(
      std::min(dim, options.block_size ? options.block_size : k + 2));
  const Eigen::Index keep = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(k) + block);
  const Eigen::Index max_basis = std::min<Eigen::Index>(
      n, std::max<Eigen::Index>(static_cast<Eigen::Index>(options.max_basis),
                                keep + 2 * block));

  LanczosResult result;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Matrix start(n, block);
  for (Eigen::Index c = 0; c < block; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) start(r, c) = uniform(rng);
  }

  Matrix basis(n, max_basis);
  Matrix image(n, max_basis);  // A * basis
  Eigen::Index used = 0;

  auto append = [&](const Matrix& cols) {
    Matrix a;
    apply_block(apply, cols, a, result.matvecs);
    basis.middleCols(used, cols.cols()) = cols;
    image.middleCols(used, cols.cols()) = a;
    used += cols.cols();
  };

  append(orthonormal_extension(basis, 0, start));
  Eigen::Index block_begin = 0;

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    // Grow the block Krylov space from the most recent block.
    while (used < max_basis) {
      const Eigen::Index width = used - block_begin;
      Matrix next = orthonormal_extension(
          basis, used, image.middleCols(block_begin, width));
      if (next.cols() == 0) break;  // invariant subspace reached
      if (used + next.cols() > max_basis) {
        next.conservativeResize(Eigen::NoChange, max_basis - used);
      }
      block_begin = used;
      append(next);
    }

    // Rayleigh-Ritz on the current basis.
    Matrix projected = basis.leftCols(used).transpose() * image.leftCols(used);
    projected = 0.5 * (projected + projected.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(projected);
    if (eig.info() != Eigen::Success) throw NotConverged("Rayleigh-Ritz solve failed");
    const Eigen::Index want = std::min<Eigen::Index>(keep, used);
    const Matrix coeffs = eig.eigenvectors().leftCols(want);
    const Matrix ritz = basis.leftCols(used) * coeffs;
    const Matrix ritz_image = image.leftCols(used) * coeffs;

    bool converged = true;
    result.eigenvalues.assign(k, 0.0);
    result.residual_norms.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const double theta = eig.eigenvalues()(jj);
      const double res = (ritz_image.col(jj) - theta * ritz.col(jj)).norm();
      result.eigenvalues[j] = theta;
      result.residual_norms[j] = res;
      if (res > options.tolerance * std::max(1.0, std::abs(theta))) converged = false;
    }
    result.restarts = restart;
    if (converged || used == n) return result;

    // Thick restart: keep the lowest Ritz vectors and their images, then
    // continue from the Ritz residual block.
    basis.leftCols(want) = ritz;
    image.leftCols(want) = ritz_image;
    used = want;
    Matrix residual = ritz_image - ritz * eig.eigenvalues().head(want).asDiagonal();
    Matrix fresh = orthonormal_extension(basis, used, residual.leftCols(block));
    if (fresh.cols() == 0) return result;
    block_begin = used;
    append(fresh);
  }
  throw NotConverged("block Lanczos did not converge after " +
                     std::to_string(options.max_restarts) + " restarts");
}

}  // namespace pdm
