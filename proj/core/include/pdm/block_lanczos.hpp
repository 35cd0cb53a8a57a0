#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pdm {

/// y = A x for a real symmetric operator of dimension `dim`.
using SymmetricOperator =
    std::function<void(std::span<const double> x, std::span<double> y)>;

struct LanczosOptions {
  /// Block width; 0 selects k + 2 so that degenerate pairs are resolved.
  std::size_t block_size = 0;
  /// Basis columns kept before a thick restart.
  std::size_t max_basis = 360;
  int max_restarts = 400;
  /// Convergence when ||A y - theta y|| <= tolerance * max(1, |theta|).
  double tolerance = 1e-9;
  std::uint64_t seed = 0x5eedULL;
};

struct LanczosResult {
  std::vector<double> eigenvalues;
  std::vector<double> residual_norms;
  int restarts = 0;
  std::size_t matvecs = 0;
};

/// Lowest `k` eigenvalues by thick-restarted block Lanczos with full
/// reorthogonalization. Throws NotConverged when max_restarts is exhausted.
LanczosResult block_lanczos_lowest(const SymmetricOperator& apply,
                                   std::size_t dim, std::size_t k,
                                   const LanczosOptions& options = {});

}  // namespace pdm
