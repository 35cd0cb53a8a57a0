#pragma once

#include <cstddef>
#include <vector>

namespace pdm {

/// Real symmetric tridiagonal matrix: diag has n entries, off has n - 1.
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly below `shift` (Sturm sequence count).
std::size_t count_eigenvalues_below(const SymmetricTridiagonal& t, double shift);

/// The `k` smallest eigenvalues in ascending order, each bisected until its
/// bracket cannot be split further in double precision.
std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t,
                                       std::size_t k);

/// Unit eigenvector for an eigenvalue computed by lowest_eigenvalues, by
/// inverse iteration with a partially pivoted tridiagonal solve.
std::vector<double> tridiagonal_eigenvector(const SymmetricTridiagonal& t,
                                            double eigenvalue);

}  // namespace pdm
