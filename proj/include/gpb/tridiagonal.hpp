#pragma once

#include <optional>
#include <span>
#include <vector>

namespace gpb {

/// Symmetric tridiagonal matrix stored as its diagonal and the n-1 entries
/// just above it.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }

  /// -Laplacian (Dirichlet) + diag(potential).
  static SymTridiagonal schrodinger(std::span<const double> potential);

  std::vector<double> multiply(std::span<const double> x) const;
};

/// Solves A x = rhs by LDL^T without pivoting. Returns nullopt when a pivot
/// vanishes or the result is not finite.
std::optional<std::vector<double>> solve(const SymTridiagonal& a,
                                         std::span<const double> rhs);

/// Number of eigenvalues strictly below `shift` (Sturm sequence).
std::size_t count_eigenvalues_below(const SymTridiagonal& a, double shift);

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;
};

/// Smallest eigenvalue by bisection on the Sturm count, eigenvector by
/// inverse iteration, unit norm, sign chosen so the entry sum is >= 0.
Eigenpair smallest_eigenpair(const SymTridiagonal& a);

}  // namespace gpb
