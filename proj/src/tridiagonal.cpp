#include "gpb/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpb/energy.hpp"
#include "gpb/error.hpp"

namespace gpb {

SymTridiagonal SymTridiagonal::schrodinger(std::span<const double> potential) {
  SymTridiagonal a;
  a.diag.resize(potential.size());
  for (std::size_t i = 0; i < potential.size(); ++i) {
    a.diag[i] = 2.0 + potential[i];
  }
  a.off.assign(potential.empty() ? 0 : potential.size() - 1, -1.0);
  return a;
}

std::vector<double> SymTridiagonal::multiply(std::span<const double> x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += off[i - 1] * x[i - 1];
    if (i + 1 < n) v += off[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

std::optional<std::vector<double>> solve(const SymTridiagonal& a,
                                         std::span<const double> rhs) {
  const std::size_t n = a.size();
  if (rhs.size() != n) throw DimensionMismatch("tridiagonal solve size");
  if (n == 0) return std::vector<double>{};
  // Forward sweep: pivots d_i and multipliers l_i = off_i / d_i.
  std::vector<double> pivot(n), x(rhs.begin(), rhs.end());
  pivot[0] = a.diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (pivot[i - 1] == 0.0) return std::nullopt;
    const double l = a.off[i - 1] / pivot[i - 1];
    pivot[i] = a.diag[i] - l * a.off[i - 1];
    x[i] -= l * x[i - 1];
  }
  if (pivot[n - 1] == 0.0) return std::nullopt;
  x[n - 1] /= pivot[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (x[i] - a.off[i] * x[i + 1]) / pivot[i];
  }
  for (double v : x) {
    if (!std::isfinite(v)) return std::nullopt;
  }
  return x;
}

std::size_t count_eigenvalues_below(const SymTridiagonal& a, double shift) {
  constexpr double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double coupling = i > 0 ? a.off[i - 1] * a.off[i - 1] / d : 0.0;
    d = a.diag[i] - shift - coupling;
    if (d == 0.0) d = -tiny;
    if (d < 0.0) ++count;
  }
  return count;
}

Eigenpair smallest_eigenpair(const SymTridiagonal& a) {
  const std::size_t n = a.size();
  if (n == 0) throw InvalidArgument("empty matrix");
  // Gershgorin bracket.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(a.off[i - 1]) : 0.0) +
                     (i + 1 < n ? std::abs(a.off[i]) : 0.0);
    lo = std::min(lo, a.diag[i] - r);
    hi = std::max(hi, a.diag[i] + r);
  }
  // Invariant: count(lo) == 0, count(hi) >= 1.
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_eigenvalues_below(a, mid) == 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Eigenpair out;
  out.value = lo;

  // Inverse iteration just below the eigenvalue keeps the shifted matrix
  // positive definite.
  SymTridiagonal shifted = a;
  const double scale = std::max(1.0, std::abs(lo));
  const double shift = lo - 64.0 * std::numeric_limits<double>::epsilon() * scale;
  for (double& d : shifted.diag) d -= shift;
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int iter = 0; iter < 4; ++iter) {
    auto next = solve(shifted, v);
    if (!next) throw NumericalFailure("inverse iteration breakdown");
    const double norm = euclidean_norm(*next);
    for (double& x : *next) x /= norm;
    v = std::move(*next);
  }
  CompensatedSum sum;
  for (double x : v) sum.add(x);
  if (sum.value() < 0.0) {
    for (double& x : v) x = -x;
  }
  out.vector = std::move(v);
  return out;
}

}  // namespace gpb
