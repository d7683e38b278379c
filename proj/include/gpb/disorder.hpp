#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gpb {

enum class SamplingMode { fixed_length, fixed_interval_count };

std::string_view to_string(SamplingMode mode);
SamplingMode sampling_mode_from_string(std::string_view name);

/// A Bernoulli potential on the interior sites 1..L of a lattice with
/// Dirichlet walls at 0 and L+1. Site i of the lattice is values()[i-1].
///
/// Every entry is exactly 0 or exactly b. Immutable once built.
class PotentialRealization {
 public:
  /// Validates the invariants; throws InvalidArgument on violation.
  PotentialRealization(std::vector<double> values, double b, double p,
                       std::uint64_t seed, SamplingMode mode);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double barrier_height() const { return b_; }
  double p() const { return p_; }
  double q() const { return 1.0 - p_; }
  std::uint64_t seed() const { return seed_; }
  SamplingMode mode() const { return mode_; }

  /// Copy of sites [first, first+count) keeping provenance.
  PotentialRealization segment(std::size_t first, std::size_t count) const;

  /// Same lattice with every site shifted by `offset`. The result no longer
  /// satisfies the {0, b} invariant, so it is returned as raw site values.
  std::vector<double> shifted(double offset) const;

  friend bool operator==(const PotentialRealization&,
                         const PotentialRealization&) = default;

 private:
  std::vector<double> values_;
  double b_;
  double p_;
  std::uint64_t seed_;
  SamplingMode mode_;
};

struct Interval {
  std::size_t start = 0;
  std::size_t length = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Maximal runs of zero sites ("lakes") and of b sites ("barriers").
struct LakeDecomposition {
  std::vector<Interval> lakes;
  std::vector<Interval> barriers;
  std::size_t total_length = 0;

  std::vector<std::size_t> lake_lengths() const;
  friend bool operator==(const LakeDecomposition&,
                         const LakeDecomposition&) = default;
};

/// L IID sites, each 0 with probability p and b otherwise. p = 1 is
/// accepted and yields the disorder-free lattice. Sites are drawn in order
/// from one mt19937_64 stream keyed by `seed`, so a realization of length L
/// is a prefix of the one of length 2L with the same seed.
PotentialRealization sample_fixed_length(std::size_t length, double p,
                                         double b, std::uint64_t seed);

/// n geometric lakes (P[L_i = x] = q p^(x-1)) alternating with n geometric
/// barriers (P[L~_i = x] = p q^(x-1)), starting with a lake and ending with
/// a barrier.
PotentialRealization sample_fixed_interval_count(std::size_t n, double p,
                                                 double b, std::uint64_t seed);

LakeDecomposition decompose_lakes(const PotentialRealization& potential);

/// Inverse of decompose_lakes given the barrier height.
std::vector<double> reconstruct_values(const LakeDecomposition& decomposition,
                                       double b);

/// E[ sum_{L_i > x} L_i ] over n geometric lakes:
/// (n/(pq)) * (floor(x) q p^(floor(x)+1) + p^(floor(x)+1)).
double expected_mass_above(double x, double p, std::size_t n);

/// Inverse-CDF draw from P[X = k] = (1-r) r^(k-1), k >= 1, given u in (0,1].
std::size_t geometric_from_uniform(double u, double r);

/// 53-bit uniform in (0, 1] from a raw 64-bit generator output.
double unit_interval_open_left(std::uint64_t bits);

}  // namespace gpb
