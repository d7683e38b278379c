#include "gpb/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gpb/error.hpp"

namespace gpb {

std::string_view to_string(SamplingMode mode) {
  switch (mode) {
    case SamplingMode::fixed_length:
      return "fixed_length";
    case SamplingMode::fixed_interval_count:
      return "fixed_interval_count";
  }
  return "unknown";
}

SamplingMode sampling_mode_from_string(std::string_view name) {
  if (name == "fixed_length") return SamplingMode::fixed_length;
  if (name == "fixed_interval_count") return SamplingMode::fixed_interval_count;
  throw InvalidArgument("unknown sampling mode '" + std::string(name) + "'");
}

namespace {

void check_p_b(double p, double b, bool allow_p_one) {
  const bool p_ok = allow_p_one ? (p > 0.0 && p <= 1.0) : (p > 0.0 && p < 1.0);
  if (!p_ok || !std::isfinite(p)) {
    throw InvalidArgument("p must lie in " +
                          std::string(allow_p_one ? "(0, 1]" : "(0, 1)") +
                          ", got " + std::to_string(p));
  }
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw InvalidArgument("barrier height b must be positive, got " +
                          std::to_string(b));
  }
}

}  // namespace

PotentialRealization::PotentialRealization(std::vector<double> values, double b,
                                           double p, std::uint64_t seed,
                                           SamplingMode mode)
    : values_(std::move(values)), b_(b), p_(p), seed_(seed), mode_(mode) {
  check_p_b(p, b, true);
  if (values_.empty()) throw InvalidArgument("potential must have >= 1 site");
  for (double v : values_) {
    if (v != 0.0 && v != b_) {
      throw InvalidArgument("site potential must be exactly 0 or b");
    }
  }
}

PotentialRealization PotentialRealization::segment(std::size_t first,
                                                   std::size_t count) const {
  if (count == 0 || first + count > values_.size()) {
    throw InvalidArgument("segment out of range");
  }
  std::vector<double> part(values_.begin() + static_cast<std::ptrdiff_t>(first),
                           values_.begin() +
                               static_cast<std::ptrdiff_t>(first + count));
  return PotentialRealization(std::move(part), b_, p_, seed_, mode_);
}

std::vector<double> PotentialRealization::shifted(double offset) const {
  std::vector<double> out(values_);
  for (double& v : out) v += offset;
  return out;
}

std::vector<std::size_t> LakeDecomposition::lake_lengths() const {
  std::vector<std::size_t> out;
  out.reserve(lakes.size());
  for (const auto& lake : lakes) out.push_back(lake.length);
  return out;
}

double unit_interval_open_left(std::uint64_t bits) {
  // (k + 1) / 2^53 for k in [0, 2^53): never 0, may be exactly 1.
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

std::size_t geometric_from_uniform(double u, double r) {
  if (r <= 0.0) return 1;
  const double k = std::floor(std::log(u) / std::log(r));
  return 1 + static_cast<std::size_t>(k);
}

PotentialRealization sample_fixed_length(std::size_t length, double p, double b,
                                         std::uint64_t seed) {
  check_p_b(p, b, true);
  if (length == 0) throw InvalidArgument("L must be >= 1");
  std::mt19937_64 engine(seed);
  std::vector<double> values(length);
  for (auto& v : values) {
    // u in (0,1]; zero potential when u <= p, which has probability p.
    v = unit_interval_open_left(engine()) <= p ? 0.0 : b;
  }
  return PotentialRealization(std::move(values), b, p, seed,
                              SamplingMode::fixed_length);
}

PotentialRealization sample_fixed_interval_count(std::size_t n, double p,
                                                 double b, std::uint64_t seed) {
  check_p_b(p, b, false);
  if (n == 0) throw InvalidArgument("n must be >= 1");
  const double q = 1.0 - p;
  std::mt19937_64 engine(seed);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(static_cast<double>(n) / (p * q)));
  for (std::size_t i = 0; i < n; ++i) {
    const auto lake = geometric_from_uniform(unit_interval_open_left(engine()), p);
    const auto barrier =
        geometric_from_uniform(unit_interval_open_left(engine()), q);
    values.insert(values.end(), lake, 0.0);
    values.insert(values.end(), barrier, b);
  }
  return PotentialRealization(std::move(values), b, p, seed,
                              SamplingMode::fixed_interval_count);
}

LakeDecomposition decompose_lakes(const PotentialRealization& potential) {
  LakeDecomposition out;
  const auto v = potential.values();
  out.total_length = v.size();
  std::size_t start = 0;
  while (start < v.size()) {
    const bool lake = v[start] == 0.0;
    std::size_t end = start + 1;
    while (end < v.size() && (v[end] == 0.0) == lake) ++end;
    (lake ? out.lakes : out.barriers).push_back({start, end - start});
    start = end;
  }
  return out;
}

std::vector<double> reconstruct_values(const LakeDecomposition& decomposition,
                                       double b) {
  std::vector<double> out(decomposition.total_length, -1.0);
  for (const auto& lake : decomposition.lakes) {
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(lake.start),
                lake.length, 0.0);
  }
  for (const auto& barrier : decomposition.barriers) {
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(barrier.start),
                barrier.length, b);
  }
  return out;
}

double expected_mass_above(double x, double p, std::size_t n) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p must lie in (0, 1)");
  if (!(x >= 0.0)) throw InvalidArgument("x must be nonnegative");
  if (std::isinf(x)) return 0.0;
  const double q = 1.0 - p;
  const double k = std::floor(x);
  const double tail = std::pow(p, k + 1.0);
  return static_cast<double>(n) / (p * q) * (k * q * tail + tail);
}

}  // namespace gpb
