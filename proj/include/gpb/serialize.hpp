#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gpb/analysis.hpp"
#include "gpb/disorder.hpp"
#include "gpb/energy.hpp"
#include "gpb/solver.hpp"
#include "gpb/variational.hpp"
#include "json.hpp"

namespace gpb {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal form of a double ("nan", "inf" for
/// non-finite values).
std::string format_number(double value);

// Realizations: {mode, p, b, seed, values: [[value, count], ...]}.
Json to_json(const PotentialRealization& potential);
PotentialRealization realization_from_json(const Json& j);
/// "site,value" header then one line per site, sites numbered from 1.
void write_csv(std::ostream& out, const PotentialRealization& potential);

Json to_json(const LakeDecomposition& decomposition);
Json to_json(const EnergyBreakdown& breakdown);
EnergyBreakdown breakdown_from_json(const Json& j);
Json to_json(const GroundStateResult& result);
Json to_json(const OccupationReport& report);
Json to_json(const MassAllocation& allocation);
Json to_json(const NormDecomposition& fractions);

/// Binary state file: the 8 bytes "GPBSTATE", a little-endian uint64 count,
/// then count little-endian IEEE-754 float64 amplitudes.
void write_state_binary(const std::filesystem::path& path,
                        std::span<const double> amplitudes);
std::vector<double> read_state_binary(const std::filesystem::path& path);

}  // namespace gpb
