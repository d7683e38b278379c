#include "gpb/serialize.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>

#include "gpb/error.hpp"

namespace gpb {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

Json to_json(const PotentialRealization& potential) {
  Json runs = Json::array();
  const auto v = potential.values();
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i + 1;
    while (j < v.size() && v[j] == v[i]) ++j;
    runs.push_back(Json::array({v[i], j - i}));
    i = j;
  }
  return Json{{"mode", std::string(to_string(potential.mode()))},
              {"p", potential.p()},
              {"b", potential.barrier_height()},
              {"seed", potential.seed()},
              {"values", std::move(runs)}};
}

PotentialRealization realization_from_json(const Json& j) {
  try {
    std::vector<double> values;
    for (const auto& run : j.at("values")) {
      const double value = run.at(0).get<double>();
      const auto count = run.at(1).get<std::size_t>();
      if (count == 0) throw InvalidArgument("run-length count must be positive");
      values.insert(values.end(), count, value);
    }
    return PotentialRealization(
        std::move(values), j.at("b").get<double>(), j.at("p").get<double>(),
        j.at("seed").get<std::uint64_t>(),
        sampling_mode_from_string(j.at("mode").get<std::string>()));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed realization JSON: ") + e.what());
  }
}

void write_csv(std::ostream& out, const PotentialRealization& potential) {
  out << "site,value\n";
  const auto v = potential.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << (i + 1) << ',' << format_number(v[i]) << '\n';
  }
}

Json to_json(const LakeDecomposition& decomposition) {
  Json lakes = Json::array(), barriers = Json::array();
  for (const auto& l : decomposition.lakes) lakes.push_back({l.start, l.length});
  for (const auto& b : decomposition.barriers) barriers.push_back({b.start, b.length});
  return Json{{"total_length", decomposition.total_length},
              {"lakes", std::move(lakes)},
              {"barriers", std::move(barriers)}};
}

Json to_json(const EnergyBreakdown& breakdown) {
  return Json{{"kinetic", breakdown.kinetic},
              {"potential", breakdown.potential},
              {"interaction", breakdown.interaction},
              {"total", breakdown.total}};
}

EnergyBreakdown breakdown_from_json(const Json& j) {
  return {j.at("kinetic").get<double>(), j.at("potential").get<double>(),
          j.at("interaction").get<double>(), j.at("total").get<double>()};
}

Json to_json(const GroundStateResult& result) {
  return Json{{"state", std::vector<double>(result.state.amplitudes().begin(),
                                            result.state.amplitudes().end())},
              {"energy", to_json(result.energy)},
              {"iterations", result.iterations},
              {"residual", result.residual},
              {"converged", result.converged},
              {"initial_energy", result.initial_energy},
              {"newton_steps", result.newton_steps}};
}

Json to_json(const OccupationReport& report) {
  Json j{{"epsilon", report.epsilon},
         {"threshold", report.threshold},
         {"occupied_count", report.occupied_count}};
  j["bound"] = report.bound ? Json(*report.bound) : Json(nullptr);
  j["satisfied"] = report.satisfied ? Json(*report.satisfied) : Json(nullptr);
  return j;
}

Json to_json(const MassAllocation& allocation) {
  return Json{{"masses", allocation.masses},
              {"lambda", allocation.lambda},
              {"cutoff", allocation.cutoff},
              {"bisection_steps", allocation.bisection_steps}};
}

Json to_json(const NormDecomposition& f) {
  return Json{{"barrier", f.barrier},
              {"long", f.long_lakes},
              {"light", f.light},
              {"heavy", f.heavy}};
}

namespace {

constexpr std::array<char, 8> kMagic = {'G', 'P', 'B', 'S', 'T', 'A', 'T', 'E'};

template <typename T>
T to_little_endian(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  } else {
    return value;
  }
}

}  // namespace

void write_state_binary(const std::filesystem::path& path,
                        std::span<const double> amplitudes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  const std::uint64_t count = to_little_endian<std::uint64_t>(amplitudes.size());
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  for (double a : amplitudes) {
    const auto bits = to_little_endian(std::bit_cast<std::uint64_t>(a));
    out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
  if (!out) throw Error("write to " + path.string() + " failed");
}

std::vector<double> read_state_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw InvalidArgument("not a GPBSTATE file");
  std::uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  count = to_little_endian(count);
  std::vector<double> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t bits = 0;
    in.read(reinterpret_cast<char*>(&bits), sizeof bits);
    if (!in) throw InvalidArgument("truncated GPBSTATE file");
    out.push_back(std::bit_cast<double>(to_little_endian(bits)));
  }
  return out;
}

}  // namespace gpb
