#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "unobs/attack.hpp"
#include "unobs/placement.hpp"
#include "unobs/structural_rank.hpp"

namespace unobs {

/// Inputs that determine a report, embedded in every JSON document.
struct Provenance {
  std::string input_sha256;
  std::optional<std::uint64_t> seed;
  std::optional<std::pair<double, double>> reactance_range;
  std::optional<double> tolerance;  ///< absolute override, if any
  int model = 1;
};

/// Integer, or the string "inf".
nlohmann::ordered_json to_json(ExtendedInt value);
nlohmann::ordered_json to_json(const Provenance& provenance);

nlohmann::ordered_json attack_report_json(const Grid& grid, const AttackSet& attacks, const Provenance& provenance);

std::string trace_csv(const PlacementTrace& trace);
nlohmann::ordered_json trace_json(const Grid& grid, const PlacementTrace& trace, const Provenance& provenance);

nlohmann::ordered_json verdict_json(const FeasibilityVerdict& verdict, const Provenance& provenance);

}  // namespace unobs
