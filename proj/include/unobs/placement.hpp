#pragma once

#include <optional>
#include <vector>

#include "unobs/augmented_cuts.hpp"

namespace unobs {

enum class PmuModel {
  VoltageOnly = 1,               ///< a PMU observes its own bus
  VoltageAndBranchCurrents = 2,  ///< a PMU observes its closed neighborhood
};

/// Accepts 1 or 2; throws InputError otherwise.
PmuModel pmu_model_from_int(int model);

/// M under model 1, N[M] under model 2.
BusSet normalize_pmu_model(const Grid& grid, const BusSet& pmus, PmuModel model);

struct PlacementStep {
  int m = 0;
  BusId bus_added = 0;
  ExtendedInt min_sparsity = ExtendedInt::infinity();
  int max_impact_sparsest = 0;
  int max_impact_all = 0;
  BusSet pmus;
  BusSet effective;
  /// Greatest-impact minimum vulnerable cut that the next PMU targets.
  std::optional<VertexCutWitness> chosen_cut;
};

struct PlacementTrace {
  std::vector<PlacementStep> steps;
  bool budget_exhausted = false;
  BusSet final_pmus;
};

/// Greedy placement: seed at the first declared bus (or `first_bus`), then
/// repeatedly attack the greatest-impact minimum vulnerable cut C by placing
/// the candidate that minimizes the resulting |N[M_eff^c]|. Candidates are
/// S(C) ∪ C under model 2 and S(C) under model 1, where a PMU on C would leave
/// C separating. Ties resolve to the smaller cut, then the smaller bus id.
PlacementTrace greedy_place(const Grid& grid, const BusSet& unalterable, PmuModel model, int max_pmus,
                            std::optional<BusId> first_bus = std::nullopt);

}  // namespace unobs
