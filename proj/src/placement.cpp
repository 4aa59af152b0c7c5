#include "unobs/placement.hpp"

#include <algorithm>

namespace unobs {

PmuModel pmu_model_from_int(int model) {
  if (model == 1) return PmuModel::VoltageOnly;
  if (model == 2) return PmuModel::VoltageAndBranchCurrents;
  throw InputError("PMU model must be 1 or 2, got " + std::to_string(model));
}

BusSet normalize_pmu_model(const Grid& grid, const BusSet& pmus, PmuModel model) {
  if (model == PmuModel::VoltageOnly) {
    for (BusId id : pmus) grid.index_of(id);
    return pmus;
  }
  return closed_neighborhood(grid, pmus);
}

PlacementTrace greedy_place(const Grid& grid, const BusSet& unalterable, PmuModel model, int max_pmus,
                            std::optional<BusId> first_bus) {
  if (max_pmus < 1) throw InputError("PMU budget must be at least 1");
  const BusSet locked = effective_unalterable(grid, unalterable);
  const BusId seed = first_bus.value_or(grid.id_at(0));
  grid.index_of(seed);

  PlacementTrace trace;
  BusSet pmus{seed};
  BusId added = seed;
  while (true) {
    PlacementStep step;
    step.m = static_cast<int>(pmus.size());
    step.bus_added = added;
    step.pmus = pmus;
    step.effective = normalize_pmu_model(grid, pmus, model);
    step.max_impact_all = max_potential_impact(grid, step.effective);

    const Connectivity conn = vulnerable_vertex_connectivity(grid, step.effective, locked);
    step.min_sparsity = conn.kappa_bar.plus(1);
    if (!conn.kappa_bar.is_finite()) {
      trace.steps.push_back(std::move(step));
      break;
    }

    // Witnesses arrive sorted by cut, so the first maximum is the tie winner.
    const VertexCutWitness* target = nullptr;
    for (const auto& w : conn.witnesses)
      if (target == nullptr || w.impact > target->impact) target = &w;
    step.max_impact_sparsest = target->impact;
    step.chosen_cut = *target;
    trace.steps.push_back(step);

    if (step.m >= max_pmus) {
      trace.budget_exhausted = true;
      break;
    }

    BusSet candidates = target->S;
    if (model == PmuModel::VoltageAndBranchCurrents) candidates.insert(target->cut.begin(), target->cut.end());
    BusId best = 0;
    int best_score = 0;
    for (BusId c : candidates) {
      if (pmus.contains(c)) continue;
      BusSet trial = pmus;
      trial.insert(c);
      const int score = max_potential_impact(grid, normalize_pmu_model(grid, trial, model));
      if (best == 0 || score < best_score) {
        best = c;
        best_score = score;
      }
    }
    if (best == 0) throw std::logic_error("greedy placement found no candidate bus");
    pmus.insert(best);
    added = best;
  }
  trace.final_pmus = pmus;
  return trace;
}

}  // namespace unobs
