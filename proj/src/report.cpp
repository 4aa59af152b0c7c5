#include "unobs/report.hpp"

#include <sstream>

namespace unobs {

using nlohmann::ordered_json;

ordered_json to_json(ExtendedInt value) {
  if (value.is_finite()) return value.value();
  return "inf";
}

ordered_json to_json(const Provenance& p) {
  ordered_json out;
  out["input_sha256"] = p.input_sha256;
  out["seed"] = p.seed ? ordered_json(*p.seed) : ordered_json(nullptr);
  out["reactance_range"] =
      p.reactance_range ? ordered_json::array({p.reactance_range->first, p.reactance_range->second}) : ordered_json(nullptr);
  out["tolerance"] = p.tolerance ? ordered_json(*p.tolerance) : ordered_json("relative");
  out["pmu_model"] = p.model;
  return out;
}

ordered_json attack_report_json(const Grid& grid, const AttackSet& attacks, const Provenance& provenance) {
  ordered_json out;
  out["min_sparsity"] = to_json(attacks.min_sparsity);
  out["kappa_bar"] = to_json(attacks.kappa_bar);
  out["max_potential_impact"] = attacks.max_potential_impact;
  out["attacks"] = ordered_json::array();
  for (std::size_t k = 0; k < attacks.attacks.size(); ++k) {
    const AttackVector& a = attacks.attacks[k];
    ordered_json entry;
    entry["support"] = a.support;
    ordered_json dp = ordered_json::object();
    for (BusId id : a.support) dp[std::to_string(id)] = a.delta_p(grid.index_of(id));
    entry["delta_p"] = std::move(dp);
    entry["impact"] = a.source_cut.impact;
    entry["cut"] = a.source_cut.cut;
    entry["S"] = a.source_cut.S;
    entry["chosen_A"] = a.chosen_a;
    entry["verified"] = attacks.checks.at(k).unobservable;
    entry["max_residual"] = attacks.checks.at(k).max_residual;
    out["attacks"].push_back(std::move(entry));
  }
  out["support_shortfall"] = attacks.support_shortfall;
  out["threshold"] = attacks.threshold;
  out["provenance"] = to_json(provenance);
  return out;
}

std::string trace_csv(const PlacementTrace& trace) {
  std::ostringstream out;
  out << "m,bus_added,min_sparsity,max_impact_sparsest,max_impact_all\n";
  for (const PlacementStep& s : trace.steps)
    out << s.m << ',' << s.bus_added << ',' << s.min_sparsity.to_string() << ',' << s.max_impact_sparsest << ','
        << s.max_impact_all << '\n';
  return out.str();
}

ordered_json trace_json(const Grid& grid, const PlacementTrace& trace, const Provenance& provenance) {
  ordered_json out;
  out["buses"] = grid.size();
  out["pmus_used"] = trace.final_pmus.size();
  out["budget_exhausted"] = trace.budget_exhausted;
  out["final_pmus"] = trace.final_pmus;
  out["steps"] = ordered_json::array();
  for (const PlacementStep& s : trace.steps) {
    ordered_json step;
    step["m"] = s.m;
    step["bus_added"] = s.bus_added;
    step["min_sparsity"] = to_json(s.min_sparsity);
    step["max_impact_sparsest"] = s.max_impact_sparsest;
    step["max_impact_all"] = s.max_impact_all;
    out["steps"].push_back(std::move(step));
  }
  out["provenance"] = to_json(provenance);
  return out;
}

ordered_json verdict_json(const FeasibilityVerdict& verdict, const Provenance& provenance) {
  ordered_json out;
  out["feasible"] = verdict.feasible;
  out["certificate"] = std::string(to_string(verdict.certificate));
  out["spr_value"] = verdict.spr_value;
  out["provenance"] = to_json(provenance);
  return out;
}

}  // namespace unobs
