#include "unobs/attack.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace unobs {

double attack_threshold(const WeightedLaplacian& laplacian, const ToleranceConfig& tol) {
  return 10.0 * tol.threshold(laplacian.matrix);
}

AttackVector construct_attack(const Grid& grid, const WeightedLaplacian& laplacian, const BusSet& pmus,
                              const BusSet& unalterable, const VertexCutWitness& witness, const ToleranceConfig& tol) {
  if (!witness.vulnerable) throw InputError("witness cut is not vulnerable");
  if (witness.S.empty()) throw InputError("witness has an empty S");
  for (BusId id : witness.S)
    if (pmus.contains(id)) throw InputError("witness S contains monitored bus " + std::to_string(id));

  const BusSet locked = effective_unalterable(grid, unalterable);
  BusSet closed = witness.S;
  closed.insert(witness.cut.begin(), witness.cut.end());
  closed.erase(kDummyBusId);

  AttackVector attack;
  attack.source_cut = witness;
  const std::size_t wanted = witness.cut.size() + 1;
  for (BusId id : closed) {
    if (attack.chosen_a.size() == wanted) break;
    if (!locked.contains(id)) attack.chosen_a.insert(id);
  }
  if (attack.chosen_a.size() < wanted) throw InputError("witness has too few alterable buses");

  BusSet rest;
  std::set_difference(closed.begin(), closed.end(), attack.chosen_a.begin(), attack.chosen_a.end(),
                      std::inserter(rest, rest.end()));

  Eigen::VectorXd theta_s;
  try {
    theta_s = null_space_vector(submatrix(laplacian, rest, witness.S), tol);
  } catch (const InputError&) {
    throw DegenerateError("degenerate reactances, re-randomize");
  }

  const int n = laplacian.size();
  attack.delta_theta = Eigen::VectorXd::Zero(n);
  std::vector<int> s_idx;
  for (BusId id : witness.S) s_idx.push_back(laplacian.index(id));
  std::sort(s_idx.begin(), s_idx.end());
  for (std::size_t k = 0; k < s_idx.size(); ++k) attack.delta_theta(s_idx[k]) = theta_s(static_cast<Eigen::Index>(k));

  attack.delta_p = laplacian.matrix * attack.delta_theta;
  const double thr = attack_threshold(laplacian, tol);
  for (int i = 0; i < n; ++i) {
    if (std::abs(attack.delta_p(i)) <= thr)
      attack.delta_p(i) = 0.0;
    else
      attack.support.insert(laplacian.ids[i]);
  }
  return attack;
}

VerificationReport verify_unobservable(const WeightedLaplacian& laplacian, const BusSet& pmus,
                                       const BusSet& unalterable, const AttackVector& attack, double threshold) {
  const int n = laplacian.size();
  if (attack.delta_p.size() != n || attack.delta_theta.size() != n)
    throw InputError("attack vectors do not match the grid dimension");

  VerificationReport report;
  report.max_residual = (attack.delta_p - laplacian.matrix * attack.delta_theta).cwiseAbs().maxCoeff();
  auto fail = [&](std::string why) {
    report.unobservable = false;
    report.reason = std::move(why);
    return report;
  };

  if ((attack.delta_p.array() == 0.0).all()) return fail("attack must be non-zero");
  for (BusId id : pmus)
    if (attack.delta_theta(laplacian.index(id)) != 0.0) return fail("nonzero angle change at monitored bus " + std::to_string(id));
  if (report.max_residual > threshold) return fail("delta_p is inconsistent with delta_theta");
  for (BusId id : unalterable)
    if (std::abs(attack.delta_p(laplacian.index(id))) > threshold)
      return fail("injection change at unalterable bus " + std::to_string(id));
  if (std::abs(attack.delta_p.sum()) > threshold) return fail("injection changes do not sum to zero");

  report.unobservable = true;
  return report;
}

bool consistent_angles_exist(const WeightedLaplacian& laplacian, const BusSet& pmus, const Eigen::VectorXd& delta_p,
                             double threshold) {
  const int n = laplacian.size();
  if (delta_p.size() != n) throw InputError("injection vector does not match the grid dimension");
  std::vector<int> all(n);
  std::vector<int> free;
  for (int i = 0; i < n; ++i) {
    all[i] = i;
    if (!pmus.contains(laplacian.ids[i])) free.push_back(i);
  }
  if (free.empty()) return delta_p.cwiseAbs().maxCoeff() <= threshold;
  Eigen::MatrixXd cols = submatrix(laplacian.matrix, all, free);
  Eigen::VectorXd x = cols.completeOrthogonalDecomposition().solve(delta_p);
  return (cols * x - delta_p).cwiseAbs().maxCoeff() <= threshold;
}

AttackSet sparsest_attacks(const Grid& grid, const BusSet& pmus, const BusSet& unalterable, const ToleranceConfig& tol) {
  tol.validate();
  const BusSet locked = effective_unalterable(grid, unalterable);
  const WeightedLaplacian laplacian = build_laplacian(grid);

  AttackSet out;
  out.threshold = attack_threshold(laplacian, tol);
  out.max_potential_impact = max_potential_impact(grid, pmus);
  const Connectivity conn = vulnerable_vertex_connectivity(grid, pmus, locked);
  out.kappa_bar = conn.kappa_bar;
  out.min_sparsity = conn.kappa_bar.plus(1);
  if (!conn.kappa_bar.is_finite()) return out;

  std::map<BusSet, AttackVector> by_support;
  for (const VertexCutWitness& w : conn.witnesses) {
    AttackVector a = construct_attack(grid, laplacian, pmus, locked, w, tol);
    by_support.try_emplace(a.support, std::move(a));
  }
  for (auto& [support, attack] : by_support) out.attacks.push_back(std::move(attack));
  std::stable_sort(out.attacks.begin(), out.attacks.end(), [](const AttackVector& a, const AttackVector& b) {
    return a.source_cut.impact > b.source_cut.impact;
  });

  const int expected = out.min_sparsity.value();
  for (const AttackVector& a : out.attacks) {
    out.checks.push_back(verify_unobservable(laplacian, pmus, locked, a, out.threshold));
    if (static_cast<int>(a.support.size()) < expected) out.support_shortfall = true;
  }
  return out;
}

}  // namespace unobs
