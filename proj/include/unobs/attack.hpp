#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "unobs/augmented_cuts.hpp"
#include "unobs/numeric.hpp"

namespace unobs {

struct AttackVector {
  Eigen::VectorXd delta_p;      ///< per bus, internal index order
  Eigen::VectorXd delta_theta;  ///< per bus, internal index order
  BusSet support;
  VertexCutWitness source_cut;
  BusSet chosen_a;
};

/// 10·τ(B): the shared zeroing and verification threshold.
double attack_threshold(const WeightedLaplacian& laplacian, const ToleranceConfig& tol = {});

/// Attack hidden behind a vulnerable cut. A is the lexicographically smallest
/// set of |cut|+1 alterable buses in N[S], Δθ_S spans the null space of
/// B_{Ũ S} with Ũ = N[S] ∖ A, and ΔP = BΔθ with entries at most 10·τ zeroed.
///
/// `pmus` and `unalterable` are the effective sets. Throws InputError for a
/// non-vulnerable witness and DegenerateError if the null space collapses.
AttackVector construct_attack(const Grid& grid, const WeightedLaplacian& laplacian, const BusSet& pmus,
                              const BusSet& unalterable, const VertexCutWitness& witness,
                              const ToleranceConfig& tol = {});

struct VerificationReport {
  bool unobservable = false;
  double max_residual = 0.0;  ///< ‖ΔP − BΔθ‖∞
  std::string reason;         ///< empty when unobservable
};

/// Checks ΔP ≠ 0, Δθ_M = 0 exactly, ΔP = BΔθ, ΔP_U = 0 and ΣΔP = 0, the last
/// three within `threshold`. Throws InputError on a length mismatch.
VerificationReport verify_unobservable(const WeightedLaplacian& laplacian, const BusSet& pmus,
                                       const BusSet& unalterable, const AttackVector& attack, double threshold);

/// Whether some Δθ with Δθ_M = 0 satisfies BΔθ = ΔP within `threshold`.
bool consistent_angles_exist(const WeightedLaplacian& laplacian, const BusSet& pmus, const Eigen::VectorXd& delta_p,
                             double threshold);

struct AttackSet {
  ExtendedInt kappa_bar = ExtendedInt::infinity();
  ExtendedInt min_sparsity = ExtendedInt::infinity();
  /// Impact descending, then support.
  std::vector<AttackVector> attacks;
  std::vector<VerificationReport> checks;  ///< parallel to `attacks`
  /// Some attack realized fewer than κ̄+1 nonzeros.
  bool support_shortfall = false;
  double threshold = 0.0;
  int max_potential_impact = 0;
};

/// One verified attack per distinct support among the minimum vulnerable cuts.
/// `pmus` is the effective monitored set.
AttackSet sparsest_attacks(const Grid& grid, const BusSet& pmus, const BusSet& unalterable = {},
                           const ToleranceConfig& tol = {});

}  // namespace unobs
