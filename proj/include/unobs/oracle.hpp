#pragma once

#include <cstdint>
#include <span>

#include "unobs/numeric.hpp"
#include "unobs/placement.hpp"
#include "unobs/structural_rank.hpp"

namespace unobs {

inline constexpr int kOracleMaxBuses = 16;
inline constexpr int kOracleMaxPatternDim = 8;

/// Smallest s such that some alterable A with |A| = s admits an unobservable
/// attack, by exhaustive colexicographic search over A and numeric ranks of
/// B_{A^c M^c}. The first feasible s is confirmed by realizing an attack with
/// exactly s nonzeros. Requires N ≤ 16.
ExtendedInt brute_min_sparsity(const Grid& grid, const BusSet& pmus, const BusSet& unalterable, PmuModel model,
                               const ToleranceConfig& tol = {});

/// min |N(S)| over nonempty S ⊆ M^c with |U^c ∩ N[S]| ≥ |N(S)| + 1, by
/// enumerating every S. `pmus` is the effective monitored set. Requires N ≤ 16.
ExtendedInt brute_vulnerable_connectivity(const Grid& grid, const BusSet& pmus, const BusSet& unalterable);

/// Maximum number of nonzeros with distinct rows and columns, by exhaustive
/// backtracking. Requires min(rows, cols) ≤ 8.
int brute_structural_rank(const SparsityPattern& pattern);
/// Row bitmask form: bit j of rows[i] marks a nonzero at (i, j).
int brute_structural_rank(std::span<const std::uint64_t> rows, int n_cols);

/// Every selection of n rows of a square pattern touches at least n columns.
/// Requires dimension ≤ 8.
bool property1_check(const SparsityPattern& pattern);
bool property1_check(std::span<const std::uint64_t> rows, int n_cols);

}  // namespace unobs
