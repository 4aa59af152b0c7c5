#include "unobs/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace unobs {

namespace {

void require_small_grid(const Grid& grid) {
  if (grid.size() > kOracleMaxBuses)
    throw InputError("oracle supports at most " + std::to_string(kOracleMaxBuses) + " buses, got " +
                     std::to_string(grid.size()));
}

std::vector<std::uint64_t> row_masks(const SparsityPattern& pattern) {
  if (pattern.cols() > 64) throw InputError("pattern too wide for the oracle");
  std::vector<std::uint64_t> rows;
  for (int r = 0; r < pattern.rows(); ++r) {
    std::uint64_t mask = 0;
    for (int c : pattern.row(r)) mask |= std::uint64_t{1} << c;
    rows.push_back(mask);
  }
  return rows;
}

int backtrack_rank(std::span<const std::uint64_t> rows, std::size_t r, std::uint64_t used, int found, int ceiling,
                   int best) {
  if (found > best) best = found;
  if (best == ceiling || r == rows.size()) return best;
  if (found + static_cast<int>(rows.size() - r) <= best) return best;
  for (std::uint64_t free = rows[r] & ~used; free != 0; free &= free - 1) {
    std::uint64_t bit = free & (~free + 1);
    best = backtrack_rank(rows, r + 1, used | bit, found + 1, ceiling, best);
    if (best == ceiling) return best;
  }
  return backtrack_rank(rows, r + 1, used, found, ceiling, best);
}

}  // namespace

ExtendedInt brute_min_sparsity(const Grid& grid, const BusSet& pmus, const BusSet& unalterable, PmuModel model,
                               const ToleranceConfig& tol) {
  require_small_grid(grid);
  tol.validate();
  const int n = grid.size();
  const BusSet monitored = normalize_pmu_model(grid, pmus, model);
  const BusSet locked = effective_unalterable(grid, unalterable);
  const WeightedLaplacian lap = build_laplacian(grid);
  const double thr = 10.0 * tol.threshold(lap.matrix);

  std::vector<int> free_cols;
  std::vector<int> alterable;
  for (int i = 0; i < n; ++i) {
    if (!monitored.contains(grid.id_at(i))) free_cols.push_back(i);
    if (!locked.contains(grid.id_at(i))) alterable.push_back(i);
  }
  if (free_cols.empty()) return ExtendedInt::infinity();
  std::vector<int> all_rows(n);
  for (int i = 0; i < n; ++i) all_rows[i] = i;
  const Eigen::MatrixXd full_cols = submatrix(lap.matrix, all_rows, free_cols);

  const int k = static_cast<int>(alterable.size());
  const int m_c = static_cast<int>(free_cols.size());
  for (int s = 1; s <= k; ++s) {
    bool feasible_somewhere = false;
    // Gosper's hack walks the s-subsets of positions in colexicographic order.
    for (std::uint32_t pick = (1u << s) - 1; pick < (1u << k);) {
      std::vector<char> in_a(n, 0);
      for (int j = 0; j < k; ++j)
        if (pick >> j & 1u) in_a[alterable[j]] = 1;
      std::vector<int> rows;
      for (int i = 0; i < n; ++i)
        if (!in_a[i]) rows.push_back(i);

      const Eigen::MatrixXd slice = submatrix(lap.matrix, rows, free_cols);
      const bool feasible = static_cast<int>(rows.size()) < m_c || numeric_rank(slice, tol) < m_c;
      if (feasible) {
        feasible_somewhere = true;
        const Eigen::VectorXd x = null_space_vector(slice, tol);
        const Eigen::VectorXd dp = full_cols * x;
        int nonzeros = 0;
        bool inside = true;
        for (int i = 0; i < n; ++i) {
          if (std::abs(dp(i)) > thr) {
            ++nonzeros;
            if (!in_a[i]) inside = false;
          }
        }
        if (inside && nonzeros == s) return s;
      }

      std::uint32_t low = pick & (~pick + 1);
      std::uint32_t ripple = pick + low;
      pick = ripple | (((pick ^ ripple) >> 2) / low);
    }
    if (feasible_somewhere)
      throw DegenerateError("feasible attack sets found at sparsity " + std::to_string(s) +
                            " but none realizes it, re-randomize");
  }
  return ExtendedInt::infinity();
}

ExtendedInt brute_vulnerable_connectivity(const Grid& grid, const BusSet& pmus, const BusSet& unalterable) {
  require_small_grid(grid);
  const int n = grid.size();
  std::vector<std::uint32_t> adjacency(n, 0);
  auto position = [&](BusId id) {
    for (int i = 0; i < n; ++i)
      if (grid.buses()[i].id == id) return i;
    throw InputError("unknown bus " + std::to_string(id));
  };
  for (const Line& line : grid.lines()) {
    const int a = position(line.from);
    const int b = position(line.to);
    adjacency[a] |= 1u << b;
    adjacency[b] |= 1u << a;
  }
  std::uint32_t monitored = 0;
  for (BusId id : pmus) monitored |= 1u << position(id);
  std::uint32_t alterable = 0;
  for (int i = 0; i < n; ++i) {
    const Bus& b = grid.buses()[i];
    if (b.alterable && !unalterable.contains(b.id)) alterable |= 1u << i;
  }
  for (BusId id : unalterable) position(id);

  const std::uint32_t everything = (n == 32) ? ~0u : ((1u << n) - 1);
  const std::uint32_t unmonitored = everything & ~monitored;
  ExtendedInt best = ExtendedInt::infinity();
  // Every nonempty submask of the unmonitored buses.
  for (std::uint32_t s = unmonitored; s != 0; s = (s - 1) & unmonitored) {
    std::uint32_t boundary = 0;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1u) boundary |= adjacency[i];
    boundary &= ~s;
    const int cut = std::popcount(boundary);
    if (std::popcount((s | boundary) & alterable) >= cut + 1 && ExtendedInt(cut) < best) best = cut;
  }
  return best;
}

int brute_structural_rank(std::span<const std::uint64_t> rows, int n_cols) {
  const int ceiling = std::min(static_cast<int>(rows.size()), n_cols);
  if (ceiling > kOracleMaxPatternDim) throw InputError("pattern too large for the brute-force oracle");
  return backtrack_rank(rows, 0, 0, 0, ceiling, 0);
}

int brute_structural_rank(const SparsityPattern& pattern) {
  return brute_structural_rank(row_masks(pattern), pattern.cols());
}

bool property1_check(std::span<const std::uint64_t> rows, int n_cols) {
  const int n = static_cast<int>(rows.size());
  if (n != n_cols) throw InputError("property check needs a square pattern");
  if (n > kOracleMaxPatternDim) throw InputError("pattern too large for the brute-force oracle");
  for (std::uint32_t pick = 1; pick < (1u << n); ++pick) {
    std::uint64_t touched = 0;
    for (int r = 0; r < n; ++r)
      if (pick >> r & 1u) touched |= rows[r];
    if (std::popcount(touched) < std::popcount(pick)) return false;
  }
  return true;
}

bool property1_check(const SparsityPattern& pattern) { return property1_check(row_masks(pattern), pattern.cols()); }

}  // namespace unobs
