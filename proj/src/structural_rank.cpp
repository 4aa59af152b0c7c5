#include "unobs/structural_rank.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace unobs {

SparsityPattern::SparsityPattern(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InputError("pattern dimensions must be nonnegative");
  row_cols_.resize(static_cast<std::size_t>(rows));
}

SparsityPattern SparsityPattern::of(const Eigen::MatrixXd& x) {
  SparsityPattern p(static_cast<int>(x.rows()), static_cast<int>(x.cols()));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      if (x(i, j) != 0.0) p.set(static_cast<int>(i), static_cast<int>(j));
  return p;
}

void SparsityPattern::set(int row, int col) {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_) throw InputError("pattern position out of bounds");
  auto& list = row_cols_[row];
  auto it = std::lower_bound(list.begin(), list.end(), col);
  if (it == list.end() || *it != col) list.insert(it, col);
}

bool SparsityPattern::has(int row, int col) const {
  const auto& list = row_cols_.at(row);
  return std::binary_search(list.begin(), list.end(), col);
}

std::size_t SparsityPattern::nonzeros() const {
  std::size_t n = 0;
  for (const auto& list : row_cols_) n += list.size();
  return n;
}

SparsityPattern SparsityPattern::transposed() const {
  SparsityPattern t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c : row_cols_[r]) t.row_cols_[c].push_back(r);
  return t;
}

int max_bipartite_matching(const SparsityPattern& pattern) {
  const int n_rows = pattern.rows();
  const int n_cols = pattern.cols();
  constexpr int kFree = -1;
  constexpr int kUnreached = std::numeric_limits<int>::max();

  std::vector<int> match_row(n_rows, kFree);
  std::vector<int> match_col(n_cols, kFree);
  std::vector<int> layer(n_rows);

  // BFS builds layers of free-row-rooted alternating paths; returns whether
  // some augmenting path exists.
  auto build_layers = [&] {
    std::queue<int> q;
    for (int r = 0; r < n_rows; ++r) {
      layer[r] = match_row[r] == kFree ? 0 : kUnreached;
      if (layer[r] == 0) q.push(r);
    }
    bool found = false;
    while (!q.empty()) {
      int r = q.front();
      q.pop();
      for (int c : pattern.row(r)) {
        int next = match_col[c];
        if (next == kFree) {
          found = true;
        } else if (layer[next] == kUnreached) {
          layer[next] = layer[r] + 1;
          q.push(next);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the layered graph.
  std::vector<std::size_t> cursor(n_rows);
  auto augment_from = [&](int root) {
    std::vector<int> path{root};
    while (!path.empty()) {
      int r = path.back();
      auto cols = pattern.row(r);
      bool advanced = false;
      while (cursor[r] < cols.size()) {
        int c = cols[cursor[r]++];
        int next = match_col[c];
        if (next == kFree) {
          // Flip the alternating path ending at c.
          for (auto it = path.rbegin(); it != path.rend(); ++it) {
            int row = *it;
            int prev_col = match_row[row];
            match_row[row] = c;
            match_col[c] = row;
            c = prev_col;
          }
          return true;
        }
        if (layer[next] == layer[r] + 1) {
          path.push_back(next);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        layer[r] = kUnreached;
        path.pop_back();
      }
    }
    return false;
  };

  int matching = 0;
  while (build_layers()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (int r = 0; r < n_rows; ++r)
      if (match_row[r] == kFree && augment_from(r)) ++matching;
  }
  return matching;
}

int structural_rank(const SparsityPattern& pattern) { return max_bipartite_matching(pattern); }

std::string_view to_string(FeasibilityCertificate certificate) {
  switch (certificate) {
    case FeasibilityCertificate::Dimension:
      return "dimension";
    case FeasibilityCertificate::Structural:
      return "structural";
    case FeasibilityCertificate::FullStructuralRank:
      return "full-structural-rank";
  }
  return "unknown";
}

SparsityPattern laplacian_pattern(const Grid& grid, const std::vector<int>& rows, const std::vector<int>& cols) {
  SparsityPattern p(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  const Graph& g = grid.topology();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (rows[i] == cols[j] || g.adjacent(rows[i], cols[j])) p.set(static_cast<int>(i), static_cast<int>(j));
  return p;
}

FeasibilityVerdict attack_feasibility(const Grid& grid, const BusSet& attack_set, const BusSet& pmus,
                                      const BusSet& unalterable) {
  const BusSet locked = effective_unalterable(grid, unalterable);
  for (BusId id : attack_set) {
    grid.index_of(id);
    if (locked.contains(id)) throw InputError("attack set contains unalterable bus " + std::to_string(id));
  }
  for (BusId id : pmus) grid.index_of(id);

  std::vector<int> rows;  // A^c
  std::vector<int> cols;  // M^c
  for (int i = 0; i < grid.size(); ++i) {
    if (!attack_set.contains(grid.id_at(i))) rows.push_back(i);
    if (!pmus.contains(grid.id_at(i))) cols.push_back(i);
  }

  FeasibilityVerdict verdict;
  verdict.spr_value = structural_rank(laplacian_pattern(grid, rows, cols));
  const int n_cols = static_cast<int>(cols.size());

  // A principal block B_{M^c M^c} is positive definite for a connected grid,
  // whatever the reactances.
  if (attack_set == pmus) {
    verdict.feasible = false;
    verdict.certificate = FeasibilityCertificate::FullStructuralRank;
  } else if (static_cast<int>(rows.size()) < n_cols) {
    verdict.feasible = true;
    verdict.certificate = FeasibilityCertificate::Dimension;
  } else if (verdict.spr_value < n_cols) {
    verdict.feasible = true;
    verdict.certificate = FeasibilityCertificate::Structural;
  } else {
    verdict.feasible = false;
    verdict.certificate = FeasibilityCertificate::FullStructuralRank;
  }
  return verdict;
}

}  // namespace unobs
