#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "unobs/grid.hpp"

namespace unobs {

/// Positions of the structurally nonzero entries of a rows×cols matrix.
class SparsityPattern {
 public:
  SparsityPattern(int rows, int cols);

  /// Pattern of the entries of `x` that are exactly nonzero.
  static SparsityPattern of(const Eigen::MatrixXd& x);

  void set(int row, int col);
  bool has(int row, int col) const;

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::span<const int> row(int r) const { return row_cols_.at(r); }
  std::size_t nonzeros() const;
  SparsityPattern transposed() const;

 private:
  int rows_;
  int cols_;
  std::vector<std::vector<int>> row_cols_;
};

/// Maximum matching between rows and columns over the nonzero positions
/// (Hopcroft–Karp, O(E·√V)).
int max_bipartite_matching(const SparsityPattern& pattern);

/// Largest set of nonzero entries no two of which share a row or a column.
int structural_rank(const SparsityPattern& pattern);

enum class FeasibilityCertificate {
  Dimension,           ///< fewer rows than columns in B_{A^c M^c}
  Structural,          ///< structural rank below the column count
  FullStructuralRank,  ///< no attack restricted to A exists, w.p. 1
};

std::string_view to_string(FeasibilityCertificate certificate);

struct FeasibilityVerdict {
  bool feasible = false;
  FeasibilityCertificate certificate = FeasibilityCertificate::FullStructuralRank;
  int spr_value = 0;
};

/// Topology-only decision of whether some nonzero attack restricted to the
/// buses in `attack_set` stays unobservable by PMUs at `pmus`. Reactances are
/// assumed generic; the verdict holds with probability one.
///
/// Throws InputError if `attack_set` contains a bus that is unalterable,
/// either by the grid's own flags or by `unalterable`.
FeasibilityVerdict attack_feasibility(const Grid& grid, const BusSet& attack_set, const BusSet& pmus,
                                      const BusSet& unalterable = {});

/// Structural pattern of the Laplacian slice B_{rows, cols}: entry (i, j) is
/// nonzero iff i == j or buses i and j share a line.
SparsityPattern laplacian_pattern(const Grid& grid, const std::vector<int>& rows, const std::vector<int>& cols);

}  // namespace unobs
