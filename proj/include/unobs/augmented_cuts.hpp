#pragma once

#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "unobs/grid.hpp"

namespace unobs {

/// Grid topology plus one unalterable dummy vertex (internal index N, reserved
/// id 0) and a clique on M̄ = M ∪ {dummy}.
struct AugmentedGraph {
  Graph graph;
  int dummy = 0;
  std::vector<BusId> ids;  ///< ids[i] for i < N, kDummyBusId at index N
  BusSet mbar;
  std::vector<std::pair<BusId, BusId>> extra_edges;
};

/// Throws InputError on empty M or unknown ids.
AugmentedGraph augment(const Grid& grid, const BusSet& pmus);

/// S ∪ N(S) in the grid topology.
BusSet closed_neighborhood(const Grid& grid, const BusSet& buses);

/// Minimum set of vertices (excluding s and t) whose removal separates s from
/// t, by unit-capacity max-flow on the node-split digraph. nullopt when no
/// finite cut exists (s adjacent to t).
std::optional<std::vector<int>> min_st_vertex_cut(const Graph& graph, int s, int t);

/// Streams every minimal s–t vertex separator of size ≤ max_size exactly once,
/// in nondecreasing size (ties by lexicographic order of the sorted cut).
///
/// Search nodes carry include/exclude constraints; each node's constrained
/// minimum cut is re-solved by max-flow and its free vertices split the
/// remaining space Lawler-style. Strict supersets of a node's solution are the
/// only separators left uncovered, and those are never minimal.
class RankedCutEnumerator {
 public:
  RankedCutEnumerator(const Graph& graph, int s, int t, int max_size);

  std::optional<std::vector<int>> next() { return next_within(max_size_); }
  /// Next cut if its size is at most `limit`; otherwise nullopt, leaving the
  /// stream intact so a later call with a larger limit resumes it.
  std::optional<std::vector<int>> next_within(int limit);
  /// Lowers the cap; cuts above it are dropped for good.
  void set_max_size(int max_size);
  int max_size() const { return max_size_; }

 private:
  struct Node {
    std::vector<int> cut;
    std::vector<int> include;
    std::vector<int> exclude;
  };
  struct Later {
    bool operator()(const Node& a, const Node& b) const {
      if (a.cut.size() != b.cut.size()) return a.cut.size() > b.cut.size();
      return a.cut > b.cut;
    }
  };

  std::optional<std::vector<int>> solve(const std::vector<int>& include, const std::vector<int>& exclude) const;
  bool is_minimal(const std::vector<int>& cut) const;
  void push_if_feasible(std::vector<int> include, std::vector<int> exclude);

  const Graph& graph_;
  int s_;
  int t_;
  int max_size_;
  std::priority_queue<Node, std::vector<Node>, Later> queue_;
};

struct VertexCutWitness {
  BusSet S;
  BusSet cut;
  bool vulnerable = false;
  int impact = 0;  ///< |N[S]| = |S| + |cut|

  auto operator<=>(const VertexCutWitness&) const = default;
};

struct Connectivity {
  ExtendedInt kappa_bar = ExtendedInt::infinity();
  /// Every minimum vulnerable cut, sorted by (cut, S).
  std::vector<VertexCutWitness> witnesses;
};

/// Vulnerable vertex connectivity of G^M with all minimum vulnerable cuts.
/// `unalterable` is merged with the grid's own flags.
Connectivity vulnerable_vertex_connectivity(const Grid& grid, const BusSet& pmus, const BusSet& unalterable = {});

inline int potential_impact(const VertexCutWitness& witness) {
  return static_cast<int>(witness.S.size() + witness.cut.size());
}

/// |N[M^c]| in the grid; 0 when every bus is monitored.
int max_potential_impact(const Grid& grid, const BusSet& pmus);

/// Laplacian of G^M with every added edge carrying `weight`. The dummy bus is
/// the last row/column and has id kDummyBusId.
WeightedLaplacian build_augmented_laplacian(const Grid& grid, const BusSet& pmus, double weight);

}  // namespace unobs
