#pragma once

#include <span>
#include <vector>

namespace unobs {

/// Simple undirected graph on vertices 0..n-1. Parallel edges and self loops
/// are collapsed; adjacency lists are kept sorted.
class Graph {
 public:
  explicit Graph(int vertex_count = 0);

  int size() const { return static_cast<int>(adj_.size()); }

  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;
  std::span<const int> neighbors(int v) const { return adj_.at(v); }
  int edge_count() const;

 private:
  std::vector<std::vector<int>> adj_;
};

/// Vertices reachable from `start` without entering a vertex flagged in
/// `blocked`. Returns a membership mask; `start` itself must not be blocked.
std::vector<char> reachable_from(const Graph& graph, int start, const std::vector<char>& blocked);

/// S ∪ N(S), sorted.
std::vector<int> closed_neighborhood(const Graph& graph, std::span<const int> vertices);

bool is_connected(const Graph& graph);

}  // namespace unobs
