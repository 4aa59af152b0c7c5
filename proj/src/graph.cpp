#include "unobs/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace unobs {

Graph::Graph(int vertex_count) : adj_(static_cast<std::size_t>(std::max(vertex_count, 0))) {}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= size() || v >= size()) throw std::out_of_range("Graph::add_edge: vertex out of range");
  if (u == v) return;
  auto insert_sorted = [](std::vector<int>& list, int x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) list.insert(it, x);
  };
  insert_sorted(adj_[u], v);
  insert_sorted(adj_[v], u);
}

bool Graph::adjacent(int u, int v) const {
  const auto& list = adj_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

int Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : adj_) twice += list.size();
  return static_cast<int>(twice / 2);
}

std::vector<char> reachable_from(const Graph& graph, int start, const std::vector<char>& blocked) {
  std::vector<char> seen(graph.size(), 0);
  if (blocked.at(start)) return seen;
  std::vector<int> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : graph.neighbors(v)) {
      if (seen[w] || blocked[w]) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  return seen;
}

std::vector<int> closed_neighborhood(const Graph& graph, std::span<const int> vertices) {
  std::vector<char> mark(graph.size(), 0);
  for (int v : vertices) {
    if (v < 0 || v >= graph.size()) throw std::out_of_range("closed_neighborhood: vertex out of range");
    mark[v] = 1;
    for (int w : graph.neighbors(v)) mark[w] = 1;
  }
  std::vector<int> out;
  for (int v = 0; v < graph.size(); ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

bool is_connected(const Graph& graph) {
  if (graph.size() == 0) return true;
  auto seen = reachable_from(graph, 0, std::vector<char>(graph.size(), 0));
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace unobs
