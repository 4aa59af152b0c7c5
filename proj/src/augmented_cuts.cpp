#include "unobs/augmented_cuts.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <set>

namespace unobs {

namespace {

constexpr int kInfCap = std::numeric_limits<int>::max() / 4;

// Node-split flow network: vertex v becomes v_in = 2v and v_out = 2v+1.
class SplitNetwork {
 public:
  explicit SplitNetwork(int vertices) : head_(2 * vertices, -1) {}

  void add_arc(int from, int to, int cap) {
    arcs_.push_back({to, cap, head_[from]});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, 0, head_[to]});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  // Pushes unit augmenting paths until `limit` is reached or none is left.
  int max_flow(int source, int sink, int limit) {
    int flow = 0;
    std::vector<int> via(head_.size());
    while (flow < limit) {
      std::fill(via.begin(), via.end(), -1);
      std::vector<int> queue{source};
      via[source] = -2;
      for (std::size_t q = 0; q < queue.size() && via[sink] == -1; ++q) {
        for (int a = head_[queue[q]]; a != -1; a = arcs_[a].next) {
          int to = arcs_[a].to;
          if (arcs_[a].cap > 0 && via[to] == -1) {
            via[to] = a;
            queue.push_back(to);
          }
        }
      }
      if (via[sink] == -1) break;
      for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].cap -= 1;
        arcs_[via[v] ^ 1].cap += 1;
      }
      ++flow;
    }
    return flow;
  }

  std::vector<char> residual_reachable(int source) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int cap;
    int next;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

// Minimum s–t separator that contains `removed` and avoids `forbidden`, if its
// free part has at most `budget` vertices.
std::optional<std::vector<int>> constrained_min_cut(const Graph& graph, int s, int t, const std::vector<char>& removed,
                                                    const std::vector<char>& forbidden, int budget) {
  if (budget < 0) return std::nullopt;
  const int n = graph.size();
  SplitNetwork net(n);
  for (int v = 0; v < n; ++v) {
    if (removed[v]) continue;
    const bool pinned = v == s || v == t || forbidden[v];
    net.add_arc(2 * v, 2 * v + 1, pinned ? kInfCap : 1);
    for (int w : graph.neighbors(v))
      if (!removed[w]) net.add_arc(2 * v + 1, 2 * w, kInfCap);
  }
  if (net.max_flow(2 * s + 1, 2 * t, budget + 1) > budget) return std::nullopt;

  auto reach = net.residual_reachable(2 * s + 1);
  std::vector<int> cut;
  for (int v = 0; v < n; ++v) {
    if (removed[v])
      cut.push_back(v);
    else if (reach[2 * v] && !reach[2 * v + 1])
      cut.push_back(v);
  }
  return cut;
}

std::vector<char> mask_of(int n, const std::vector<int>& members) {
  std::vector<char> mask(n, 0);
  for (int v : members) mask[v] = 1;
  return mask;
}

// Vertices of t's component after deleting `cut`.
std::vector<int> component_of(const Graph& graph, int t, const std::vector<int>& cut) {
  auto seen = reachable_from(graph, t, mask_of(graph.size(), cut));
  std::vector<int> out;
  for (int v = 0; v < graph.size(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

AugmentedGraph augment(const Grid& grid, const BusSet& pmus) {
  if (pmus.empty()) throw InputError("PMU set must be nonempty");
  const int n = grid.size();
  AugmentedGraph aug;
  aug.graph = Graph(n + 1);
  aug.dummy = n;
  for (int i = 0; i < n; ++i) {
    aug.ids.push_back(grid.id_at(i));
    for (int j : grid.topology().neighbors(i)) aug.graph.add_edge(i, j);
  }
  aug.ids.push_back(kDummyBusId);

  std::vector<int> members = grid.indices_of(pmus);
  members.push_back(n);
  aug.mbar = pmus;
  aug.mbar.insert(kDummyBusId);
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      int u = members[a];
      int v = members[b];
      if (!aug.graph.adjacent(u, v)) {
        BusId x = aug.ids[u];
        BusId y = aug.ids[v];
        aug.extra_edges.emplace_back(std::min(x, y), std::max(x, y));
      }
      aug.graph.add_edge(u, v);
    }
  }
  std::sort(aug.extra_edges.begin(), aug.extra_edges.end());
  return aug;
}

BusSet closed_neighborhood(const Grid& grid, const BusSet& buses) {
  std::vector<int> idx = grid.indices_of(buses);
  return grid.ids_of(closed_neighborhood(grid.topology(), idx));
}

std::optional<std::vector<int>> min_st_vertex_cut(const Graph& graph, int s, int t) {
  const int n = graph.size();
  if (s < 0 || t < 0 || s >= n || t >= n) throw InputError("vertex out of range");
  if (s == t) throw InputError("source and sink coincide");
  std::vector<char> none(n, 0);
  return constrained_min_cut(graph, s, t, none, none, n);
}

RankedCutEnumerator::RankedCutEnumerator(const Graph& graph, int s, int t, int max_size)
    : graph_(graph), s_(s), t_(t), max_size_(max_size) {
  const int n = graph.size();
  if (s < 0 || t < 0 || s >= n || t >= n) throw InputError("vertex out of range");
  if (s == t) throw InputError("source and sink coincide");
  push_if_feasible({}, {});
}

std::optional<std::vector<int>> RankedCutEnumerator::solve(const std::vector<int>& include,
                                                           const std::vector<int>& exclude) const {
  const int n = graph_.size();
  return constrained_min_cut(graph_, s_, t_, mask_of(n, include), mask_of(n, exclude),
                             max_size_ - static_cast<int>(include.size()));
}

void RankedCutEnumerator::push_if_feasible(std::vector<int> include, std::vector<int> exclude) {
  if (auto cut = solve(include, exclude)) queue_.push({std::move(*cut), std::move(include), std::move(exclude)});
}

bool RankedCutEnumerator::is_minimal(const std::vector<int>& cut) const {
  auto blocked = mask_of(graph_.size(), cut);
  auto from_s = reachable_from(graph_, s_, blocked);
  auto from_t = reachable_from(graph_, t_, blocked);
  for (int c : cut) {
    auto nb = graph_.neighbors(c);
    bool touches_s = std::any_of(nb.begin(), nb.end(), [&](int w) { return from_s[w] != 0; });
    bool touches_t = std::any_of(nb.begin(), nb.end(), [&](int w) { return from_t[w] != 0; });
    if (!touches_s || !touches_t) return false;
  }
  return true;
}

std::optional<std::vector<int>> RankedCutEnumerator::next_within(int limit) {
  while (!queue_.empty()) {
    const int top_size = static_cast<int>(queue_.top().cut.size());
    if (top_size > max_size_) {
      queue_ = {};
      return std::nullopt;
    }
    if (top_size > limit) return std::nullopt;
    Node node = queue_.top();
    queue_.pop();

    std::vector<int> free_part;
    std::set_difference(node.cut.begin(), node.cut.end(), node.include.begin(), node.include.end(),
                        std::back_inserter(free_part));
    std::vector<int> include = node.include;
    for (int v : free_part) {
      std::vector<int> exclude = node.exclude;
      exclude.insert(std::upper_bound(exclude.begin(), exclude.end(), v), v);
      push_if_feasible(include, std::move(exclude));
      include.insert(std::upper_bound(include.begin(), include.end(), v), v);
    }
    if (is_minimal(node.cut)) return node.cut;
  }
  return std::nullopt;
}

void RankedCutEnumerator::set_max_size(int max_size) { max_size_ = std::min(max_size_, max_size); }

Connectivity vulnerable_vertex_connectivity(const Grid& grid, const BusSet& pmus, const BusSet& unalterable) {
  const AugmentedGraph aug = augment(grid, pmus);
  const Graph& g = aug.graph;
  const int n = grid.size();
  const BusSet locked = effective_unalterable(grid, unalterable);
  const int cap = static_cast<int>(pmus.size());

  std::vector<char> alterable(n + 1, 0);
  for (int i = 0; i < n; ++i) alterable[i] = locked.contains(grid.id_at(i)) ? 0 : 1;

  std::vector<RankedCutEnumerator> streams;
  std::vector<int> targets;
  for (int i = 0; i < n; ++i) {
    if (pmus.contains(grid.id_at(i))) continue;
    targets.push_back(i);
    streams.emplace_back(g, aug.dummy, i, cap);
  }

  // A separator minimal for (dummy, t) bounds exactly t's component.
  struct Block {
    std::vector<int> side;
    std::vector<int> cut;
  };
  std::vector<Block> blocks;
  std::set<std::vector<int>> seen_sides;

  auto evaluate = [&](const std::vector<int>& cut) -> std::optional<VertexCutWitness> {
    auto blocked = mask_of(n + 1, cut);
    auto kept = reachable_from(g, aug.dummy, blocked);
    std::vector<int> side;
    for (int v = 0; v < n; ++v)
      if (!kept[v] && !blocked[v]) side.push_back(v);
    if (side.empty()) return std::nullopt;
    if (closed_neighborhood(g, side) != set_union(side, cut)) return std::nullopt;

    VertexCutWitness w;
    int alterable_count = 0;
    for (int v : side) {
      w.S.insert(aug.ids[v]);
      alterable_count += alterable[v];
    }
    for (int v : cut) {
      w.cut.insert(aug.ids[v]);
      alterable_count += alterable[v];
    }
    w.vulnerable = alterable_count >= static_cast<int>(cut.size()) + 1;
    w.impact = potential_impact(w);
    return w;
  };

  // Unions of two or more mutually separated blocks. Only needed when some
  // bus is unalterable: otherwise every block is itself vulnerable.
  auto unions_of_size = [&](int k, std::set<std::vector<int>>& out) {
    std::vector<int> chosen;
    auto extend = [&](auto&& self, std::size_t from, const std::vector<int>& current) -> void {
      for (std::size_t j = from; j < blocks.size(); ++j) {
        const Block& b = blocks[j];
        bool compatible = true;
        for (int i : chosen) {
          const Block& a = blocks[i];
          if (!disjoint(a.side, b.cut) || !disjoint(b.side, a.cut) || !disjoint(a.side, b.side)) {
            compatible = false;
            break;
          }
        }
        if (!compatible) continue;
        std::vector<int> merged = set_union(current, b.cut);
        if (static_cast<int>(merged.size()) > k) continue;
        chosen.push_back(static_cast<int>(j));
        if (chosen.size() >= 2 && static_cast<int>(merged.size()) == k) out.insert(merged);
        self(self, j + 1, merged);
        chosen.pop_back();
      }
    };
    extend(extend, 0, {});
  };

  Connectivity result;
  for (int k = 1; k <= cap; ++k) {
    std::set<std::vector<int>> candidates;
    for (std::size_t d = 0; d < streams.size(); ++d) {
      while (auto cut = streams[d].next_within(k)) {
        std::vector<int> side = component_of(g, targets[d], *cut);
        if (seen_sides.insert(side).second) blocks.push_back({side, *cut});
        candidates.insert(std::move(*cut));
      }
    }
    if (!locked.empty()) unions_of_size(k, candidates);

    for (const auto& cut : candidates) {
      auto w = evaluate(cut);
      if (w && w->vulnerable) result.witnesses.push_back(std::move(*w));
    }
    if (!result.witnesses.empty()) {
      result.kappa_bar = k;
      std::sort(result.witnesses.begin(), result.witnesses.end(),
                [](const VertexCutWitness& a, const VertexCutWitness& b) {
                  return std::tie(a.cut, a.S) < std::tie(b.cut, b.S);
                });
      result.witnesses.erase(std::unique(result.witnesses.begin(), result.witnesses.end()), result.witnesses.end());
      return result;
    }
  }
  return result;
}

int max_potential_impact(const Grid& grid, const BusSet& pmus) {
  for (BusId id : pmus) grid.index_of(id);
  BusSet unmonitored;
  for (const Bus& b : grid.buses())
    if (!pmus.contains(b.id)) unmonitored.insert(b.id);
  return static_cast<int>(closed_neighborhood(grid, unmonitored).size());
}

WeightedLaplacian build_augmented_laplacian(const Grid& grid, const BusSet& pmus, double weight) {
  if (!(weight > 0.0)) throw InputError("augmented edge weight must be positive");
  if (pmus.empty()) throw InputError("PMU set must be nonempty");
  const WeightedLaplacian base = build_laplacian(grid);
  const int n = grid.size();

  WeightedLaplacian out;
  out.matrix = Eigen::MatrixXd::Zero(n + 1, n + 1);
  out.matrix.topLeftCorner(n, n) = base.matrix;
  out.ids = base.ids;
  out.ids.push_back(kDummyBusId);
  out.index_of = base.index_of;
  out.index_of.emplace(kDummyBusId, n);

  std::vector<int> members = grid.indices_of(pmus);
  members.push_back(n);
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const int i = members[a];
      const int j = members[b];
      out.matrix(i, i) += weight;
      out.matrix(j, j) += weight;
      out.matrix(i, j) -= weight;
      out.matrix(j, i) -= weight;
    }
  }
  return out;
}

}  // namespace unobs
