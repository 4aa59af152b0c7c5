#include <doctest.h>

#include <set>

#include "random_graphs.hpp"
#include "unobs/augmented_cuts.hpp"
#include "unobs/oracle.hpp"

using namespace unobs;
using unobs::testing::data_path;

namespace {

Graph graph_of(int n, std::initializer_list<std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

std::vector<std::vector<int>> drain(RankedCutEnumerator& e) {
  std::vector<std::vector<int>> out;
  while (auto c = e.next()) out.push_back(*c);
  return out;
}

// Every minimal s-t separator of size ≤ cap, by subset enumeration.
std::set<std::vector<int>> brute_minimal_separators(const Graph& g, int s, int t, int cap) {
  const int n = g.size();
  std::set<std::vector<int>> out;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    if (bits >> s & 1u || bits >> t & 1u) continue;
    if (std::popcount(bits) > cap) continue;
    std::vector<char> blocked(n, 0);
    std::vector<int> cut;
    for (int v = 0; v < n; ++v)
      if (bits >> v & 1u) {
        blocked[v] = 1;
        cut.push_back(v);
      }
    auto from_s = reachable_from(g, s, blocked);
    if (from_s[t]) continue;
    auto from_t = reachable_from(g, t, blocked);
    bool minimal = true;
    for (int c : cut) {
      bool a = false, b = false;
      for (int w : g.neighbors(c)) {
        a = a || from_s[w];
        b = b || from_t[w];
      }
      minimal = minimal && a && b;
    }
    if (minimal) out.insert(cut);
  }
  return out;
}

// All minimum vulnerable cuts as (cut, S) with S every bus cut off from M̄.
std::set<std::pair<BusSet, BusSet>> brute_minimum_witnesses(const Grid& grid, const BusSet& pmus,
                                                            const BusSet& unalterable, ExtendedInt kappa) {
  std::set<std::pair<BusSet, BusSet>> out;
  if (!kappa.is_finite()) return out;
  const int n = grid.size();
  std::vector<BusId> free;
  for (int i = 0; i < n; ++i)
    if (!pmus.contains(grid.id_at(i))) free.push_back(grid.id_at(i));
  const BusSet locked = effective_unalterable(grid, unalterable);
  for (std::uint32_t bits = 1; bits < (1u << free.size()); ++bits) {
    BusSet s;
    for (std::size_t j = 0; j < free.size(); ++j)
      if (bits >> j & 1u) s.insert(free[j]);
    BusSet cut;
    for (const Line& l : grid.lines()) {
      if (s.contains(l.from) && !s.contains(l.to)) cut.insert(l.to);
      if (s.contains(l.to) && !s.contains(l.from)) cut.insert(l.from);
    }
    int alterable = 0;
    for (BusId b : s) alterable += !locked.contains(b);
    for (BusId b : cut) alterable += !locked.contains(b);
    if (static_cast<int>(cut.size()) != kappa.value() || alterable < kappa.value() + 1) continue;
    // Everything not reachable from M ∖ cut.
    BusSet reached;
    std::vector<BusId> stack;
    for (BusId m : pmus)
      if (!cut.contains(m)) {
        reached.insert(m);
        stack.push_back(m);
      }
    while (!stack.empty()) {
      BusId v = stack.back();
      stack.pop_back();
      for (const Line& l : grid.lines()) {
        BusId w = l.from == v ? l.to : (l.to == v ? l.from : 0);
        if (w != 0 && !cut.contains(w) && reached.insert(w).second) stack.push_back(w);
      }
    }
    BusSet hidden;
    for (int i = 0; i < n; ++i) {
      BusId b = grid.id_at(i);
      if (!reached.contains(b) && !cut.contains(b)) hidden.insert(b);
    }
    out.emplace(cut, hidden);
  }
  return out;
}

}  // namespace

TEST_CASE("augmentation adds the dummy and the M-bar clique") {
  Grid g = load_grid(data_path("path3.json"));
  AugmentedGraph a = augment(g, {3});
  CHECK(a.dummy == 3);
  CHECK(a.graph.size() == 4);
  CHECK(a.mbar == BusSet{0, 3});
  CHECK(a.extra_edges == std::vector<std::pair<BusId, BusId>>{{0, 3}});
  CHECK(a.graph.neighbors(a.dummy).size() == 1);

  AugmentedGraph b = augment(g, {1, 3});
  CHECK(b.extra_edges == std::vector<std::pair<BusId, BusId>>{{0, 1}, {0, 3}, {1, 3}});
  CHECK(b.graph.adjacent(0, 2));
  CHECK_THROWS_AS(augment(g, {}), InputError);
}

TEST_CASE("closed neighborhood examples") {
  Grid g = load_grid(data_path("path3.json"));
  CHECK(closed_neighborhood(g, {1}) == BusSet{1, 2});
  CHECK(closed_neighborhood(g, {2}) == BusSet{1, 2, 3});
  CHECK(closed_neighborhood(g, {}).empty());
  CHECK_THROWS_AS(closed_neighborhood(g, {5}), InputError);
}

TEST_CASE("minimum s-t vertex cut examples") {
  Graph cycle = graph_of(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(min_st_vertex_cut(cycle, 0, 2) == std::vector<int>{1, 3});
  Graph path = graph_of(3, {{0, 1}, {1, 2}});
  CHECK(min_st_vertex_cut(path, 0, 2) == std::vector<int>{1});
  Graph edge = graph_of(2, {{0, 1}});
  CHECK_FALSE(min_st_vertex_cut(edge, 0, 1).has_value());
  CHECK_THROWS_AS(min_st_vertex_cut(path, 1, 1), InputError);
}

TEST_CASE("ranked enumeration examples") {
  Graph cycle = graph_of(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  RankedCutEnumerator e(cycle, 0, 2, 2);
  CHECK(drain(e) == std::vector<std::vector<int>>{{1, 3}});

  Graph path4 = graph_of(4, {{0, 1}, {1, 2}, {2, 3}});
  RankedCutEnumerator f(path4, 0, 3, 2);
  CHECK(drain(f) == std::vector<std::vector<int>>{{1}, {2}});

  RankedCutEnumerator none(path4, 0, 3, 0);
  CHECK(drain(none).empty());
}

TEST_CASE("next_within pauses without losing cuts") {
  Graph g = graph_of(6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}});
  RankedCutEnumerator e(g, 0, 5, 3);
  auto first = e.next_within(0);
  CHECK_FALSE(first.has_value());
  std::vector<std::vector<int>> got;
  while (auto c = e.next_within(1)) got.push_back(*c);
  CHECK(got == std::vector<std::vector<int>>{{3}, {4}});
  got = drain(e);
  CHECK(got == std::vector<std::vector<int>>{{1, 2}});
}

TEST_CASE("ranked enumeration equals brute-force minimal separators") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = 5 + static_cast<int>(seed % 6);
    Grid grid = unobs::testing::random_connected_grid(rng, n, 0.3);
    const Graph& g = grid.topology();
    const int s = static_cast<int>(rng() % n);
    int t = static_cast<int>(rng() % n);
    if (t == s) t = (s + 1) % n;
    if (g.adjacent(s, t)) continue;
    const int cap = 1 + static_cast<int>(rng() % 4);

    RankedCutEnumerator e(g, s, t, cap);
    auto got = drain(e);
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1].size() <= got[i].size());
    std::set<std::vector<int>> unique(got.begin(), got.end());
    CHECK(unique.size() == got.size());
    CHECK(unique == brute_minimal_separators(g, s, t, cap));

    auto min_cut = min_st_vertex_cut(g, s, t);
    REQUIRE(min_cut.has_value());
    if (!got.empty()) CHECK(got.front().size() == min_cut->size());
  }
}

TEST_CASE("vulnerable connectivity on path-3") {
  Grid g = load_grid(data_path("path3.json"));
  Connectivity c = vulnerable_vertex_connectivity(g, {3});
  CHECK(c.kappa_bar == 1);
  VertexCutWitness expected{{1}, {2}, true, 2};
  CHECK(std::find(c.witnesses.begin(), c.witnesses.end(), expected) != c.witnesses.end());

  Connectivity locked = vulnerable_vertex_connectivity(g, {3}, {1, 2});
  CHECK_FALSE(locked.kappa_bar.is_finite());
  CHECK(locked.witnesses.empty());
}

TEST_CASE("vulnerable connectivity on the 4-cycle with a single PMU") {
  // The PMU bus itself is a cut of size 1 hiding the other three buses.
  Grid g = load_grid(data_path("cycle4.json"));
  Connectivity c = vulnerable_vertex_connectivity(g, {1});
  CHECK(c.kappa_bar == 1);
  CHECK(c.kappa_bar == brute_vulnerable_connectivity(g, {1}, {}));
  REQUIRE(c.witnesses.size() == 1);
  CHECK(c.witnesses[0].cut == BusSet{1});
  CHECK(c.witnesses[0].S == BusSet{2, 3, 4});
  CHECK(c.witnesses[0].impact == 4);
}

TEST_CASE("two equal-size cuts with different potential impacts") {
  Grid g = load_grid(data_path("twocuts10.json"));
  Connectivity c = vulnerable_vertex_connectivity(g, {7, 9});
  CHECK(c.kappa_bar == 2);
  auto impact_of = [&](BusSet cut) {
    for (const auto& w : c.witnesses)
      if (w.cut == cut) return w.impact;
    return -1;
  };
  CHECK(impact_of({7, 8}) == 8);
  CHECK(impact_of({8, 9}) == 3);
  CHECK(impact_of({7, 9}) == 10);
  CHECK(c.witnesses.size() == 3);
}

TEST_CASE("potential impact helpers") {
  VertexCutWitness w{{3}, {2, 4}, true, 3};
  CHECK(potential_impact(w) == 3);
  Grid p3 = load_grid(data_path("path3.json"));
  CHECK(max_potential_impact(p3, {3}) == 3);
  CHECK(max_potential_impact(p3, {1, 2, 3}) == 0);
  Grid c4 = load_grid(data_path("cycle4.json"));
  CHECK(max_potential_impact(c4, {1, 3}) == 4);
}

TEST_CASE("cut invariants and oracle agreement on random grids") {
  int finite = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto t = unobs::testing::random_trial(seed);
    const bool all_alterable = seed % 2 == 0;
    const BusSet u = all_alterable ? BusSet{} : t.unalterable;
    Connectivity c = vulnerable_vertex_connectivity(t.grid, t.pmus, u);
    CAPTURE(seed);
    CHECK(c.kappa_bar == brute_vulnerable_connectivity(t.grid, t.pmus, u));
    if (!c.kappa_bar.is_finite()) {
      CHECK_FALSE(all_alterable);
      continue;
    }
    ++finite;
    CHECK(c.kappa_bar.value() <= static_cast<int>(t.pmus.size()));

    std::set<std::pair<BusSet, BusSet>> got;
    for (const auto& w : c.witnesses) {
      got.emplace(w.cut, w.S);
      CHECK(w.vulnerable);
      CHECK(static_cast<int>(w.cut.size()) == c.kappa_bar.value());
      CHECK(w.impact == static_cast<int>(w.S.size() + w.cut.size()));
      for (BusId b : w.S) CHECK_FALSE(t.pmus.contains(b));
      CHECK(closed_neighborhood(t.grid, w.S).size() == w.S.size() + w.cut.size());
      // Removing the cut leaves M ∖ cut unable to reach S.
      std::vector<char> blocked(t.grid.size(), 0);
      for (BusId b : w.cut) blocked[t.grid.index_of(b)] = 1;
      for (BusId m : t.pmus) {
        if (w.cut.contains(m)) continue;
        auto seen = reachable_from(t.grid.topology(), t.grid.index_of(m), blocked);
        for (BusId b : w.S) CHECK_FALSE(seen[t.grid.index_of(b)]);
      }
    }
    CHECK(got.size() == c.witnesses.size());
    CHECK(got == brute_minimum_witnesses(t.grid, t.pmus, u, c.kappa_bar));
  }
  CHECK(finite > 150);
}

TEST_CASE("augmented Laplacian is a Laplacian with the dummy last") {
  Grid g = load_grid(data_path("cycle4.json"));
  WeightedLaplacian a = build_augmented_laplacian(g, {1, 3}, 10.0);
  CHECK(a.size() == 5);
  CHECK(a.ids.back() == kDummyBusId);
  CHECK(a.index(kDummyBusId) == 4);
  CHECK(a.matrix(4, 4) == 20.0);
  CHECK(a.matrix(0, 2) == -10.0);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(a.matrix.row(i).sum()) < 1e-12);
  CHECK_THROWS_AS(build_augmented_laplacian(g, {1}, 0.0), InputError);
}
