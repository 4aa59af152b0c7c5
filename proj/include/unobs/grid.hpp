#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "unobs/graph.hpp"
#include "unobs/types.hpp"

namespace unobs {

struct Bus {
  BusId id = 0;
  bool alterable = true;
};

struct Line {
  BusId from = 0;
  BusId to = 0;
  double reactance = 0.0;  ///< per-unit, strictly positive
};

/// DC-model network: buses in declaration order plus lines with positive
/// reactances. Construction validates every invariant, so a Grid value is
/// always connected, has unique ids, and only references declared buses.
class Grid {
 public:
  Grid(std::vector<Bus> buses, std::vector<Line> lines);

  const std::vector<Bus>& buses() const { return buses_; }
  const std::vector<Line>& lines() const { return lines_; }
  int size() const { return static_cast<int>(buses_.size()); }

  bool contains(BusId id) const { return index_.contains(id); }
  /// Internal 0-based position of a bus; throws InputError for unknown ids.
  int index_of(BusId id) const;
  BusId id_at(int index) const { return buses_.at(index).id; }

  /// Unweighted view on internal indices.
  const Graph& topology() const { return topology_; }

  BusSet all_buses() const;
  BusSet unalterable_buses() const;
  /// Copy in which every bus of `extra` is additionally marked unalterable.
  Grid with_unalterable(const BusSet& extra) const;
  /// Copy with replaced reactances, one per line in order.
  Grid with_reactances(const std::vector<double>& reactances) const;

  std::vector<int> indices_of(const BusSet& ids) const;
  BusSet ids_of(const std::vector<int>& indices) const;

 private:
  std::vector<Bus> buses_;
  std::vector<Line> lines_;
  std::unordered_map<BusId, int> index_;
  Graph topology_;
};

/// Dense weighted Laplacian B = Σ (1/x_l) m_l m_lᵀ with the bus index map of
/// the grid it was built from.
struct WeightedLaplacian {
  Eigen::MatrixXd matrix;
  std::vector<BusId> ids;  ///< ids[i] is the bus of row/column i
  std::unordered_map<BusId, int> index_of;

  int size() const { return static_cast<int>(ids.size()); }
  int index(BusId id) const;
};

Grid parse_grid_json(std::string_view text);
Grid parse_matpower_case(std::string_view text);
/// Reads a grid file; `.m` files are treated as MATPOWER cases, anything else
/// as grid JSON.
Grid load_grid(const std::filesystem::path& path);

WeightedLaplacian build_laplacian(const Grid& grid);

/// Replaces every reactance with an independent uniform draw in [lo, hi].
Grid randomize_reactances(const Grid& grid, std::uint64_t seed, double lo, double hi);

/// Union of the explicit set and the buses the grid itself flags unalterable.
BusSet effective_unalterable(const Grid& grid, const BusSet& unalterable);

}  // namespace unobs
