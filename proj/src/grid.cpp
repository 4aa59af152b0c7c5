#include "unobs/grid.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

namespace unobs {

Grid::Grid(std::vector<Bus> buses, std::vector<Line> lines)
    : buses_(std::move(buses)), lines_(std::move(lines)), topology_(static_cast<int>(buses_.size())) {
  if (buses_.empty()) throw InputError("grid has no buses");
  for (std::size_t i = 0; i < buses_.size(); ++i) {
    BusId id = buses_[i].id;
    if (id <= 0) throw InputError("bus id must be positive: " + std::to_string(id));
    if (!index_.emplace(id, static_cast<int>(i)).second) throw InputError("duplicate bus id " + std::to_string(id));
  }
  for (const Line& line : lines_) {
    auto where = [&] { return std::to_string(line.from) + "-" + std::to_string(line.to); };
    if (!contains(line.from)) throw InputError("line references unknown bus " + std::to_string(line.from));
    if (!contains(line.to)) throw InputError("line references unknown bus " + std::to_string(line.to));
    if (line.from == line.to) throw InputError("line " + where() + " connects a bus to itself");
    if (!(line.reactance > 0.0)) throw InputError("nonpositive reactance on line " + where());
    topology_.add_edge(index_.at(line.from), index_.at(line.to));
  }
  if (!is_connected(topology_)) throw InputError("disconnected graph");
}

int Grid::index_of(BusId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown bus " + std::to_string(id));
  return it->second;
}

BusSet Grid::all_buses() const {
  BusSet out;
  for (const Bus& b : buses_) out.insert(b.id);
  return out;
}

BusSet Grid::unalterable_buses() const {
  BusSet out;
  for (const Bus& b : buses_)
    if (!b.alterable) out.insert(b.id);
  return out;
}

Grid Grid::with_unalterable(const BusSet& extra) const {
  std::vector<Bus> buses = buses_;
  for (BusId id : extra) buses[index_of(id)].alterable = false;
  return Grid(std::move(buses), lines_);
}

Grid Grid::with_reactances(const std::vector<double>& reactances) const {
  if (reactances.size() != lines_.size()) throw InputError("reactance count does not match line count");
  std::vector<Line> lines = lines_;
  for (std::size_t i = 0; i < lines.size(); ++i) lines[i].reactance = reactances[i];
  return Grid(buses_, std::move(lines));
}

std::vector<int> Grid::indices_of(const BusSet& ids) const {
  std::vector<int> out;
  out.reserve(ids.size());
  for (BusId id : ids) out.push_back(index_of(id));
  std::sort(out.begin(), out.end());
  return out;
}

BusSet Grid::ids_of(const std::vector<int>& indices) const {
  BusSet out;
  for (int i : indices) out.insert(id_at(i));
  return out;
}

int WeightedLaplacian::index(BusId id) const {
  auto it = index_of.find(id);
  if (it == index_of.end()) throw InputError("unknown bus " + std::to_string(id));
  return it->second;
}

Grid parse_grid_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  try {
    std::vector<Bus> buses;
    for (const auto& b : doc.at("buses")) buses.push_back({b.at("id").get<int>(), b.value("alterable", true)});
    std::vector<Line> lines;
    for (const auto& l : doc.at("lines"))
      lines.push_back({l.at("from").get<int>(), l.at("to").get<int>(), l.at("x").get<double>()});
    return Grid(std::move(buses), std::move(lines));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

namespace {

// Rows of a `mpc.<name> = [ ... ];` block, comments stripped.
std::vector<std::vector<double>> matpower_block(std::string_view text, const std::string& name) {
  const std::string source(text);
  const std::regex opener("mpc\\." + name + "\\s*=\\s*\\[");
  std::smatch m;
  if (!std::regex_search(source, m, opener)) throw InputError("missing mpc." + name + " block");
  std::size_t begin = static_cast<std::size_t>(m.position(0) + m.length(0));
  std::size_t end = source.find(']', begin);
  if (end == std::string::npos) throw InputError("unterminated mpc." + name + " block");

  std::vector<std::vector<double>> rows;
  std::istringstream body(source.substr(begin, end - begin));
  std::string line;
  while (std::getline(body, line)) {
    if (auto pct = line.find('%'); pct != std::string::npos) line.erase(pct);
    std::stringstream pieces(line);
    std::string piece;
    while (std::getline(pieces, piece, ';')) {
      for (char& c : piece)
        if (c == ',') c = ' ';
      std::istringstream fields(piece);
      std::vector<double> row;
      std::string token;
      while (fields >> token) {
        try {
          std::size_t used = 0;
          double v = std::stod(token, &used);
          if (used != token.size()) throw std::invalid_argument(token);
          row.push_back(v);
        } catch (const std::exception&) {
          throw InputError("unparsable row in mpc." + name + ": '" + piece + "'");
        }
      }
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

Grid parse_matpower_case(std::string_view text) {
  auto bus_rows = matpower_block(text, "bus");
  auto branch_rows = matpower_block(text, "branch");

  std::vector<Bus> buses;
  for (const auto& row : bus_rows) buses.push_back({static_cast<BusId>(row[0]), true});

  std::vector<Line> lines;
  for (const auto& row : branch_rows) {
    if (row.size() < 4) throw InputError("unparsable row in mpc.branch: fewer than 4 columns");
    if (row.size() >= 11 && row[10] == 0.0) continue;
    lines.push_back({static_cast<BusId>(row[0]), static_cast<BusId>(row[1]), row[3]});
  }
  return Grid(std::move(buses), std::move(lines));
}

Grid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read grid file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (path.extension() == ".m") return parse_matpower_case(buffer.str());
  return parse_grid_json(buffer.str());
}

WeightedLaplacian build_laplacian(const Grid& grid) {
  const int n = grid.size();
  WeightedLaplacian out;
  out.matrix = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    out.ids.push_back(grid.id_at(i));
    out.index_of.emplace(grid.id_at(i), i);
  }
  for (const Line& line : grid.lines()) {
    const int i = grid.index_of(line.from);
    const int j = grid.index_of(line.to);
    const double w = 1.0 / line.reactance;
    out.matrix(i, i) += w;
    out.matrix(j, j) += w;
    out.matrix(i, j) -= w;
    out.matrix(j, i) -= w;
  }
  return out;
}

Grid randomize_reactances(const Grid& grid, std::uint64_t seed, double lo, double hi) {
  if (!(lo > 0.0)) throw InputError("reactance range lower bound must be positive");
  if (!(lo < hi)) throw InputError("reactance range must satisfy lo < hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(lo, hi);
  std::vector<double> xs;
  xs.reserve(grid.lines().size());
  for (std::size_t i = 0; i < grid.lines().size(); ++i) xs.push_back(draw(rng));
  return grid.with_reactances(xs);
}

BusSet effective_unalterable(const Grid& grid, const BusSet& unalterable) {
  BusSet out = grid.unalterable_buses();
  for (BusId id : unalterable) {
    grid.index_of(id);
    out.insert(id);
  }
  return out;
}

}  // namespace unobs
