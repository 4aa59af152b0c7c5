// unobs: unobservable power-injection attack analysis for DC grid models.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "unobs/attack.hpp"
#include "unobs/oracle.hpp"
#include "unobs/placement.hpp"
#include "unobs/report.hpp"
#include "unobs/structural_rank.hpp"

namespace {

using namespace unobs;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitMismatch = 3;

struct CommonArgs {
  std::string grid_path;
  int model = 1;
  std::string unalterable;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string randomize_x;
};

struct Loaded {
  Grid grid;
  BusSet unalterable;
  ToleranceConfig tol;
  PmuModel model;
  Provenance provenance;
};

BusSet parse_ids(const std::string& text, const char* what) {
  BusSet out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    try {
      std::size_t used = 0;
      int id = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.insert(id);
    } catch (const std::exception&) {
      throw InputError(std::string("bad bus id '") + token + "' in " + what);
    }
  }
  return out;
}

std::pair<double, double> parse_range(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw InputError("--randomize-x expects lo,hi");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InputError("--randomize-x expects two numbers, got '" + text + "'");
  }
}

std::string sha256_of_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read grid file " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

Loaded load(const CommonArgs& args) {
  Provenance prov;
  prov.input_sha256 = sha256_of_file(args.grid_path);
  Grid grid = load_grid(args.grid_path);

  ToleranceConfig tol{args.tol};
  tol.validate();
  prov.tolerance = args.tol;

  if (args.seed || !args.randomize_x.empty()) {
    auto range = args.randomize_x.empty() ? std::pair{0.8, 1.2} : parse_range(args.randomize_x);
    std::uint64_t seed = args.seed.value_or(0);
    grid = randomize_reactances(grid, seed, range.first, range.second);
    prov.seed = seed;
    prov.reactance_range = range;
  }

  PmuModel model = pmu_model_from_int(args.model);
  prov.model = args.model;
  BusSet unalterable = effective_unalterable(grid, parse_ids(args.unalterable, "--unalterable"));
  return {std::move(grid), std::move(unalterable), tol, model, prov};
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--grid", args.grid_path, "Grid file (.m MATPOWER case or JSON)")->required();
  cmd->add_option("--model", args.model, "PMU model: 1 voltage only, 2 voltage and branch currents");
  cmd->add_option("--unalterable", args.unalterable, "Comma-separated unalterable bus ids");
  cmd->add_option("--tol", args.tol, "Absolute rank tolerance override");
  cmd->add_option("--seed", args.seed, "Seed for reactance randomization");
  cmd->add_option("--randomize-x", args.randomize_x, "Randomize reactances uniformly in lo,hi");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

int run_analyze(const CommonArgs& common, const std::string& pmu_text, const std::string& out_path) {
  Loaded in = load(common);
  BusSet pmus = parse_ids(pmu_text, "--pmus");
  if (pmus.empty()) throw InputError("--pmus must name at least one bus");
  BusSet effective = normalize_pmu_model(in.grid, pmus, in.model);
  AttackSet attacks = sparsest_attacks(in.grid, effective, in.unalterable, in.tol);
  std::string text = attack_report_json(in.grid, attacks, in.provenance).dump(2) + "\n";
  if (!out_path.empty()) write_text(out_path, text);
  std::cout << text;
  return kExitOk;
}

int run_place(const CommonArgs& common, std::optional<int> max_pmus, const std::string& trace_path,
              const std::string& json_path, std::optional<BusId> first_bus) {
  Loaded in = load(common);
  int budget = max_pmus.value_or(in.grid.size());
  PlacementTrace trace = greedy_place(in.grid, in.unalterable, in.model, budget, first_bus);
  std::string csv = trace_csv(trace);
  if (!trace_path.empty()) write_text(trace_path, csv);
  if (!json_path.empty()) write_text(json_path, trace_json(in.grid, trace, in.provenance).dump(2) + "\n");
  std::cout << csv;
  const int k = static_cast<int>(trace.final_pmus.size());
  const int n = in.grid.size();
  char percent[32];
  std::snprintf(percent, sizeof percent, "%.1f", 100.0 * k / n);
  std::cout << "PMUs used: " << k << " / " << n << " (" << percent << "%)"
            << (trace.budget_exhausted ? " budget exhausted" : "") << "\n";
  return kExitOk;
}

int run_feasibility(const CommonArgs& common, const std::string& pmu_text, const std::string& attack_text) {
  Loaded in = load(common);
  BusSet pmus = normalize_pmu_model(in.grid, parse_ids(pmu_text, "--pmus"), in.model);
  BusSet attack_set = parse_ids(attack_text, "--attack-set");
  FeasibilityVerdict verdict = attack_feasibility(in.grid, attack_set, pmus, in.unalterable);
  std::cout << verdict_json(verdict, in.provenance).dump(2) << "\n";
  return kExitOk;
}

int run_oracle(const CommonArgs& common, const std::string& pmu_text, bool check) {
  Loaded in = load(common);
  if (in.grid.size() > kOracleMaxBuses)
    throw InputError("oracle supports at most " + std::to_string(kOracleMaxBuses) + " buses, got " +
                     std::to_string(in.grid.size()));
  BusSet pmus = parse_ids(pmu_text, "--pmus");
  if (pmus.empty()) throw InputError("--pmus must name at least one bus");
  BusSet effective = normalize_pmu_model(in.grid, pmus, in.model);

  ExtendedInt sparsity = brute_min_sparsity(in.grid, pmus, in.unalterable, in.model, in.tol);
  ExtendedInt kappa = brute_vulnerable_connectivity(in.grid, effective, in.unalterable);

  nlohmann::ordered_json out;
  out["brute_min_sparsity"] = to_json(sparsity);
  out["brute_kappa_bar"] = to_json(kappa);
  bool agree = true;
  if (check) {
    AttackSet attacks = sparsest_attacks(in.grid, effective, in.unalterable, in.tol);
    agree = attacks.min_sparsity == sparsity && attacks.kappa_bar == kappa && kappa.plus(1) == sparsity;
    out["production_min_sparsity"] = to_json(attacks.min_sparsity);
    out["production_kappa_bar"] = to_json(attacks.kappa_bar);
    out["agree"] = agree;
  }
  out["provenance"] = to_json(in.provenance);
  std::cout << out.dump(2) << "\n";
  return agree ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unobservable power-injection attack analysis for DC grid models"};
  app.require_subcommand(1);

  CommonArgs analyze_args;
  std::string analyze_pmus;
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Minimum attack sparsity and the sparsest attacks");
  add_common(analyze, analyze_args);
  analyze->add_option("--pmus", analyze_pmus, "Comma-separated PMU bus ids")->required();
  analyze->add_option("--out", analyze_out, "Also write the report to this path");

  CommonArgs place_args;
  std::optional<int> max_pmus;
  std::string trace_path;
  std::string trace_json_path;
  std::optional<BusId> first_bus;
  auto* place = app.add_subcommand("place", "Greedy PMU placement trace");
  add_common(place, place_args);
  place->add_option("--max-pmus", max_pmus, "PMU budget (default: number of buses)");
  place->add_option("--trace", trace_path, "Write the trace CSV to this path");
  place->add_option("--json", trace_json_path, "Write the trace JSON to this path");
  place->add_option("--first-bus", first_bus, "Bus for the first PMU (default: first declared bus)");

  CommonArgs feas_args;
  std::string feas_pmus;
  std::string feas_attack;
  auto* feasibility = app.add_subcommand("feasibility", "Topology-only feasibility of an attack set");
  add_common(feasibility, feas_args);
  feasibility->add_option("--pmus", feas_pmus, "Comma-separated PMU bus ids")->required();
  feasibility->add_option("--attack-set", feas_attack, "Comma-separated attacked bus ids")->required();

  CommonArgs oracle_args;
  std::string oracle_pmus;
  bool oracle_check = false;
  auto* oracle = app.add_subcommand("oracle", "Brute-force ground truth for grids of at most 16 buses");
  add_common(oracle, oracle_args);
  oracle->add_option("--pmus", oracle_pmus, "Comma-separated PMU bus ids")->required();
  oracle->add_flag("--check", oracle_check, "Compare against the production analysis; exit 3 on mismatch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*analyze) return run_analyze(analyze_args, analyze_pmus, analyze_out);
    if (*place) return run_place(place_args, max_pmus, trace_path, trace_json_path, first_bus);
    if (*feasibility) return run_feasibility(feas_args, feas_pmus, feas_attack);
    if (*oracle) return run_oracle(oracle_args, oracle_pmus, oracle_check);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DegenerateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
