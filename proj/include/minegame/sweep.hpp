#pragma once

// Sweep drivers behind the command-line tool. Each run_* function is pure:
// it validates its spec, computes every row, checks every emitted
// equilibrium's regret and returns the rendered artifacts as strings. The
// CLI only decides where they are written.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "minegame/equilibrium_solver.hpp"
#include "minegame/game_core.hpp"
#include "minegame/race_simulator.hpp"
#include "minegame/rational.hpp"

namespace minegame::sweep {

// Error raised for an invalid sweep specification (CLI exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RewardRange {
  Rational min = 0;
  Rational max = 150;
  Rational step = 1;

  void validate() const;
  std::vector<Rational> grid() const;
};

// Tabular result; rendered as CSV (LF line endings, '.' decimals) or as a
// JSON array of row objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  std::string to_json() const;
};

struct Artifacts {
  Table table;
  Table breakpoints;  // two-miner sweeps only
  std::string svg;
  std::string json;   // simulate only
  bool passed = true;
};

struct TwoMinerSweepSpec {
  Rational p_v = 2;
  Rational p_c = Rational(4, 5);
  Rational d = 100;
  RewardRange reward;
};

struct SymmetricSweepSpec {
  std::vector<std::size_t> miner_counts = {2, 3, 4, 5, 6};
  Rational d = 100;
  RewardRange reward;
  solver::SolverSettings settings;
};

struct RegionMapSpec {
  Rational p_v = 2;
  Rational p_c_min = Rational(1, 100);
  Rational p_c_max = Rational(201, 100);
  std::size_t p_c_points = 201;
  Rational r_over_d_min = 0;
  Rational r_over_d_max = 1;
  std::size_t r_over_d_points = 201;
};

struct ThresholdSpec {
  std::vector<std::size_t> miner_counts = {2, 3, 4, 5, 6};
  Rational d = 100;
  RewardRange reward;
};

enum class CostAccounting { winner_pays, all_pay };

struct SimulateSpec {
  std::vector<MinerSpec> miners;
  double difficulty = 100;
  double reward = 100;
  PureProfile profile;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  race::RaceMode mode = race::RaceMode::exponential;
  double ticks_per_unit = 1.0;
  CostAccounting cost_accounting = CostAccounting::winner_pays;
  unsigned threads = 0;
  double sigma_threshold = 4.0;
};

// Canonical column sets, fixed per mode.
const std::vector<std::string>& two_miner_header();
const std::vector<std::string>& symmetric_header();
const std::vector<std::string>& region_map_header();
const std::vector<std::string>& threshold_header();

Artifacts run_two_miner_sweep(const TwoMinerSweepSpec& spec);
Artifacts run_symmetric_sweep(const SymmetricSweepSpec& spec);
Artifacts run_region_map(const RegionMapSpec& spec, bool with_svg = false);
Artifacts run_threshold(const ThresholdSpec& spec);
// `passed` is false when any estimator misses its closed form by more than
// sigma_threshold standard errors.
Artifacts run_simulate(const SimulateSpec& spec);

}  // namespace minegame::sweep
