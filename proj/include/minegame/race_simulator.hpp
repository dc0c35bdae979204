#pragma once

// Monte-Carlo simulation of a single block race between the participating
// miners. Two models:
//   exponential  each miner's block time is Exp(lambda_k), lambda_k = w_k / D
//   discrete     time advances in ticks; every hash query succeeds with
//                probability 1/D, the first success wins
// Cost follows the expected-cost formula: c_k * T is counted only on the
// event that miner k wins. The all-pay figure charges c_k * T to every
// participant and is a diagnostic outside that model.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minegame/game_core.hpp"
#include "minegame/philox.hpp"

namespace minegame::race {

struct RaceOutcome {
  std::optional<std::size_t> winner;
  double finish_time = 0.0;
  std::vector<double> reward;        // R to the winner
  std::vector<double> cost;          // c_k T for the winner only
  std::vector<double> all_pay_cost;  // c_k T for every participant
};

// Both throw std::invalid_argument when no participant has a positive rate.
RaceOutcome sample_race_exponential(const GameConfig& cfg, const PureProfile& profile, PhiloxStream& rng);

struct DiscreteOptions {
  // Ticks per unit of operating time; a miner performs w_k / ticks_per_unit
  // queries per tick, with the fractional part resolved by a Bernoulli draw
  // each tick.
  double ticks_per_unit = 1.0;
};
// Requires D >= 1.
RaceOutcome sample_race_discrete(const GameConfig& cfg, const PureProfile& profile, PhiloxStream& rng,
                                 const DiscreteOptions& options = {});

enum class RaceMode { exponential, discrete };
std::string to_string(RaceMode mode);

struct Estimate {
  double mean = 0.0;
  double std_err = 0.0;
};

struct RaceStats {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  RaceMode mode = RaceMode::exponential;
  std::vector<Estimate> win_prob;
  std::vector<Estimate> reward;
  std::vector<Estimate> cost;
  std::vector<Estimate> utility;
  std::vector<Estimate> all_pay_cost;
  Estimate finish_time;
  // Mean finish time over the trials miner k won (zero when it never won).
  std::vector<Estimate> finish_time_given_win;
  std::vector<std::uint64_t> wins;
};

struct SimulationOptions {
  RaceMode mode = RaceMode::exponential;
  DiscreteOptions discrete;
  unsigned threads = 0;  // 0: hardware concurrency
  // Trials per work unit. Results depend on this value (it fixes the
  // summation order) but not on the thread count.
  std::uint64_t chunk_size = 1U << 16;
};

// Trial i draws from PhiloxStream(seed, i).
RaceStats estimate_stats(const GameConfig& cfg, const PureProfile& profile, std::uint64_t trials, std::uint64_t seed,
                         const SimulationOptions& options = {});

std::vector<double> sample_finish_times(const GameConfig& cfg, const PureProfile& profile, std::uint64_t trials,
                                        std::uint64_t seed, const SimulationOptions& options = {});

// sup |F_n(t) - (1 - exp(-rate t))| of the sample against Exp(rate).
double ks_distance_exponential(std::span<const double> samples, double rate);

}  // namespace minegame::race
