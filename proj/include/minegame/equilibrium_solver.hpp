#pragma once

// General-n equilibrium computation: pure-profile enumeration, symmetric and
// two-miner mixed equilibria by indifference root finding, the regret check
// used to verify every reported equilibrium, and the hysteresis / threshold
// scans over reward grids.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "minegame/game_core.hpp"

namespace minegame::solver {

struct SolverSettings {
  double regret_tolerance = 1e-9;
  double bisection_tolerance = 1e-12;
  std::size_t grid_points = 1024;

  void validate() const;
};

// Every pure profile from which no miner gains by flipping its own choice
// (weak inequality, so ties are equilibria). Ordered by profile mask.
template <class T>
std::vector<PureProfile> pure_nash_enumerate(const BasicGameConfig<T>& cfg);

template <class T>
bool is_pure_nash(const BasicGameConfig<T>& cfg, const PureProfile& s);

// Largest gain any single miner gets from a pure deviation. Zero exactly at
// an equilibrium; two pure deviations suffice because expected utility is
// affine in the miner's own stay-out probability.
template <class T>
T regret(const BasicGameConfig<T>& cfg, const BasicMixedProfile<T>& x);

// Indifference Δ(p) = u(participate) - u(abstain) for one of n identical
// miners when each of the other n-1 stays out with probability p. Uses the
// binomial distribution of the number of participating opponents.
double symmetric_indifference(std::size_t n, double d, double reward, double p);

// Zeros of f strictly inside (0,1): sign changes on a uniform grid, each
// refined by bisection. Exact zeros at interior grid nodes are reported too.
std::vector<double> interior_roots(const std::function<double(double)>& f, const SolverSettings& settings);

// Symmetric mixed equilibria (everyone stays out with the same p in (0,1)).
std::vector<MixedProfile> symmetric_mixed_nash(std::size_t n, double cost_rate, double efficiency, double difficulty,
                                               double reward, const SolverSettings& settings = {});

// Fully mixed equilibria of a two-miner game, found by solving each miner's
// indifference in the opponent's stay-out probability.
std::vector<MixedProfile> two_miner_mixed_nash(const GameConfig& cfg, const SolverSettings& settings = {});

// Grid rewards at which both all-abstain and all-participate are equilibria
// of the n-miner symmetric game.
template <class T>
std::vector<T> hysteresis_interval(std::size_t n, const T& cost_rate, const T& efficiency, const T& difficulty,
                                   const std::vector<T>& reward_grid);

// Smallest grid reward at which all-participate is an equilibrium.
template <class T>
std::optional<T> participation_threshold(std::size_t n, const T& cost_rate, const T& efficiency, const T& difficulty,
                                         const std::vector<T>& reward_grid);

// Off-grid threshold: the reward at which a miner's utility in the
// all-participate profile is zero, i.e. expected cost / win probability.
template <class T>
T exact_participation_threshold(std::size_t n, const T& cost_rate, const T& efficiency, const T& difficulty);

// ---------------------------------------------------------------------------

namespace detail {

// U_k(s) and U_k(s with k flipped) from the participants' total rate.
template <class T>
bool no_profitable_flip(const BasicGameConfig<T>& cfg, const PureProfile& s, const T& total, std::size_t k) {
  const auto& m = cfg.miner(k);
  const T w = hash_rate(m);
  if (s.participates(k)) {
    // Staying out pays 0.
    if (total == 0) return true;
    const T u = (w / total) * (cfg.reward() - cfg.difficulty() * m.cost_rate / total);
    return u >= 0;
  }
  // Currently 0; joining pays the flipped utility.
  const T joined = total + w;
  if (joined == 0) return true;
  const T u = (w / joined) * (cfg.reward() - cfg.difficulty() * m.cost_rate / joined);
  return u <= 0;
}

}  // namespace detail

template <class T>
bool is_pure_nash(const BasicGameConfig<T>& cfg, const PureProfile& s) {
  const T total = total_hash_rate(cfg, s);
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    if (!detail::no_profitable_flip(cfg, s, total, k)) return false;
  }
  return true;
}

template <class T>
std::vector<PureProfile> pure_nash_enumerate(const BasicGameConfig<T>& cfg) {
  const std::size_t n = cfg.size();
  if (n > kMaxEnumeratedMiners) throw std::length_error("pure enumeration supports at most 24 miners");
  std::vector<PureProfile> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const PureProfile s = PureProfile::from_mask(mask, n);
    if (is_pure_nash(cfg, s)) out.push_back(s);
  }
  return out;
}

template <class T>
T regret(const BasicGameConfig<T>& cfg, const BasicMixedProfile<T>& x) {
  if (x.size() != cfg.size()) throw std::invalid_argument("profile length does not match miner count");
  T worst = 0;
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    const T out = deviation_utility(cfg, x, k, false);
    const T in = deviation_utility(cfg, x, k, true);
    const T current = x.stay_out(k) * out + (1 - x.stay_out(k)) * in;
    const T best = out > in ? out : in;
    const T gain = best - current;
    if (gain > worst) worst = gain;
  }
  return worst;
}

template <class T>
std::vector<T> hysteresis_interval(std::size_t n, const T& cost_rate, const T& efficiency, const T& difficulty,
                                   const std::vector<T>& reward_grid) {
  std::vector<T> out;
  const PureProfile none = PureProfile::uniform(n, false);
  const PureProfile all = PureProfile::uniform(n, true);
  for (const T& reward : reward_grid) {
    const auto cfg = make_symmetric_config<T>(n, cost_rate, efficiency, difficulty, reward);
    const auto eq = pure_nash_enumerate(cfg);
    const bool has_none = std::find(eq.begin(), eq.end(), none) != eq.end();
    const bool has_all = std::find(eq.begin(), eq.end(), all) != eq.end();
    if (has_none && has_all) out.push_back(reward);
  }
  return out;
}

template <class T>
std::optional<T> participation_threshold(std::size_t n, const T& cost_rate, const T& efficiency, const T& difficulty,
                                         const std::vector<T>& reward_grid) {
  const PureProfile all = PureProfile::uniform(n, true);
  std::optional<T> best;
  for (const T& reward : reward_grid) {
    const auto cfg = make_symmetric_config<T>(n, cost_rate, efficiency, difficulty, reward);
    const auto eq = pure_nash_enumerate(cfg);
    if (std::find(eq.begin(), eq.end(), all) == eq.end()) continue;
    if (!best || reward < *best) best = reward;
  }
  return best;
}

template <class T>
T exact_participation_threshold(std::size_t n, const T& cost_rate, const T& efficiency, const T& difficulty) {
  // Utility is P*R - CS with P and CS independent of R.
  const auto cfg = make_symmetric_config<T>(n, cost_rate, efficiency, difficulty, T(0));
  const PureProfile all = PureProfile::uniform(n, true);
  const T p = win_probability(cfg, all, 0);
  if (p == 0) throw std::invalid_argument("all-participate profile has no race");
  return T(expected_cost(cfg, all, 0) / p);
}

}  // namespace minegame::solver
