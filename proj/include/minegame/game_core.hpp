#pragma once

// Participation game between proof-of-work miners: data model and the
// closed-form per-profile quantities (race rates, win probability, expected
// reward and cost, utility) plus the multilinear mixed-strategy expectation.
//
// Every quantity is a template over the scalar so the same code runs in
// double precision and in exact rational arithmetic (minegame::Rational).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "minegame/rational.hpp"

namespace minegame {

// Largest game for which 2^n profile enumeration is allowed.
inline constexpr std::size_t kMaxEnumeratedMiners = 24;

template <class T>
struct BasicMinerSpec {
  T cost_rate;   // cost per unit operating time
  T efficiency;  // hash queries per unit cost
};

template <class T>
void validate(const BasicMinerSpec<T>& miner) {
  if (miner.cost_rate < 0) throw std::invalid_argument("miner cost_rate must be >= 0");
  if (!(miner.efficiency > 0)) throw std::invalid_argument("miner efficiency must be > 0");
}

// Game G_n: ordered miners, difficulty D (expected hashes per block) and the
// block reward R. Immutable after construction.
template <class T>
class BasicGameConfig {
 public:
  BasicGameConfig(std::vector<BasicMinerSpec<T>> miners, T difficulty, T reward)
      : miners_(std::move(miners)), difficulty_(std::move(difficulty)), reward_(std::move(reward)) {
    if (miners_.size() < 2) throw std::invalid_argument("a game needs at least two miners");
    if (!(difficulty_ > 0)) throw std::invalid_argument("difficulty must be > 0");
    if (reward_ < 0) throw std::invalid_argument("reward must be >= 0");
    for (const auto& m : miners_) validate(m);
  }

  std::size_t size() const { return miners_.size(); }
  const std::vector<BasicMinerSpec<T>>& miners() const { return miners_; }
  const BasicMinerSpec<T>& miner(std::size_t k) const { return miners_.at(k); }
  const T& difficulty() const { return difficulty_; }
  const T& reward() const { return reward_; }

  BasicGameConfig with_reward(T reward) const { return BasicGameConfig(miners_, difficulty_, std::move(reward)); }

 private:
  std::vector<BasicMinerSpec<T>> miners_;
  T difficulty_;
  T reward_;
};

// One participation decision per miner.
class PureProfile {
 public:
  PureProfile() = default;
  explicit PureProfile(std::vector<std::uint8_t> choices);
  PureProfile(std::initializer_list<int> choices);

  // Bit k of mask is miner k's choice.
  static PureProfile from_mask(std::uint64_t mask, std::size_t n);
  static PureProfile uniform(std::size_t n, bool participate);

  std::size_t size() const { return choices_.size(); }
  bool participates(std::size_t k) const { return choices_.at(k) != 0; }
  std::size_t participant_count() const;
  bool nobody_participates() const { return participant_count() == 0; }
  PureProfile flipped(std::size_t k) const;
  std::uint64_t mask() const;
  // "101" style, miner 1 first.
  std::string to_string() const;

  friend bool operator==(const PureProfile&, const PureProfile&) = default;
  friend auto operator<=>(const PureProfile&, const PureProfile&) = default;

 private:
  std::vector<std::uint8_t> choices_;
};

// Mixed profile stored as each miner's probability of staying out.
template <class T>
class BasicMixedProfile {
 public:
  BasicMixedProfile() = default;
  explicit BasicMixedProfile(std::vector<T> stay_out) : stay_out_(std::move(stay_out)) {
    for (const auto& x : stay_out_) {
      if (x < 0 || x > 1) throw std::invalid_argument("stay-out probability must lie in [0,1]");
    }
  }

  static BasicMixedProfile from_pure(const PureProfile& s) {
    std::vector<T> x(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) x[k] = s.participates(k) ? T(0) : T(1);
    return BasicMixedProfile(std::move(x));
  }
  static BasicMixedProfile uniform(std::size_t n, const T& stay_out) {
    return BasicMixedProfile(std::vector<T>(n, stay_out));
  }

  std::size_t size() const { return stay_out_.size(); }
  const T& stay_out(std::size_t k) const { return stay_out_.at(k); }
  const std::vector<T>& stay_out() const { return stay_out_; }

  BasicMixedProfile with(std::size_t k, T stay_out) const {
    BasicMixedProfile copy = *this;
    if (stay_out < 0 || stay_out > 1) throw std::invalid_argument("stay-out probability must lie in [0,1]");
    copy.stay_out_.at(k) = std::move(stay_out);
    return copy;
  }

  friend bool operator==(const BasicMixedProfile&, const BasicMixedProfile&) = default;

 private:
  std::vector<T> stay_out_;
};

using MinerSpec = BasicMinerSpec<double>;
using GameConfig = BasicGameConfig<double>;
using MixedProfile = BasicMixedProfile<double>;
using ExactMinerSpec = BasicMinerSpec<Rational>;
using ExactGameConfig = BasicGameConfig<Rational>;
using ExactMixedProfile = BasicMixedProfile<Rational>;

namespace detail {

template <class T>
void check_profile(const BasicGameConfig<T>& cfg, std::size_t profile_size, std::size_t k) {
  if (profile_size != cfg.size()) throw std::invalid_argument("profile length does not match miner count");
  if (k >= cfg.size()) throw std::out_of_range("miner index out of range");
}

}  // namespace detail

// Linear hash-rate model w = v * c.
template <class T>
T hash_rate(const BasicMinerSpec<T>& miner) {
  return T(miner.efficiency * miner.cost_rate);
}

template <class T>
T poisson_rate(const BasicMinerSpec<T>& miner, bool participating, const T& difficulty) {
  if (!(difficulty > 0)) throw std::invalid_argument("difficulty must be > 0");
  if (!participating) return T(0);
  return T(hash_rate(miner) / difficulty);
}

// Sum of hash rates of the participants.
template <class T>
T total_hash_rate(const BasicGameConfig<T>& cfg, const PureProfile& s) {
  if (s.size() != cfg.size()) throw std::invalid_argument("profile length does not match miner count");
  T total = 0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (s.participates(i)) total += hash_rate(cfg.miner(i));
  }
  return total;
}

// Probability that miner k finds the block first. Zero for non-participants
// and for every miner when the participants' total rate is zero (no block).
template <class T>
T win_probability(const BasicGameConfig<T>& cfg, const PureProfile& s, std::size_t k) {
  detail::check_profile(cfg, s.size(), k);
  if (!s.participates(k)) return T(0);
  const T total = total_hash_rate(cfg, s);
  if (total == 0) return T(0);
  return T(hash_rate(cfg.miner(k)) / total);
}

template <class T>
T expected_reward(const BasicGameConfig<T>& cfg, const PureProfile& s, std::size_t k) {
  return T(win_probability(cfg, s, k) * cfg.reward());
}

// Cost c_k * T charged on the event that miner k wins:
// c_k λ_k / (Σλ)^2 = P_k * D c_k / Σw.
template <class T>
T expected_cost(const BasicGameConfig<T>& cfg, const PureProfile& s, std::size_t k) {
  detail::check_profile(cfg, s.size(), k);
  if (!s.participates(k)) return T(0);
  const T total = total_hash_rate(cfg, s);
  if (total == 0) return T(0);
  const auto& m = cfg.miner(k);
  return T((hash_rate(m) / total) * (cfg.difficulty() * m.cost_rate / total));
}

template <class T>
T utility(const BasicGameConfig<T>& cfg, const PureProfile& s, std::size_t k) {
  detail::check_profile(cfg, s.size(), k);
  if (!s.participates(k)) return T(0);
  const T total = total_hash_rate(cfg, s);
  if (total == 0) return T(0);
  const auto& m = cfg.miner(k);
  return T((hash_rate(m) / total) * (cfg.reward() - cfg.difficulty() * m.cost_rate / total));
}

// Multilinear expectation of U_k under independent mixing: the sum over all
// 2^n pure profiles of (product of choice probabilities) * U_k(profile).
template <class T>
T expected_utility(const BasicGameConfig<T>& cfg, const BasicMixedProfile<T>& x, std::size_t k) {
  detail::check_profile(cfg, x.size(), k);
  const std::size_t n = cfg.size();
  if (n > kMaxEnumeratedMiners) throw std::length_error("too many miners for 2^n expectation");
  T sum = 0;
  std::vector<std::uint8_t> choices(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    T weight = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const bool in = (mask >> i) & 1U;
      choices[i] = in ? 1 : 0;
      weight *= in ? T(1 - x.stay_out(i)) : x.stay_out(i);
      if (weight == 0) break;
    }
    if (weight == 0) continue;
    sum += weight * utility(cfg, PureProfile(choices), k);
  }
  return sum;
}

// u_k(e, x_-k): miner k plays the pure action, everyone else keeps mixing.
template <class T>
T deviation_utility(const BasicGameConfig<T>& cfg, const BasicMixedProfile<T>& x, std::size_t k, bool participate) {
  detail::check_profile(cfg, x.size(), k);
  return expected_utility(cfg, x.with(k, participate ? T(0) : T(1)), k);
}

// Two-miner game in normalised form: miner 1 is (c=1, v=1), miner 2 is
// (c=p_c, v=p_v) and D = d.
template <class T>
BasicGameConfig<T> make_two_miner_config(const T& p_v, const T& p_c, const T& d, const T& reward) {
  if (!(p_v > 0) || !(p_c > 0) || !(d > 0)) throw std::invalid_argument("p_v, p_c and d must be > 0");
  return BasicGameConfig<T>({{T(1), T(1)}, {p_c, p_v}}, d, reward);
}

// n identical miners (c, v).
template <class T>
BasicGameConfig<T> make_symmetric_config(std::size_t n, const T& cost_rate, const T& efficiency, const T& difficulty,
                                         const T& reward) {
  return BasicGameConfig<T>(std::vector<BasicMinerSpec<T>>(n, BasicMinerSpec<T>{cost_rate, efficiency}), difficulty,
                            reward);
}

}  // namespace minegame
