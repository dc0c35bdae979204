#pragma once

// Closed-form equilibrium characterisation of the two-miner participation
// game, in exact rational arithmetic.
//
// The game is written in normalised form: miner 1 has unit cost and unit
// efficiency, miner 2 has cost ratio p_c = c2/c1 and efficiency ratio
// p_v = v2/v1, and d = D/v1. Everything below depends on the reward only
// through z = R/d. Miner indices are 0 (miner 1) and 1 (miner 2).

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "minegame/game_core.hpp"
#include "minegame/rational.hpp"

namespace minegame::two_miner {

struct TwoMinerParams {
  Rational p_v;  // v2 / v1
  Rational p_c;  // c2 / c1
  Rational d;    // D / v1

  void validate() const;
  bool normalized() const { return p_v >= 1; }
};

// Normalised parameters of a raw two-miner game.
TwoMinerParams params_from_config(const ExactGameConfig& cfg);
ExactGameConfig config_from_params(const TwoMinerParams& params, const Rational& reward);

// Relabels the miners so that p_v >= 1. `swapped` records whether miner 1
// and miner 2 traded places.
struct NormalizedParams {
  TwoMinerParams params;
  bool swapped = false;
};
NormalizedParams normalize(const TwoMinerParams& params);

// R/d values at which one miner's utility in a pure profile changes sign.
struct BreakEvenPoints {
  Rational miner1_shared;  // U1(1,1) = 0:  1/(1+p_v p_c)
  Rational miner2_shared;  // U2(1,1) = 0:  p_c/(1+p_v p_c)
  Rational miner2_alone;   // U2(0,1) = 0:  1/p_v
  Rational miner1_alone;   // U1(1,0) = 0:  1
};
BreakEvenPoints break_even_points(const TwoMinerParams& params);

// Stay-out probability of `miner` that leaves the *other* miner indifferent
// between mining and abstaining at reward ratio z. For miner 0 this is
//   p_v p_c (z - p_c/(1+p_v p_c)) / ((2 p_v p_c + 1)/(p_v (1+p_v p_c)) - z),
// for miner 1
//   (z - 1/(1+p_v p_c)) / (p_v p_c ((2 + p_v p_c)/(1+p_v p_c) - z)).
// Empty at the pole. Both are strictly increasing below their pole.
std::optional<Rational> indifference_stay_out(std::size_t miner, const Rational& z, const TwoMinerParams& params);
Rational indifference_pole(std::size_t miner, const TwoMinerParams& params);

// u_k(participate, x_l) - u_k(abstain, x_l) as a function of the opponent's
// stay-out probability.
Rational payoff_difference(std::size_t k, const Rational& opponent_stay_out, const TwoMinerParams& params,
                           const Rational& reward);

// Where the indifference value of `miner` sits relative to [0, 1]. At or past
// the pole the opponent strictly prefers to mine whatever `miner` does, which
// is the behaviour of the above_one branch, so it is reported as such.
enum class IndifferenceBranch { below_zero, zero, interior, one, above_one };
IndifferenceBranch indifference_branch(std::size_t miner, const Rational& z, const TwoMinerParams& params);

enum class BestResponse { abstain_only, participate_only, any };
BestResponse best_response_2p(std::size_t k, const Rational& opponent_stay_out, const TwoMinerParams& params,
                              const Rational& reward);

enum class EquilibriumKind { pure, mixed_point, continuum };

// One component of the equilibrium set. Pure and mixed points carry both
// stay-out probabilities. A continuum fixes one miner's (pure) strategy and
// lets the free miner's stay-out probability range over [lower, upper].
struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::pure;
  std::array<Rational, 2> stay_out{};
  std::size_t free_miner = 0;
  Rational lower = 0;
  Rational upper = 0;

  static Equilibrium pure(bool miner1_participates, bool miner2_participates);
  static Equilibrium mixed(const Rational& x1, const Rational& x2);
  // Collapses to a pure point when lower == upper and it is 0 or 1.
  static Equilibrium continuum(std::size_t free_miner, const Rational& fixed_stay_out, const Rational& lower,
                               const Rational& upper);

  ExactMixedProfile at(const Rational& free_stay_out) const;
  // `count` evenly spaced members (endpoints included); a single point for
  // pure and mixed components.
  std::vector<ExactMixedProfile> samples(std::size_t count) const;
  bool contains(const Rational& x1, const Rational& x2) const;
  Equilibrium swapped() const;

  std::string describe() const;
  friend bool operator==(const Equilibrium&, const Equilibrium&) = default;
};

struct EquilibriumSet {
  std::vector<Equilibrium> members;

  // Every pure profile in the set, isolated or at a continuum endpoint,
  // sorted by mask.
  std::vector<PureProfile> pure_profiles() const;
  // Pure profiles listed as isolated components.
  std::vector<PureProfile> isolated_pure_profiles() const;
  bool contains(const Rational& x1, const Rational& x2) const;
};

enum class CostCase { costly_second /*p_c >= 1*/, moderate /*1-1/p_v <= p_c < 1*/, cheap_second /*p_c < 1-1/p_v*/ };
CostCase cost_case(const TwoMinerParams& params);

// Exact equilibrium set; requires p_v >= 1 (throws std::invalid_argument
// otherwise).
EquilibriumSet nash_set_2p(const TwoMinerParams& params, const Rational& reward);

// Accepts any p_v > 0, relabels internally and reports in the caller's
// miner order.
EquilibriumSet solve_two_miner(const TwoMinerParams& params, const Rational& reward);

// Regions of the (p_c, R/d) plane for fixed p_v >= 1:
//   a  unique all-participate
//   b  both pure profiles and one interior mixed point
//   c  unique all-abstain
//   d  only miner 2 mines
enum class RegionLabel { a, b, c, d, boundary_ab, boundary_bc, boundary_cd, boundary_da, corner };
RegionLabel classify_region(const TwoMinerParams& params, const Rational& reward);
std::string to_string(RegionLabel label);
std::string to_string(IndifferenceBranch branch);
std::string to_string(BestResponse response);

// Open R/d interval on which all-abstain and all-participate coexist as
// isolated equilibria. Empty (nullopt) when p_c <= 1 - 1/p_v.
struct OpenInterval {
  Rational lower;
  Rational upper;
  bool contains(const Rational& z) const { return lower < z && z < upper; }
};
std::optional<OpenInterval> hysteresis_band_2p(const TwoMinerParams& params);

// R/d values at which the equilibrium set changes, ascending, with a short
// formula label each.
struct Breakpoint {
  std::string label;
  Rational r_over_d;
};
std::vector<Breakpoint> breakpoints_2p(const TwoMinerParams& params);

}  // namespace minegame::two_miner
