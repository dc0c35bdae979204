#include "minegame/analytic_two_miner.hpp"

#include <algorithm>
#include <stdexcept>

namespace minegame::two_miner {
namespace {

std::size_t other(std::size_t k) {
  if (k > 1) throw std::out_of_range("two-miner index must be 0 or 1");
  return 1 - k;
}

Rational joint_rate(const TwoMinerParams& p) { return Rational(p.p_v * p.p_c); }

Rational cheap_cutoff(const TwoMinerParams& p) { return Rational(1 - 1 / p.p_v); }

void require_normalized(const TwoMinerParams& p) {
  p.validate();
  if (!p.normalized()) throw std::invalid_argument("two-miner parameters must satisfy p_v >= 1; call normalize()");
}

PureProfile pure_of(const Rational& x1, const Rational& x2) {
  return PureProfile({x1 == 0 ? 1 : 0, x2 == 0 ? 1 : 0});
}

}  // namespace

void TwoMinerParams::validate() const {
  if (!(p_v > 0) || !(p_c > 0) || !(d > 0)) throw std::invalid_argument("p_v, p_c and d must all be > 0");
}

TwoMinerParams params_from_config(const ExactGameConfig& cfg) {
  if (cfg.size() != 2) throw std::invalid_argument("two-miner analysis needs exactly two miners");
  const auto& m1 = cfg.miner(0);
  const auto& m2 = cfg.miner(1);
  if (!(m1.cost_rate > 0) || !(m2.cost_rate > 0)) throw std::invalid_argument("two-miner analysis needs positive costs");
  TwoMinerParams p{Rational(m2.efficiency / m1.efficiency), Rational(m2.cost_rate / m1.cost_rate),
                   Rational(cfg.difficulty() / m1.efficiency)};
  return p;
}

ExactGameConfig config_from_params(const TwoMinerParams& params, const Rational& reward) {
  params.validate();
  return make_two_miner_config<Rational>(params.p_v, params.p_c, params.d, reward);
}

NormalizedParams normalize(const TwoMinerParams& params) {
  params.validate();
  if (params.normalized()) return {params, false};
  // Miner 2 becomes the unit miner: ratios invert and d is measured in v2.
  return {TwoMinerParams{Rational(1 / params.p_v), Rational(1 / params.p_c), Rational(params.d / params.p_v)}, true};
}

BreakEvenPoints break_even_points(const TwoMinerParams& params) {
  params.validate();
  const Rational one_plus = 1 + joint_rate(params);
  return {Rational(1 / one_plus), Rational(params.p_c / one_plus), Rational(1 / params.p_v), Rational(1)};
}

Rational indifference_pole(std::size_t miner, const TwoMinerParams& params) {
  params.validate();
  const Rational q = joint_rate(params);
  if (miner == 0) return Rational((2 * q + 1) / (params.p_v * (1 + q)));
  if (miner == 1) return Rational((2 + q) / (1 + q));
  throw std::out_of_range("two-miner index must be 0 or 1");
}

std::optional<Rational> indifference_stay_out(std::size_t miner, const Rational& z, const TwoMinerParams& params) {
  const Rational pole = indifference_pole(miner, params);
  if (z == pole) return std::nullopt;
  const Rational q = joint_rate(params);
  if (miner == 0) return Rational(q * (z - params.p_c / (1 + q)) / (pole - z));
  return Rational((z - 1 / (1 + q)) / (q * (pole - z)));
}

Rational payoff_difference(std::size_t k, const Rational& opponent_stay_out, const TwoMinerParams& params,
                           const Rational& reward) {
  params.validate();
  const Rational q = joint_rate(params);
  const Rational z = reward / params.d;
  const Rational scale = params.d / (1 + q);
  if (k == 0) {
    return Rational(scale * ((z - 1 / (1 + q)) + q * (z - (2 + q) / (1 + q)) * opponent_stay_out));
  }
  if (k == 1) {
    return Rational(scale * (q * (z - params.p_c / (1 + q)) +
                             (z - (2 * q + 1) / (params.p_v * (1 + q))) * opponent_stay_out));
  }
  throw std::out_of_range("two-miner index must be 0 or 1");
}

IndifferenceBranch indifference_branch(std::size_t miner, const Rational& z, const TwoMinerParams& params) {
  if (z >= indifference_pole(miner, params)) return IndifferenceBranch::above_one;
  const Rational g = *indifference_stay_out(miner, z, params);
  if (g < 0) return IndifferenceBranch::below_zero;
  if (g == 0) return IndifferenceBranch::zero;
  if (g < 1) return IndifferenceBranch::interior;
  if (g == 1) return IndifferenceBranch::one;
  return IndifferenceBranch::above_one;
}

BestResponse best_response_2p(std::size_t k, const Rational& opponent_stay_out, const TwoMinerParams& params,
                              const Rational& reward) {
  if (opponent_stay_out < 0 || opponent_stay_out > 1) throw std::invalid_argument("stay-out probability outside [0,1]");
  const std::size_t l = other(k);
  const Rational z = reward / params.d;
  switch (indifference_branch(l, z, params)) {
    case IndifferenceBranch::below_zero:
      return BestResponse::abstain_only;
    case IndifferenceBranch::above_one:
      return BestResponse::participate_only;
    case IndifferenceBranch::zero:
      return opponent_stay_out == 0 ? BestResponse::any : BestResponse::abstain_only;
    case IndifferenceBranch::one:
      return opponent_stay_out == 1 ? BestResponse::any : BestResponse::participate_only;
    case IndifferenceBranch::interior: {
      const Rational g = *indifference_stay_out(l, z, params);
      if (opponent_stay_out > g) return BestResponse::abstain_only;
      if (opponent_stay_out == g) return BestResponse::any;
      return BestResponse::participate_only;
    }
  }
  throw std::logic_error("unreachable best-response branch");
}

Equilibrium Equilibrium::pure(bool miner1_participates, bool miner2_participates) {
  Equilibrium e;
  e.kind = EquilibriumKind::pure;
  e.stay_out = {Rational(miner1_participates ? 0 : 1), Rational(miner2_participates ? 0 : 1)};
  return e;
}

Equilibrium Equilibrium::mixed(const Rational& x1, const Rational& x2) {
  if (!(x1 > 0 && x1 < 1 && x2 > 0 && x2 < 1)) throw std::invalid_argument("mixed point must be interior");
  Equilibrium e;
  e.kind = EquilibriumKind::mixed_point;
  e.stay_out = {x1, x2};
  return e;
}

Equilibrium Equilibrium::continuum(std::size_t free_miner, const Rational& fixed_stay_out, const Rational& lower,
                                   const Rational& upper) {
  if (free_miner > 1) throw std::out_of_range("two-miner index must be 0 or 1");
  if (fixed_stay_out != 0 && fixed_stay_out != 1) throw std::invalid_argument("continuum needs a pure fixed miner");
  if (lower < 0 || upper > 1 || lower > upper) throw std::invalid_argument("continuum interval must lie in [0,1]");
  Equilibrium e;
  if (lower == upper && (lower == 0 || lower == 1)) {
    e.kind = EquilibriumKind::pure;
    e.stay_out[free_miner] = lower;
    e.stay_out[other(free_miner)] = fixed_stay_out;
    return e;
  }
  e.kind = EquilibriumKind::continuum;
  e.free_miner = free_miner;
  e.stay_out[other(free_miner)] = fixed_stay_out;
  e.stay_out[free_miner] = lower;
  e.lower = lower;
  e.upper = upper;
  return e;
}

ExactMixedProfile Equilibrium::at(const Rational& free_stay_out) const {
  if (kind != EquilibriumKind::continuum) return ExactMixedProfile({stay_out[0], stay_out[1]});
  if (free_stay_out < lower || free_stay_out > upper) throw std::invalid_argument("point outside continuum interval");
  std::vector<Rational> x = {stay_out[0], stay_out[1]};
  x[free_miner] = free_stay_out;
  return ExactMixedProfile(std::move(x));
}

std::vector<ExactMixedProfile> Equilibrium::samples(std::size_t count) const {
  if (kind != EquilibriumKind::continuum || count < 2) return {at(stay_out[free_miner])};
  std::vector<ExactMixedProfile> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rational t(static_cast<long>(i), static_cast<long>(count - 1));
    t.canonicalize();
    out.push_back(at(lower + (upper - lower) * t));
  }
  return out;
}

bool Equilibrium::contains(const Rational& x1, const Rational& x2) const {
  if (kind != EquilibriumKind::continuum) return stay_out[0] == x1 && stay_out[1] == x2;
  const Rational& fixed = free_miner == 0 ? x2 : x1;
  const Rational& free = free_miner == 0 ? x1 : x2;
  return fixed == stay_out[other(free_miner)] && lower <= free && free <= upper;
}

Equilibrium Equilibrium::swapped() const {
  Equilibrium e = *this;
  std::swap(e.stay_out[0], e.stay_out[1]);
  if (kind == EquilibriumKind::continuum) e.free_miner = other(free_miner);
  return e;
}

std::string Equilibrium::describe() const {
  switch (kind) {
    case EquilibriumKind::pure:
      return "pure(" + pure_of(stay_out[0], stay_out[1]).to_string() + ")";
    case EquilibriumKind::mixed_point:
      return "mixed(" + to_fraction_string(stay_out[0]) + ", " + to_fraction_string(stay_out[1]) + ")";
    case EquilibriumKind::continuum: {
      const std::size_t fixed = other(free_miner);
      return "continuum(x" + std::to_string(fixed + 1) + "=" + to_fraction_string(stay_out[fixed]) + ", x" +
             std::to_string(free_miner + 1) + " in [" + to_fraction_string(lower) + ", " + to_fraction_string(upper) +
             "])";
    }
  }
  return "?";
}

std::vector<PureProfile> EquilibriumSet::pure_profiles() const {
  std::vector<PureProfile> out;
  for (const auto& e : members) {
    if (e.kind == EquilibriumKind::pure) {
      out.push_back(pure_of(e.stay_out[0], e.stay_out[1]));
    } else if (e.kind == EquilibriumKind::continuum) {
      for (const Rational& end : {e.lower, e.upper}) {
        if (end == 0 || end == 1) {
          const auto x = e.at(end);
          out.push_back(pure_of(x.stay_out(0), x.stay_out(1)));
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.mask() < b.mask(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PureProfile> EquilibriumSet::isolated_pure_profiles() const {
  std::vector<PureProfile> out;
  for (const auto& e : members) {
    if (e.kind == EquilibriumKind::pure) out.push_back(pure_of(e.stay_out[0], e.stay_out[1]));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.mask() < b.mask(); });
  return out;
}

bool EquilibriumSet::contains(const Rational& x1, const Rational& x2) const {
  return std::any_of(members.begin(), members.end(), [&](const auto& e) { return e.contains(x1, x2); });
}

CostCase cost_case(const TwoMinerParams& params) {
  require_normalized(params);
  if (params.p_c >= 1) return CostCase::costly_second;
  if (params.p_c >= cheap_cutoff(params)) return CostCase::moderate;
  return CostCase::cheap_second;
}

EquilibriumSet nash_set_2p(const TwoMinerParams& params, const Rational& reward) {
  require_normalized(params);
  if (reward < 0) throw std::invalid_argument("reward must be >= 0");
  const Rational z = reward / params.d;
  const BreakEvenPoints bp = break_even_points(params);
  auto g = [&](std::size_t miner, const Rational& at) { return *indifference_stay_out(miner, at, params); };
  using E = Equilibrium;
  const E none = E::pure(false, false);
  const E both = E::pure(true, true);
  EquilibriumSet set;
  auto& m = set.members;

  switch (cost_case(params)) {
    case CostCase::costly_second: {
      const Rational& low = bp.miner2_shared;
      const Rational& high = bp.miner2_alone;
      if (z < low) {
        m = {none};
      } else if (z == low) {
        m = {none, E::continuum(1, 0, 0, g(1, low))};
      } else if (z < high) {
        m = {none, both, E::mixed(g(0, z), g(1, z))};
      } else if (z == high) {
        m = {both, E::continuum(1, 1, g(1, high), 1)};
      } else {
        m = {both};
      }
      break;
    }
    case CostCase::moderate: {
      const Rational& low = bp.miner1_shared;
      const Rational& high = bp.miner2_alone;
      if (low == high && z == low) {
        // Both boundary continua meet at the corner of the region map.
        m = {E::continuum(0, 0, 0, 1), E::continuum(1, 1, 0, 1)};
      } else if (z < low) {
        m = {none};
      } else if (z == low) {
        m = {none, E::continuum(0, 0, 0, g(0, low))};
      } else if (z < high) {
        m = {none, both, E::mixed(g(0, z), g(1, z))};
      } else if (z == high) {
        m = {both, E::continuum(1, 1, g(1, high), 1)};
      } else {
        m = {both};
      }
      break;
    }
    case CostCase::cheap_second: {
      const Rational& low = bp.miner2_alone;
      const Rational& high = bp.miner1_shared;
      if (z < low) {
        m = {none};
      } else if (z == low) {
        m = {E::continuum(1, 1, 0, 1)};
      } else if (z < high) {
        m = {E::pure(false, true)};
      } else if (z == high) {
        m = {E::continuum(0, 0, 0, 1)};
      } else {
        m = {both};
      }
      break;
    }
  }
  return set;
}

EquilibriumSet solve_two_miner(const TwoMinerParams& params, const Rational& reward) {
  const NormalizedParams norm = normalize(params);
  EquilibriumSet set = nash_set_2p(norm.params, reward);
  if (norm.swapped) {
    for (auto& e : set.members) e = e.swapped();
  }
  return set;
}

RegionLabel classify_region(const TwoMinerParams& params, const Rational& reward) {
  require_normalized(params);
  const Rational z = reward / params.d;
  const BreakEvenPoints bp = break_even_points(params);
  const Rational cutoff = cheap_cutoff(params);
  if (params.p_c == cutoff && z == bp.miner2_alone) return RegionLabel::corner;
  switch (cost_case(params)) {
    case CostCase::costly_second:
    case CostCase::moderate: {
      const Rational& low = params.p_c >= 1 ? bp.miner2_shared : bp.miner1_shared;
      const Rational& high = bp.miner2_alone;
      if (z < low) return RegionLabel::c;
      if (z > high) return RegionLabel::a;
      if (z == low) return RegionLabel::boundary_bc;
      if (z == high) return RegionLabel::boundary_ab;
      return RegionLabel::b;
    }
    case CostCase::cheap_second: {
      const Rational& low = bp.miner2_alone;
      const Rational& high = bp.miner1_shared;
      if (z < low) return RegionLabel::c;
      if (z == low) return RegionLabel::boundary_cd;
      if (z < high) return RegionLabel::d;
      if (z == high) return RegionLabel::boundary_da;
      return RegionLabel::a;
    }
  }
  throw std::logic_error("unreachable region");
}

std::string to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::a: return "a";
    case RegionLabel::b: return "b";
    case RegionLabel::c: return "c";
    case RegionLabel::d: return "d";
    case RegionLabel::boundary_ab: return "ab";
    case RegionLabel::boundary_bc: return "bc";
    case RegionLabel::boundary_cd: return "cd";
    case RegionLabel::boundary_da: return "da";
    case RegionLabel::corner: return "corner";
  }
  return "?";
}

std::string to_string(IndifferenceBranch branch) {
  switch (branch) {
    case IndifferenceBranch::below_zero: return "below_zero";
    case IndifferenceBranch::zero: return "zero";
    case IndifferenceBranch::interior: return "interior";
    case IndifferenceBranch::one: return "one";
    case IndifferenceBranch::above_one: return "above_one";
  }
  return "?";
}

std::string to_string(BestResponse response) {
  switch (response) {
    case BestResponse::abstain_only: return "abstain_only";
    case BestResponse::participate_only: return "participate_only";
    case BestResponse::any: return "any";
  }
  return "?";
}

std::optional<OpenInterval> hysteresis_band_2p(const TwoMinerParams& params) {
  require_normalized(params);
  const BreakEvenPoints bp = break_even_points(params);
  if (params.p_c >= 1) return OpenInterval{bp.miner2_shared, bp.miner2_alone};
  if (params.p_c > cheap_cutoff(params)) return OpenInterval{bp.miner1_shared, bp.miner2_alone};
  return std::nullopt;
}

std::vector<Breakpoint> breakpoints_2p(const TwoMinerParams& params) {
  require_normalized(params);
  const BreakEvenPoints bp = break_even_points(params);
  switch (cost_case(params)) {
    case CostCase::costly_second:
      return {{"p_c/(1+p_v*p_c)", bp.miner2_shared}, {"1/p_v", bp.miner2_alone}};
    case CostCase::moderate:
      if (bp.miner1_shared == bp.miner2_alone) return {{"1/p_v=1/(1+p_v*p_c)", bp.miner2_alone}};
      return {{"1/(1+p_v*p_c)", bp.miner1_shared}, {"1/p_v", bp.miner2_alone}};
    case CostCase::cheap_second:
      return {{"1/p_v", bp.miner2_alone}, {"1/(1+p_v*p_c)", bp.miner1_shared}};
  }
  return {};
}

}  // namespace minegame::two_miner
