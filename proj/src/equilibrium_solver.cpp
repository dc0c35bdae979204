#include "minegame/equilibrium_solver.hpp"

#include <cmath>

namespace minegame::solver {

void SolverSettings::validate() const {
  if (!(regret_tolerance > 0)) throw std::invalid_argument("regret_tolerance must be > 0");
  if (!(bisection_tolerance > 0)) throw std::invalid_argument("bisection_tolerance must be > 0");
  if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
}

double symmetric_indifference(std::size_t n, double d, double reward, double p) {
  if (n < 2) throw std::invalid_argument("symmetric game needs n >= 2");
  const std::size_t others = n - 1;
  double sum = 0.0;
  double binom = 1.0;  // C(others, m)
  for (std::size_t m = 0; m <= others; ++m) {
    const double weight = binom * std::pow(1.0 - p, static_cast<double>(m)) *
                          std::pow(p, static_cast<double>(others - m));
    const double racers = static_cast<double>(m + 1);
    sum += weight * (reward - d / racers) / racers;
    binom = binom * static_cast<double>(others - m) / static_cast<double>(m + 1);
  }
  return sum;
}

std::vector<double> interior_roots(const std::function<double(double)>& f, const SolverSettings& settings) {
  settings.validate();
  const std::size_t cells = settings.grid_points;
  std::vector<double> nodes(cells + 1);
  std::vector<double> values(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    nodes[i] = static_cast<double>(i) / static_cast<double>(cells);
    values[i] = f(nodes[i]);
  }
  std::vector<double> roots;
  for (std::size_t i = 0; i < cells; ++i) {
    if (values[i] == 0.0) {
      if (i > 0) roots.push_back(nodes[i]);
      continue;
    }
    if (values[i + 1] == 0.0) continue;
    if ((values[i] < 0.0) == (values[i + 1] < 0.0)) continue;
    double lo = nodes[i], hi = nodes[i + 1];
    double f_lo = values[i], f_hi = values[i + 1];
    const bool lo_negative = f_lo < 0.0;
    bool exact = false;
    while (hi - lo > settings.bisection_tolerance) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = f(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        exact = true;
        break;
      }
      if ((fm < 0.0) == lo_negative) {
        lo = mid;
        f_lo = fm;
      } else {
        hi = mid;
        f_hi = fm;
      }
    }
    if (exact) {
      roots.push_back(lo);
      continue;
    }
    // One secant step inside the final bracket takes a smooth f from the
    // bisection width down to rounding level.
    const double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    roots.push_back(std::clamp(secant, lo, hi));
  }
  return roots;
}

std::vector<MixedProfile> symmetric_mixed_nash(std::size_t n, double cost_rate, double efficiency, double difficulty,
                                               double reward, const SolverSettings& settings) {
  if (n < 2) throw std::invalid_argument("symmetric game needs n >= 2");
  if (!(cost_rate > 0) || !(efficiency > 0) || !(difficulty > 0)) {
    throw std::invalid_argument("cost_rate, efficiency and difficulty must be > 0");
  }
  if (reward < 0) throw std::invalid_argument("reward must be >= 0");
  // With identical miners the cost rate cancels and only d = D/v matters.
  const double d = difficulty / efficiency;
  const auto roots = interior_roots([&](double p) { return symmetric_indifference(n, d, reward, p); }, settings);
  std::vector<MixedProfile> out;
  out.reserve(roots.size());
  for (double p : roots) out.push_back(MixedProfile::uniform(n, p));
  return out;
}

std::vector<MixedProfile> two_miner_mixed_nash(const GameConfig& cfg, const SolverSettings& settings) {
  if (cfg.size() != 2) throw std::invalid_argument("two_miner_mixed_nash needs exactly two miners");
  // Miner k's payoff difference depends only on the opponent's stay-out probability.
  auto indifference = [&](std::size_t k) {
    return [&cfg, k](double opponent_stay_out) {
      std::vector<double> x(2, 0.5);
      x[1 - k] = opponent_stay_out;
      const MixedProfile profile(std::move(x));
      return deviation_utility(cfg, profile, k, true) - deviation_utility(cfg, profile, k, false);
    };
  };
  const auto miner2_values = interior_roots(indifference(0), settings);  // make miner 1 indifferent
  const auto miner1_values = interior_roots(indifference(1), settings);
  std::vector<MixedProfile> out;
  for (double x1 : miner1_values) {
    for (double x2 : miner2_values) out.push_back(MixedProfile({x1, x2}));
  }
  return out;
}

}  // namespace minegame::solver
