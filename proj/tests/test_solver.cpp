#include <doctest.h>

#include <cmath>
#include <numeric>

#include "minegame/analytic_two_miner.hpp"
#include "minegame/equilibrium_solver.hpp"

using namespace minegame;
using namespace minegame::solver;

namespace {

std::vector<std::string> pure_strings(std::size_t n, double reward) {
  std::vector<std::string> out;
  for (const auto& s : pure_nash_enumerate(make_symmetric_config<double>(n, 1, 1, 100, reward))) {
    out.push_back(s.to_string());
  }
  return out;
}

std::vector<int> integer_grid(int lo, int hi) {
  std::vector<int> g(static_cast<std::size_t>(hi - lo + 1));
  std::iota(g.begin(), g.end(), lo);
  return g;
}

std::vector<Rational> rational_grid(int lo, int hi) {
  std::vector<Rational> out;
  for (int r : integer_grid(lo, hi)) out.emplace_back(r);
  return out;
}

}  // namespace

TEST_CASE("pure enumeration on symmetric games") {
  CHECK(pure_strings(2, 40) == std::vector<std::string>{"00"});
  CHECK(pure_strings(2, 75) == std::vector<std::string>{"00", "11"});
  CHECK(pure_strings(3, 40) == std::vector<std::string>{"000", "111"});
  CHECK(pure_strings(2, 150) == std::vector<std::string>{"11"});
}

TEST_CASE("symmetric mixed equilibria") {
  const auto at75 = symmetric_mixed_nash(2, 1, 1, 100, 75);
  REQUIRE(at75.size() == 1);
  CHECK(at75[0].stay_out(0) == doctest::Approx(1.0 / 3).epsilon(1e-11));
  CHECK(regret(make_symmetric_config<double>(2, 1, 1, 100, 75), at75[0]) < 1e-12);
  CHECK(symmetric_mixed_nash(2, 1, 1, 100, 40).empty());
  CHECK(symmetric_mixed_nash(2, 1, 1, 100, 100).empty());
  // Δ agrees with the full 2^n expectation.
  for (double p : {0.1, 0.37, 0.8}) {
    const auto cfg = make_symmetric_config<double>(4, 1, 1, 100, 45);
    const auto x = MixedProfile::uniform(4, p);
    CHECK(symmetric_indifference(4, 100, 45, p) ==
          doctest::Approx(deviation_utility(cfg, x, 0, true) - deviation_utility(cfg, x, 0, false)).epsilon(1e-12));
  }
}

TEST_CASE("interior roots") {
  SolverSettings s;
  const auto roots = interior_roots([](double x) { return (x - 0.25) * (x - 0.7); }, s);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(interior_roots([](double x) { return x; }, s).empty());
  CHECK(interior_roots([](double x) { return x - 0.5; }, s).size() == 1);
  s.grid_points = 1;
  CHECK_THROWS(s.validate());
}

TEST_CASE("regret") {
  const auto cfg = make_symmetric_config<double>(2, 1, 1, 100, 150);
  CHECK(regret(cfg, MixedProfile::uniform(2, 1.0)) == doctest::Approx(50));
  CHECK(regret(cfg, MixedProfile::uniform(2, 0.0)) == 0);
  const auto exact = make_two_miner_config<Rational>(2, Rational(4, 5), 100, 45);
  CHECK(regret(exact, ExactMixedProfile({Rational(296, 465), Rational(85, 1944)})) == 0);
  CHECK(regret(exact, ExactMixedProfile({Rational(1, 2), Rational(1, 2)})) > 0);
}

TEST_CASE("two-miner mixed solver matches the closed form") {
  const auto cfg = make_two_miner_config<double>(2, 0.8, 100, 45);
  const auto mixed = two_miner_mixed_nash(cfg);
  REQUIRE(mixed.size() == 1);
  CHECK(mixed[0].stay_out(0) == doctest::Approx(296.0 / 465).epsilon(1e-11));
  CHECK(mixed[0].stay_out(1) == doctest::Approx(85.0 / 1944).epsilon(1e-11));
  CHECK(two_miner_mixed_nash(make_two_miner_config<double>(2, 0.8, 100, 20)).empty());
}

TEST_CASE("hysteresis interval and participation threshold") {
  CHECK(hysteresis_interval<Rational>(2, 1, 1, 100, rational_grid(0, 150)) == rational_grid(50, 100));
  CHECK(hysteresis_interval<Rational>(6, 1, 1, 100, rational_grid(0, 150)) == rational_grid(17, 100));
  CHECK(hysteresis_interval<Rational>(2, 1, 1, 100, rational_grid(0, 40)).empty());
  CHECK(participation_threshold<Rational>(2, 1, 1, 100, rational_grid(0, 150)) == Rational(50));
  CHECK(participation_threshold<Rational>(5, 1, 1, 100, rational_grid(0, 150)) == Rational(20));
  CHECK(participation_threshold<Rational>(3, 1, 1, 100, rational_grid(0, 150)) == Rational(34));
  CHECK_FALSE(participation_threshold<Rational>(2, 1, 1, 100, rational_grid(0, 40)).has_value());
  CHECK(exact_participation_threshold<Rational>(3, 1, 1, 100) == Rational(100, 3));
}
