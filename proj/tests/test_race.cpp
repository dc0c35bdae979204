#include <doctest.h>

#include <cmath>
#include <set>

#include "minegame/race_simulator.hpp"

using namespace minegame;
using namespace minegame::race;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5U, 0xe169c58dU, 0xbc57ac4cU, 0x9b00dbd8U});
  CHECK(philox4x32_10({0xffffffffU, 0xffffffffU, 0xffffffffU, 0xffffffffU}, {0xffffffffU, 0xffffffffU}) ==
        PhiloxCounter{0x408f276dU, 0x41c83b0eU, 0xa20bc7c6U, 0x6d5451fdU});
  CHECK(philox4x32_10({0x243f6a88U, 0x85a308d3U, 0x13198a2eU, 0x03707344U}, {0xa4093822U, 0x299f31d0U}) ==
        PhiloxCounter{0xd16cfe09U, 0x94fdccebU, 0x5001e420U, 0x24126ea1U});
}

TEST_CASE("Philox streams are reproducible and distinct") {
  PhiloxStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 16; ++i) {
    const auto x = a();
    CHECK(x == b());
    seen.insert(x);
    seen.insert(c());
    seen.insert(d());
  }
  CHECK(seen.size() == 48);
  PhiloxStream u(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("single races") {
  const auto cfg = make_symmetric_config<double>(2, 1, 1, 100, 150);
  PhiloxStream rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    const auto out = sample_race_exponential(cfg, {1, 0}, rng);
    REQUIRE(out.winner);
    CHECK(*out.winner == 0);
    CHECK(out.reward[0] == 150);
    CHECK(out.reward[1] == 0);
    CHECK(out.cost[1] == 0);
  }
  CHECK_THROWS_AS(sample_race_exponential(cfg, {0, 0}, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_race_discrete(cfg, {0, 0}, rng), std::invalid_argument);
  const auto zero_cost = GameConfig({{0, 1}, {1, 1}}, 100, 10);
  CHECK_THROWS_AS(sample_race_exponential(zero_cost, {1, 0}, rng), std::invalid_argument);

  const auto certain = make_symmetric_config<double>(2, 1, 1, 1, 10);
  for (int i = 0; i < 50; ++i) {
    const auto out = sample_race_discrete(certain, {1, 1}, rng);
    REQUIRE(out.winner);
    CHECK(out.finish_time == 1.0);
  }
  CHECK_THROWS_AS(sample_race_discrete(make_symmetric_config<double>(2, 1, 1, 0.5, 10), {1, 1}, rng),
                  std::invalid_argument);
}

TEST_CASE("estimates against closed forms") {
  const auto sym = make_symmetric_config<double>(2, 1, 1, 100, 100);
  const auto st = estimate_stats(sym, {1, 1}, 1'000'000, 42);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(std::abs(st.win_prob[k].mean - 0.5) < 4 * st.win_prob[k].std_err);
    CHECK(std::abs(st.utility[k].mean - 25.0) < 4 * st.utility[k].std_err);
  }
  const auto alone = make_symmetric_config<double>(2, 1, 1, 100, 150);
  const auto st1 = estimate_stats(alone, {1, 0}, 200'000, 5);
  CHECK(st1.win_prob[0].mean == 1.0);
  CHECK(std::abs(st1.utility[0].mean - 50.0) < 4 * st1.utility[0].std_err);
  CHECK(st1.win_prob[1].mean == 0.0);
  CHECK(st1.reward[1].mean == 0.0);
  CHECK(st1.cost[1].mean == 0.0);
  CHECK(st1.utility[1].mean == 0.0);
  CHECK(st1.utility[1].std_err == 0.0);

  const auto asym = make_two_miner_config<double>(2, 0.8, 100, 60);
  const auto st2 = estimate_stats(asym, {1, 1}, 1'000'000, 9);
  CHECK(std::abs(st2.win_prob[0].mean - 1 / 2.6) < 4 * st2.win_prob[0].std_err);
}

TEST_CASE("results do not depend on the thread count") {
  const auto cfg = make_two_miner_config<double>(2, 0.8, 100, 60);
  SimulationOptions one, many;
  one.threads = 1;
  many.threads = 7;
  one.chunk_size = many.chunk_size = 1000;
  const auto a = estimate_stats(cfg, {1, 1}, 25'345, 3, one);
  const auto b = estimate_stats(cfg, {1, 1}, 25'345, 3, many);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(a.win_prob[k].mean == b.win_prob[k].mean);
    CHECK(a.utility[k].mean == b.utility[k].mean);
    CHECK(a.utility[k].std_err == b.utility[k].std_err);
  }
  CHECK(a.finish_time.mean == b.finish_time.mean);
}

TEST_CASE("discrete races approach the exponential law") {
  const auto cfg = make_symmetric_config<double>(2, 1, 1, 1e4, 100);
  SimulationOptions opt;
  opt.mode = RaceMode::discrete;
  const auto st = estimate_stats(cfg, {1, 1}, 100'000, 21, opt);
  CHECK(std::abs(st.win_prob[0].mean - 0.5) < 4 * st.win_prob[0].std_err);
  const auto times = sample_finish_times(cfg, {1, 1}, 100'000, 21, opt);
  // 1.63/sqrt(n) is the 1% critical value; allow for the tick discretisation.
  CHECK(ks_distance_exponential(times, 2e-4) < 1.63 / std::sqrt(1e5) + 1e-3);

  const auto cfg_sym = make_symmetric_config<double>(3, 1, 2.5, 50, 10);
  const auto st3 = estimate_stats(cfg_sym, {1, 1, 1}, 200'000, 4, opt);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(st3.win_prob[k].mean - 1.0 / 3) < 4 * st3.win_prob[k].std_err);
}

TEST_CASE("KS distance of a perfect sample is small") {
  std::vector<double> s;
  for (int i = 1; i <= 1000; ++i) s.push_back(-std::log(1 - (i - 0.5) / 1000.0));
  CHECK(ks_distance_exponential(s, 1.0) == doctest::Approx(0.0005).epsilon(1e-6));
}
