// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
//   acceptance [--golden-dir DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "minegame/analytic_two_miner.hpp"
#include "minegame/equilibrium_solver.hpp"
#include "minegame/game_core.hpp"
#include "minegame/race_simulator.hpp"
#include "minegame/sweep.hpp"

#ifndef MINEGAME_GOLDEN_DIR
#define MINEGAME_GOLDEN_DIR "tests/golden"
#endif

using namespace minegame;
namespace tm2 = minegame::two_miner;

namespace {

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Collects failure messages; a criterion passes when none were recorded.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }
  std::string note;

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

std::string profiles_string(const std::vector<PureProfile>& ps) {
  std::string s = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + ps[i].to_string();
  return s + "}";
}

std::string num(const Rational& r) { return to_fraction_string(r); }

// ---------------------------------------------------------------------------
// 1. Closed-form equilibrium sets against brute-force pure enumeration.

void add_unique(std::vector<Rational>& v, const Rational& x) {
  if (x >= 0 && std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

void closed_form_vs_enumeration(Checker& c) {
  const std::vector<Rational> p_vs = {1, frac(3, 2), 2, 4};
  const std::vector<Rational> base_pcs = {frac(1, 10), frac(1, 5), frac(1, 3), frac(1, 2), frac(2, 3), frac(4, 5),
                                          1,           frac(6, 5), frac(3, 2), 2,          3};
  const std::vector<Rational> ds = {100, 1, frac(7, 3)};
  std::set<std::string> regions;
  std::set<int> cases;
  std::size_t triples = 0, members = 0, index = 0;

  for (const Rational& pv : p_vs) {
    std::vector<Rational> pcs = base_pcs;
    if (pv > 1) add_unique(pcs, 1 - 1 / pv);
    for (const Rational& pc : pcs) {
      const tm2::TwoMinerParams shape{pv, pc, 1};
      const auto be = tm2::break_even_points(shape);
      std::vector<Rational> marks = {be.miner1_shared, be.miner2_shared, be.miner2_alone, be.miner1_alone};
      std::sort(marks.begin(), marks.end());
      std::vector<Rational> zs = {0, marks.front() / 2, frac(3, 2), 2};
      for (std::size_t i = 0; i < marks.size(); ++i) {
        add_unique(zs, marks[i]);
        if (i + 1 < marks.size()) add_unique(zs, (marks[i] + marks[i + 1]) / 2);
      }
      add_unique(zs, tm2::indifference_pole(0, shape));
      add_unique(zs, tm2::indifference_pole(1, shape));

      for (const Rational& z : zs) {
        const Rational& d = ds[index++ % ds.size()];
        const tm2::TwoMinerParams params{pv, pc, d};
        const Rational reward = z * d;
        const auto set = tm2::nash_set_2p(params, reward);
        const auto cfg = tm2::config_from_params(params, reward);
        const auto brute = solver::pure_nash_enumerate(cfg);
        const auto closed = set.pure_profiles();
        const std::string where = "p_v=" + num(pv) + " p_c=" + num(pc) + " d=" + num(d) + " R/d=" + num(z);
        c.expect(brute == closed, where + ": enumeration " + profiles_string(brute) + " vs closed form " +
                                      profiles_string(closed));
        for (const auto& m : set.members) {
          for (const auto& x : m.samples(5)) {
            ++members;
            const Rational r = solver::regret(cfg, x);
            c.expect(r == 0, where + ": regret " + num(r) + " at " + m.describe());
          }
        }
        regions.insert(tm2::to_string(tm2::classify_region(params, reward)));
        cases.insert(static_cast<int>(tm2::cost_case(params)));
        ++triples;
      }
    }
  }
  c.expect(triples >= 500, "only " + std::to_string(triples) + " triples");
  c.expect(regions.size() == 9, "only " + std::to_string(regions.size()) + " region labels visited");
  c.expect(cases.size() == 3, "not every cost case visited");
  c.note = std::to_string(triples) + " triples, " + std::to_string(members) + " equilibrium points, " +
           std::to_string(regions.size()) + " region labels";
}

// ---------------------------------------------------------------------------
// 2. The nine R/d rows of the p_c >= 1 case at (p_v, p_c) = (2, 1.5).

bool same_members(std::vector<tm2::Equilibrium> a, std::vector<tm2::Equilibrium> b) {
  if (a.size() != b.size()) return false;
  for (const auto& e : a) {
    auto it = std::find(b.begin(), b.end(), e);
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

void table_rows(Checker& c) {
  using B = tm2::IndifferenceBranch;
  using E = tm2::Equilibrium;
  const tm2::TwoMinerParams params{2, frac(3, 2), 100};
  const Rational g2_low = *tm2::indifference_stay_out(1, frac(3, 8), params);
  const Rational g2_high = *tm2::indifference_stay_out(1, frac(1, 2), params);
  c.expect(g2_low == frac(1, 21) && g2_high == frac(1, 9), "continuum end points");

  struct Row {
    Rational lo, hi;  // lo == hi: a boundary row
    B alpha1, alpha2;
    std::function<std::vector<E>(const Rational& z)> set;
  };
  const auto none = [](const Rational&) { return std::vector<E>{E::pure(false, false)}; };
  const auto all = [](const Rational&) { return std::vector<E>{E::pure(true, true)}; };
  const std::vector<Row> rows = {
      {0, frac(1, 4), B::below_zero, B::below_zero, none},
      {frac(1, 4), frac(1, 4), B::below_zero, B::zero, none},
      {frac(1, 4), frac(3, 8), B::below_zero, B::interior, none},
      {frac(3, 8), frac(3, 8), B::zero, B::interior,
       [&](const Rational&) { return std::vector<E>{E::pure(false, false), E::continuum(1, 0, 0, g2_low)}; }},
      {frac(3, 8), frac(1, 2), B::interior, B::interior,
       [&](const Rational& z) {
         return std::vector<E>{E::pure(false, false), E::pure(true, true),
                               E::mixed(*tm2::indifference_stay_out(0, z, params),
                                        *tm2::indifference_stay_out(1, z, params))};
       }},
      {frac(1, 2), frac(1, 2), B::one, B::interior,
       [&](const Rational&) { return std::vector<E>{E::pure(true, true), E::continuum(1, 1, g2_high, 1)}; }},
      {frac(1, 2), 1, B::above_one, B::interior, all},
      {1, 1, B::above_one, B::one, all},
      {1, 3, B::above_one, B::above_one, all},
  };

  std::size_t points = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    std::vector<Rational> zs;
    if (row.lo == row.hi) {
      zs.push_back(row.lo);
    } else {
      for (long k = 1; k <= 9; ++k) zs.push_back(row.lo + (row.hi - row.lo) * frac(k, 10));
      if (i == 6) zs.push_back(tm2::indifference_pole(0, params));  // 7/8 sits inside row 7
      if (i == 8) zs.push_back(tm2::indifference_pole(1, params));  // 5/4 sits inside row 9
    }
    for (const Rational& z : zs) {
      ++points;
      const std::string where = "row " + std::to_string(i + 1) + " R/d=" + num(z);
      const auto a1 = tm2::indifference_branch(0, z, params);
      const auto a2 = tm2::indifference_branch(1, z, params);
      c.expect(a1 == row.alpha1, where + ": alpha1 branch " + tm2::to_string(a1));
      c.expect(a2 == row.alpha2, where + ": alpha2 branch " + tm2::to_string(a2));
      const auto set = tm2::nash_set_2p(params, z * params.d);
      c.expect(same_members(set.members, row.set(z)), where + ": equilibrium set differs");
    }
  }
  c.note = "9 rows, " + std::to_string(points) + " R/d points";
}

// ---------------------------------------------------------------------------
// 3. Coexistence of both pure profiles.

std::vector<int> range_int(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

void hysteresis(Checker& c) {
  const tm2::TwoMinerParams params{2, frac(4, 5), 100};
  const PureProfile none{0, 0}, all{1, 1};
  std::vector<int> isolated, in_band, weak;
  const auto band = tm2::hysteresis_band_2p(params);
  c.expect(band && band->lower == frac(5, 13) && band->upper == frac(1, 2), "band end points");
  for (int r = 0; r <= 150; ++r) {
    const Rational reward = r;
    const auto iso = tm2::nash_set_2p(params, reward).isolated_pure_profiles();
    if (std::count(iso.begin(), iso.end(), none) && std::count(iso.begin(), iso.end(), all)) isolated.push_back(r);
    if (band && band->contains(reward / params.d)) in_band.push_back(r);
    const auto eq = solver::pure_nash_enumerate(tm2::config_from_params(params, reward));
    if (std::count(eq.begin(), eq.end(), none) && std::count(eq.begin(), eq.end(), all)) weak.push_back(r);
  }
  c.expect(isolated == range_int(39, 49), "two-miner isolated coexistence set");
  c.expect(in_band == range_int(39, 49), "two-miner open band on the grid");
  // At R/d = 1/p_v all-abstain is still weakly stable (miner 2 alone earns 0).
  c.expect(weak == range_int(39, 50), "weak enumeration adds only the R/d = 1/p_v boundary");

  std::vector<Rational> grid;
  for (int r = 0; r <= 150; ++r) grid.emplace_back(r);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto got = solver::hysteresis_interval<Rational>(n, 1, 1, 100, grid);
    const int lo = static_cast<int>((100 + n - 1) / n);
    std::vector<Rational> want;
    for (int r = lo; r <= 100; ++r) want.emplace_back(r);
    c.expect(got == want, "symmetric n=" + std::to_string(n));
  }
  c.note = "(2,0.8): R in [39,49]; symmetric n=2..6: R in [ceil(100/n),100]";
}

// ---------------------------------------------------------------------------
// 4. Participation thresholds.

void thresholds(Checker& c) {
  std::vector<Rational> grid;
  for (int r = 0; r <= 150; ++r) grid.emplace_back(r);
  const std::vector<int> want = {50, 34, 25, 20, 17};
  double worst = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto t = solver::participation_threshold<Rational>(n, 1, 1, 100, grid);
    c.expect(t && *t == want[n - 2], "grid threshold n=" + std::to_string(n));
    const Rational exact = solver::exact_participation_threshold<Rational>(n, 1, 1, 100);
    c.expect(Rational(static_cast<long>(n)) * exact / 100 == 1, "exact rational threshold n=" + std::to_string(n));
    const double fp = solver::exact_participation_threshold<double>(n, 1.0, 1.0, 100.0);
    const double err = std::abs(static_cast<double>(n) * (fp / 100.0) - 1.0);
    worst = std::max(worst, err);
    c.expect(err <= 4 * std::numeric_limits<double>::epsilon(), "floating threshold n=" + std::to_string(n));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "thresholds 50,34,25,20,17; max |n*R/d - 1| = %.1e", worst);
  c.note = buf;
}

// ---------------------------------------------------------------------------
// 5. Monte-Carlo estimators against the closed forms.

struct McCase {
  std::string name;
  GameConfig cfg;
  PureProfile profile;
};

void monte_carlo(Checker& c) {
  const std::vector<McCase> cases = {
      {"sym2 R=100 s=11", make_symmetric_config<double>(2, 1, 1, 100, 100), {1, 1}},
      {"sym2 R=150 s=10", make_symmetric_config<double>(2, 1, 1, 100, 150), {1, 0}},
      {"sym2 R=60 s=11", make_symmetric_config<double>(2, 1, 1, 100, 60), {1, 1}},
      {"sym3 R=40 s=111", make_symmetric_config<double>(3, 1, 1, 100, 40), {1, 1, 1}},
      {"sym3 R=100 s=110", make_symmetric_config<double>(3, 1, 1, 100, 100), {1, 1, 0}},
      {"sym3 c=2 v=0.5 D=50 R=30", make_symmetric_config<double>(3, 2, 0.5, 50, 30), {1, 1, 1}},
      {"(2,0.8) R=45 s=11", make_two_miner_config<double>(2, 0.8, 100, 45), {1, 1}},
      {"(2,0.8) R=60 s=11", make_two_miner_config<double>(2, 0.8, 100, 60), {1, 1}},
      {"(2,0.8) R=60 s=01", make_two_miner_config<double>(2, 0.8, 100, 60), {0, 1}},
      {"(2,1.5) R=45 s=11", make_two_miner_config<double>(2, 1.5, 100, 45), {1, 1}},
      {"(4,0.2) R=80 s=11", make_two_miner_config<double>(4, 0.2, 100, 80), {1, 1}},
      {"asym3 R=90 s=111", GameConfig({{1, 1}, {0.8, 2}, {1.5, 0.5}}, 100, 90), {1, 1, 1}},
  };
  double worst_z = 0, worst_rel = 0;
  std::size_t estimators = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& mc = cases[i];
    const auto st = race::estimate_stats(mc.cfg, mc.profile, 1'000'000, 1000 + i);
    for (std::size_t k = 0; k < mc.cfg.size(); ++k) {
      const double closed[4] = {win_probability(mc.cfg, mc.profile, k), expected_reward(mc.cfg, mc.profile, k),
                                expected_cost(mc.cfg, mc.profile, k), utility(mc.cfg, mc.profile, k)};
      const race::Estimate est[4] = {st.win_prob[k], st.reward[k], st.cost[k], st.utility[k]};
      const char* names[4] = {"P", "R", "CS", "U"};
      for (int e = 0; e < 4; ++e) {
        ++estimators;
        const std::string where = mc.name + " miner " + std::to_string(k + 1) + " " + names[e];
        if (!mc.profile.participates(k)) {
          c.expect(est[e].mean == 0 && est[e].std_err == 0, where + ": nonparticipant not exactly 0");
          continue;
        }
        const double dev = std::abs(est[e].mean - closed[e]);
        const double z = est[e].std_err > 0 ? dev / est[e].std_err : (dev == 0 ? 0 : 1e9);
        worst_z = std::max(worst_z, z);
        if (closed[e] != 0 && est[e].std_err > 0) worst_rel = std::max(worst_rel, est[e].std_err / std::abs(closed[e]));
        c.expect(z <= 4, where + ": " + std::to_string(z) + " standard errors");
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "12 configs x 1e6 trials, %zu estimators, max |z| = %.2f, max rel. s.e. = %.2g",
                estimators, worst_z, worst_rel);
  c.note = buf;
}

// ---------------------------------------------------------------------------
// 6. Per-hash discrete races against exponential races.

void discrete_vs_exponential(Checker& c) {
  const auto cfg = make_symmetric_config<double>(2, 1, 1, 1e4, 100);
  race::SimulationOptions disc;
  disc.mode = race::RaceMode::discrete;
  const auto a = race::estimate_stats(cfg, {1, 1}, 100'000, 601, disc);
  const auto b = race::estimate_stats(cfg, {1, 1}, 100'000, 602);
  double worst = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    const double se = std::hypot(a.win_prob[k].std_err, b.win_prob[k].std_err);
    const double z = std::abs(a.win_prob[k].mean - b.win_prob[k].mean) / se;
    worst = std::max(worst, z);
    c.expect(z <= 4, "miner " + std::to_string(k + 1) + ": " + std::to_string(z) + " combined standard errors");
  }
  const auto times = race::sample_finish_times(cfg, {1, 1}, 100'000, 601, disc);
  const double ks = race::ks_distance_exponential(times, 2.0 / 1e4);
  char buf[128];
  std::snprintf(buf, sizeof buf, "D=1e4, 1e5 trials, max |z| = %.2f, KS distance to Exp = %.4f", worst, ks);
  c.note = buf;
}

// ---------------------------------------------------------------------------
// 7. Randomized properties.

constexpr int kInstances = 250;

struct RandomGame {
  ExactGameConfig cfg;
  PureProfile profile;
};

Rational random_positive(std::mt19937_64& gen, long max_num = 50, long max_den = 20) {
  std::uniform_int_distribution<long> num(1, max_num), den(1, max_den);
  return frac(num(gen), den(gen));
}

RandomGame random_game(std::mt19937_64& gen, bool allow_empty) {
  std::uniform_int_distribution<std::size_t> size(2, 6);
  const std::size_t n = size(gen);
  std::vector<ExactMinerSpec> miners;
  for (std::size_t i = 0; i < n; ++i) miners.push_back({random_positive(gen), random_positive(gen)});
  const auto cfg = ExactGameConfig(miners, random_positive(gen, 500, 3), random_positive(gen, 500, 3));
  std::uint64_t mask = gen() & ((std::uint64_t{1} << n) - 1);
  if (!allow_empty && mask == 0) mask = 1;
  return {cfg, PureProfile::from_mask(mask, n)};
}

void properties(Checker& c) {
  std::mt19937_64 gen(20240601);
  std::size_t groups = 0;

  // Win probabilities sum to one whenever someone mines.
  for (int i = 0; i < kInstances; ++i) {
    const auto g = random_game(gen, false);
    Rational sum = 0;
    double fsum = 0;
    for (std::size_t k = 0; k < g.cfg.size(); ++k) sum += win_probability(g.cfg, g.profile, k);
    std::vector<MinerSpec> fm;
    for (const auto& m : g.cfg.miners()) fm.push_back({to_double(m.cost_rate), to_double(m.efficiency)});
    const GameConfig fcfg(fm, to_double(g.cfg.difficulty()), to_double(g.cfg.reward()));
    for (std::size_t k = 0; k < fcfg.size(); ++k) fsum += win_probability(fcfg, g.profile, k);
    c.expect(sum == 1, "normalization (exact) " + g.profile.to_string());
    c.expect(std::abs(fsum - 1) <= 1e-12, "normalization (double)");
  }
  ++groups;

  // Nonparticipants get nothing and pay nothing.
  for (int i = 0; i < kInstances; ++i) {
    const auto g = random_game(gen, true);
    for (std::size_t k = 0; k < g.cfg.size(); ++k) {
      if (g.profile.participates(k) && !g.profile.nobody_participates()) continue;
      c.expect(expected_reward(g.cfg, g.profile, k) == 0 && expected_cost(g.cfg, g.profile, k) == 0 &&
                   utility(g.cfg, g.profile, k) == 0,
               "neutrality " + g.profile.to_string());
    }
  }
  ++groups;

  // Scaling every hash rate and the difficulty together changes nothing.
  for (int i = 0; i < kInstances; ++i) {
    const auto g = random_game(gen, false);
    const Rational lambda = random_positive(gen, 100, 7);
    std::vector<ExactMinerSpec> scaled;
    for (const auto& m : g.cfg.miners()) scaled.push_back({m.cost_rate, Rational(m.efficiency * lambda)});
    const ExactGameConfig big(scaled, Rational(g.cfg.difficulty() * lambda), g.cfg.reward());
    for (std::size_t k = 0; k < g.cfg.size(); ++k) {
      c.expect(win_probability(big, g.profile, k) == win_probability(g.cfg, g.profile, k) &&
                   expected_cost(big, g.profile, k) == expected_cost(g.cfg, g.profile, k) &&
                   utility(big, g.profile, k) == utility(g.cfg, g.profile, k),
               "scale invariance");
    }
  }
  ++groups;

  // Full 2^n expectation splits along miner k's own mix.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < kInstances; ++i) {
    const auto g = random_game(gen, true);
    std::vector<MinerSpec> fm;
    for (const auto& m : g.cfg.miners()) fm.push_back({to_double(m.cost_rate), to_double(m.efficiency)});
    const GameConfig fcfg(fm, to_double(g.cfg.difficulty()), to_double(g.cfg.reward()));
    std::vector<double> xs;
    std::vector<Rational> qs;
    for (std::size_t k = 0; k < fcfg.size(); ++k) {
      xs.push_back(unit(gen));
      qs.push_back(frac(static_cast<long>(gen() % 101), 100));
    }
    const MixedProfile x(xs);
    const ExactMixedProfile qx(qs);
    for (std::size_t k = 0; k < fcfg.size(); ++k) {
      const double whole = expected_utility(fcfg, x, k);
      const double split = xs[k] * expected_utility(fcfg, x.with(k, 1.0), k) +
                           (1 - xs[k]) * expected_utility(fcfg, x.with(k, 0.0), k);
      c.expect(std::abs(whole - split) <= 1e-12 * std::max(1.0, std::abs(whole)), "decomposition (double)");
      const Rational exact = expected_utility(g.cfg, qx, k);
      c.expect(exact == qs[k] * expected_utility(g.cfg, qx.with(k, 1), k) +
                            (1 - qs[k]) * expected_utility(g.cfg, qx.with(k, 0), k),
               "decomposition (exact)");
    }
  }
  ++groups;

  auto random_params = [&]() {
    const Rational pv = 1 + random_positive(gen, 40, 10);  // >= 1
    return tm2::TwoMinerParams{pv, random_positive(gen, 40, 20), random_positive(gen, 300, 3)};
  };

  // g1 and g2 increase strictly between their zero and their pole.
  for (int i = 0; i < kInstances; ++i) {
    const auto p = random_params();
    const auto be = tm2::break_even_points(p);
    for (std::size_t miner = 0; miner < 2; ++miner) {
      const Rational lo = miner == 0 ? be.miner2_shared : be.miner1_shared;
      const Rational pole = tm2::indifference_pole(miner, p);
      Rational prev = -1;
      bool increasing = lo < pole;
      for (long k = 0; k < 64 && increasing; ++k) {
        const Rational z = lo + (pole - lo) * frac(k, 64);
        const Rational g = *tm2::indifference_stay_out(miner, z, p);
        if (k == 0) increasing = g == 0;
        if (k > 0 && !(g > prev)) increasing = false;
        prev = g;
      }
      c.expect(increasing, "g" + std::to_string(miner + 1) + " monotone");
    }
  }
  ++groups;

  // 0 < g1 < 1 exactly on (p_c/(1+q), 1/p_v), 0 < g2 < 1 exactly on (1/(1+q), 1).
  for (int i = 0; i < kInstances; ++i) {
    const auto p = random_params();
    const auto be = tm2::break_even_points(p);
    std::vector<Rational> zs = {be.miner1_shared, be.miner2_shared, be.miner2_alone, 1,
                                tm2::indifference_pole(0, p), tm2::indifference_pole(1, p)};
    for (int k = 0; k < 8; ++k) zs.push_back(random_positive(gen, 60, 30));
    for (const Rational& z : zs) {
      const auto g1 = tm2::indifference_stay_out(0, z, p);
      const auto g2 = tm2::indifference_stay_out(1, z, p);
      const bool in1 = g1 && *g1 > 0 && *g1 < 1;
      const bool in2 = g2 && *g2 > 0 && *g2 < 1;
      c.expect(in1 == (be.miner2_shared < z && z < be.miner2_alone), "g1 range mapping");
      c.expect(in2 == (be.miner1_shared < z && z < 1), "g2 range mapping");
    }
  }
  ++groups;

  // Grid-plus-bisection mixed solver reproduces (g1, g2).
  std::size_t mixed_checked = 0;
  for (int i = 0; i < kInstances; ++i) {
    const auto p = random_params();
    const auto band = tm2::hysteresis_band_2p(p);
    if (!band) continue;
    const Rational z = band->lower + (band->upper - band->lower) * frac(1 + static_cast<long>(gen() % 9), 10);
    const auto fcfg = make_two_miner_config<double>(to_double(p.p_v), to_double(p.p_c), to_double(p.d),
                                                    to_double(Rational(z * p.d)));
    const auto found = solver::two_miner_mixed_nash(fcfg);
    const double g1 = to_double(*tm2::indifference_stay_out(0, z, p));
    const double g2 = to_double(*tm2::indifference_stay_out(1, z, p));
    const bool ok = found.size() == 1 && std::abs(found[0].stay_out(0) - g1) <= 1e-9 &&
                    std::abs(found[0].stay_out(1) - g2) <= 1e-9;
    c.expect(ok, "mixed solver vs closed form");
    ++mixed_checked;
  }
  ++groups;

  c.note = std::to_string(groups) + " properties x " + std::to_string(kInstances) + " instances (" +
           std::to_string(mixed_checked) + " with a band for the solver check), " + std::to_string(c.checks()) +
           " assertions";
}

// ---------------------------------------------------------------------------
// 8. Determinism and golden sweeps.

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return "<missing " + path + ">";
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void determinism(Checker& c, const std::string& golden_dir) {
  sweep::SimulateSpec sim;
  sim.miners = {{1, 1}, {0.8, 2}};
  sim.profile = PureProfile{1, 1};
  sim.reward = 60;
  sim.trials = 300'000;
  sim.seed = 77;
  const auto first = sweep::run_simulate(sim).json;
  c.expect(first == sweep::run_simulate(sim).json, "same seed, same report");
  sim.threads = 1;
  c.expect(first == sweep::run_simulate(sim).json, "one thread, same report");
  sim.threads = 5;
  c.expect(first == sweep::run_simulate(sim).json, "five threads, same report");
  sim.seed = 78;
  c.expect(first != sweep::run_simulate(sim).json, "another seed changes the report");

  const std::vector<std::pair<std::string, std::string>> two = {
      {"0.8", "two_miner_pv2_pc0.8.csv"}, {"0.5", "two_miner_pv2_pc0.5.csv"}, {"0.2", "two_miner_pv2_pc0.2.csv"}};
  for (const auto& [pc, file] : two) {
    const auto art = sweep::run_two_miner_sweep({2, parse_rational(pc), 100, {}});
    c.expect(art.table.to_csv() == read_file(golden_dir + "/" + file), file + " differs from golden");
  }
  const auto sym = sweep::run_symmetric_sweep({});
  c.expect(sym.table.to_csv() == read_file(golden_dir + "/symmetric_d100_n2-6.csv"), "symmetric golden differs");
  c.note = "simulate reports identical across runs and thread counts; 4 golden CSVs match";
}

}  // namespace

int main(int argc, char** argv) {
  std::string golden_dir = MINEGAME_GOLDEN_DIR;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--golden-dir") golden_dir = argv[i + 1];
  }

  struct Criterion {
    const char* name;
    double budget_s;  // 0: no runtime bound
    std::function<void(Checker&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"closed-form equilibrium sets vs enumeration, zero regret", 10, closed_form_vs_enumeration},
      {"nine R/d rows at (p_v,p_c)=(2,1.5)", 0, table_rows},
      {"hysteresis band, two-miner and symmetric", 0, hysteresis},
      {"participation threshold law n*R/d = 1", 1, thresholds},
      {"Monte-Carlo estimators within 4 standard errors", 60, monte_carlo},
      {"discrete vs exponential races at D=1e4", 0, discrete_vs_exponential},
      {"randomized property suite", 0, properties},
      {"determinism and golden CSVs", 0, [&](Checker& c) { determinism(c, golden_dir); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_s > 0) {
      c.expect(secs < criteria[i].budget_s, "runtime " + std::to_string(secs) + " s over budget");
    }
    const bool ok = c.ok();
    failed += ok ? 0 : 1;
    std::printf("[%s] %zu. %s (%.2f s", ok ? "PASS" : "FAIL", i + 1, criteria[i].name, secs);
    if (criteria[i].budget_s > 0) std::printf(", budget %.0f s", criteria[i].budget_s);
    std::printf(")%s%s\n", c.note.empty() ? "" : ": ", c.note.c_str());
    for (const auto& f : c.failures()) std::printf("       - %s\n", f.c_str());
    if (c.failed() > c.failures().size()) std::printf("       - ... %zu failures in total\n", c.failed());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
