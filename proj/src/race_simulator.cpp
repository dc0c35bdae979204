#include "minegame/race_simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace minegame::race {
namespace {

void reset(RaceOutcome& out, std::size_t n) {
  out.winner.reset();
  out.finish_time = 0.0;
  out.reward.assign(n, 0.0);
  out.cost.assign(n, 0.0);
  out.all_pay_cost.assign(n, 0.0);
}

void settle(const GameConfig& cfg, const PureProfile& profile, std::size_t winner, double finish_time,
            RaceOutcome& out) {
  out.winner = winner;
  out.finish_time = finish_time;
  out.reward[winner] = cfg.reward();
  out.cost[winner] = cfg.miner(winner).cost_rate * finish_time;
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    if (profile.participates(k)) out.all_pay_cost[k] = cfg.miner(k).cost_rate * finish_time;
  }
}

void check_race(const GameConfig& cfg, const PureProfile& profile) {
  if (profile.size() != cfg.size()) throw std::invalid_argument("profile length does not match miner count");
  if (!(total_hash_rate(cfg, profile) > 0)) {
    throw std::invalid_argument("no participant has a positive hash rate; no race takes place");
  }
}

void race_exponential_into(const GameConfig& cfg, const PureProfile& profile, PhiloxStream& rng, RaceOutcome& out) {
  reset(out, cfg.size());
  double best = std::numeric_limits<double>::infinity();
  std::size_t winner = 0;
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    const double rate = poisson_rate(cfg.miner(k), profile.participates(k), cfg.difficulty());
    if (!(rate > 0)) continue;
    const double t = -std::log(rng.uniform()) / rate;
    if (t < best) {
      best = t;
      winner = k;
    }
  }
  settle(cfg, profile, winner, best, out);
}

// Per-tick success probability of a miner issuing `queries` hashes per tick
// on average (floor queries always, one more with probability frac).
double tick_success_probability(double queries, double difficulty) {
  const double whole = std::floor(queries);
  const double frac = queries - whole;
  if (difficulty == 1.0) return whole >= 1.0 ? 1.0 : frac;
  const double log_fail = std::log1p(-1.0 / difficulty);
  // 1 - [(1-frac) (1-1/D)^whole + frac (1-1/D)^(whole+1)]
  return -(1.0 - frac) * std::expm1(whole * log_fail) - frac * std::expm1((whole + 1.0) * log_fail);
}

void race_discrete_into(const GameConfig& cfg, const PureProfile& profile, PhiloxStream& rng,
                        const DiscreteOptions& options, std::vector<std::size_t>& tied, RaceOutcome& out) {
  reset(out, cfg.size());
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  tied.clear();
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    if (!profile.participates(k)) continue;
    const double queries = hash_rate(cfg.miner(k)) / options.ticks_per_unit;
    const double p = tick_success_probability(queries, cfg.difficulty());
    if (!(p > 0)) continue;
    // Ticks are i.i.d. Bernoulli(p) trials, so the first success is geometric.
    std::uint64_t tick = 1;
    if (p < 1.0) {
      const double failures = std::floor(std::log(rng.uniform()) / std::log1p(-p));
      tick += failures >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() - 1 : static_cast<std::uint64_t>(failures);
    }
    if (tick < best) {
      best = tick;
      tied.assign(1, k);
    } else if (tick == best) {
      tied.push_back(k);
    }
  }
  std::size_t winner = tied.front();
  if (tied.size() > 1) {
    const auto pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(tied.size()));
    winner = tied[std::min(pick, tied.size() - 1)];
  }
  settle(cfg, profile, winner, static_cast<double>(best) / options.ticks_per_unit, out);
}

void check_discrete(const GameConfig& cfg, const DiscreteOptions& options) {
  if (cfg.difficulty() < 1.0) throw std::invalid_argument("discrete race needs difficulty >= 1");
  if (!(options.ticks_per_unit > 0)) throw std::invalid_argument("ticks_per_unit must be > 0");
}

// Welford running moments; merge() is Chan's pairwise update.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    if (count == 0.0) {
      *this = o;
      return;
    }
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * (o.count / total);
    m2 += o.m2 + delta * delta * (count * o.count / total);
    count = total;
  }
  Estimate estimate() const {
    if (count < 2.0) return {mean, 0.0};
    return {mean, std::sqrt(m2 / (count - 1.0) / count)};
  }
};

struct Accumulator {
  explicit Accumulator(std::size_t n)
      : win(n), reward(n), cost(n), utility(n), all_pay(n), time_given_win(n) {}
  std::vector<Moments> win, reward, cost, utility, all_pay, time_given_win;
  Moments time;

  void add(const RaceOutcome& r) {
    for (std::size_t k = 0; k < win.size(); ++k) {
      const bool won = r.winner == k;
      win[k].add(won ? 1.0 : 0.0);
      reward[k].add(r.reward[k]);
      cost[k].add(r.cost[k]);
      utility[k].add(r.reward[k] - r.cost[k]);
      all_pay[k].add(r.all_pay_cost[k]);
      if (won) time_given_win[k].add(r.finish_time);
    }
    time.add(r.finish_time);
  }
  void merge(const Accumulator& o) {
    for (std::size_t k = 0; k < win.size(); ++k) {
      win[k].merge(o.win[k]);
      reward[k].merge(o.reward[k]);
      cost[k].merge(o.cost[k]);
      utility[k].merge(o.utility[k]);
      all_pay[k].merge(o.all_pay[k]);
      time_given_win[k].merge(o.time_given_win[k]);
    }
    time.merge(o.time);
  }
};

template <class Body>
void for_each_chunk(std::uint64_t chunks, unsigned threads, Body body) {
  unsigned workers = threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  std::atomic<std::uint64_t> next{0};
  auto run = [&] {
    for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) body(c);
  };
  if (workers <= 1) {
    run();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(run);
}

}  // namespace

RaceOutcome sample_race_exponential(const GameConfig& cfg, const PureProfile& profile, PhiloxStream& rng) {
  check_race(cfg, profile);
  RaceOutcome out;
  race_exponential_into(cfg, profile, rng, out);
  return out;
}

RaceOutcome sample_race_discrete(const GameConfig& cfg, const PureProfile& profile, PhiloxStream& rng,
                                 const DiscreteOptions& options) {
  check_race(cfg, profile);
  check_discrete(cfg, options);
  RaceOutcome out;
  std::vector<std::size_t> tied;
  race_discrete_into(cfg, profile, rng, options, tied, out);
  return out;
}

std::string to_string(RaceMode mode) { return mode == RaceMode::exponential ? "exponential" : "discrete"; }

RaceStats estimate_stats(const GameConfig& cfg, const PureProfile& profile, std::uint64_t trials, std::uint64_t seed,
                         const SimulationOptions& options) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (options.chunk_size < 1) throw std::invalid_argument("chunk_size must be >= 1");
  check_race(cfg, profile);
  if (options.mode == RaceMode::discrete) check_discrete(cfg, options.discrete);

  const std::size_t n = cfg.size();
  const std::uint64_t chunks = (trials + options.chunk_size - 1) / options.chunk_size;
  std::vector<Accumulator> partial(chunks, Accumulator(n));
  for_each_chunk(chunks, options.threads, [&](std::uint64_t c) {
    RaceOutcome outcome;
    std::vector<std::size_t> tied;
    Accumulator& acc = partial[c];
    const std::uint64_t begin = c * options.chunk_size;
    const std::uint64_t end = std::min(trials, begin + options.chunk_size);
    for (std::uint64_t t = begin; t < end; ++t) {
      PhiloxStream rng(seed, t);
      if (options.mode == RaceMode::exponential) {
        race_exponential_into(cfg, profile, rng, outcome);
      } else {
        race_discrete_into(cfg, profile, rng, options.discrete, tied, outcome);
      }
      acc.add(outcome);
    }
  });
  Accumulator total(n);
  for (const auto& p : partial) total.merge(p);

  RaceStats stats;
  stats.trials = trials;
  stats.seed = seed;
  stats.mode = options.mode;
  for (std::size_t k = 0; k < n; ++k) {
    stats.win_prob.push_back(total.win[k].estimate());
    stats.reward.push_back(total.reward[k].estimate());
    stats.cost.push_back(total.cost[k].estimate());
    stats.utility.push_back(total.utility[k].estimate());
    stats.all_pay_cost.push_back(total.all_pay[k].estimate());
    stats.finish_time_given_win.push_back(total.time_given_win[k].estimate());
    stats.wins.push_back(static_cast<std::uint64_t>(total.time_given_win[k].count));
  }
  stats.finish_time = total.time.estimate();
  return stats;
}

std::vector<double> sample_finish_times(const GameConfig& cfg, const PureProfile& profile, std::uint64_t trials,
                                        std::uint64_t seed, const SimulationOptions& options) {
  check_race(cfg, profile);
  if (options.mode == RaceMode::discrete) check_discrete(cfg, options.discrete);
  std::vector<double> times(trials);
  RaceOutcome outcome;
  std::vector<std::size_t> tied;
  for (std::uint64_t t = 0; t < trials; ++t) {
    PhiloxStream rng(seed, t);
    if (options.mode == RaceMode::exponential) {
      race_exponential_into(cfg, profile, rng, outcome);
    } else {
      race_discrete_into(cfg, profile, rng, options.discrete, tied, outcome);
    }
    times[t] = outcome.finish_time;
  }
  return times;
}

double ks_distance_exponential(std::span<const double> samples, double rate) {
  if (samples.empty()) throw std::invalid_argument("empty sample");
  if (!(rate > 0)) throw std::invalid_argument("rate must be > 0");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  // Evaluate both sides of each jump; with ties only the last index of a run
  // gives the upper value.
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = -std::expm1(-rate * sorted[i]);
    const bool run_end = i + 1 == sorted.size() || sorted[i + 1] != sorted[i];
    const bool run_start = i == 0 || sorted[i - 1] != sorted[i];
    if (run_end) worst = std::max(worst, std::abs(static_cast<double>(i + 1) / n - cdf));
    if (run_start) worst = std::max(worst, std::abs(cdf - static_cast<double>(i) / n));
  }
  return worst;
}

}  // namespace minegame::race
