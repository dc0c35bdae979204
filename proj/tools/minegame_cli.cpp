// minegame: equilibrium sweeps and Monte-Carlo validation for the mining
// participation game.
//
// Exit codes: 0 success, 1 simulation validation failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "minegame/sweep.hpp"

namespace {

using minegame::Rational;
using minegame::sweep::UsageError;

constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

struct OutputFlags {
  std::string out = "-";
  std::string format = "csv";
  std::string svg;
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags, const std::string& default_format) {
  flags.format = default_format;
  cmd->add_option("--out", flags.out, "Output path ('-' for stdout)")->capture_default_str();
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--svg", flags.svg, "Also write an SVG plot to this path");
}

Rational rational_flag(const std::string& name, const std::string& text) {
  try {
    return minegame::parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::string companion_path(const std::string& out, const std::string& suffix) {
  std::string stem = out;
  if (auto dot = stem.rfind('.'); dot != std::string::npos && stem.find('/', dot) == std::string::npos) {
    stem.erase(dot);
  }
  return stem + suffix;
}

void emit(const OutputFlags& flags, const minegame::sweep::Artifacts& art) {
  write_text(flags.out, flags.format == "json" ? art.table.to_json() : art.table.to_csv());
  if (!flags.svg.empty()) write_text(flags.svg, art.svg);
}

struct RewardFlags {
  std::string min = "0", max = "150", step = "1";
  void add(CLI::App* cmd) {
    cmd->add_option("--reward-min", min, "Smallest reward R on the grid")->capture_default_str();
    cmd->add_option("--reward-max", max, "Largest reward R on the grid")->capture_default_str();
    cmd->add_option("--reward-step", step, "Reward grid step")->capture_default_str();
  }
  minegame::sweep::RewardRange range() const {
    return {rational_flag("reward-min", min), rational_flag("reward-max", max), rational_flag("reward-step", step)};
  }
};

std::vector<minegame::MinerSpec> parse_miners(const std::string& text) {
  std::vector<minegame::MinerSpec> miners;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--miners entries must look like cost:efficiency");
    const double c = minegame::to_double(rational_flag("miners", item.substr(0, colon)));
    const double v = minegame::to_double(rational_flag("miners", item.substr(colon + 1)));
    miners.push_back({c, v});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return miners;
}

minegame::PureProfile parse_profile(const std::string& text, std::size_t n) {
  if (text.empty()) return minegame::PureProfile::uniform(n, true);
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw UsageError("--profile must be a string of 0/1, e.g. 10");
    bits.push_back(c == '1' ? 1 : 0);
  }
  if (bits.size() != n) throw UsageError("--profile length does not match the number of miners");
  return minegame::PureProfile(std::move(bits));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria and race simulation for the mining participation game"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML-style key = value file (flags override it)");

  // two-miner
  OutputFlags two_out;
  RewardFlags two_reward;
  std::string two_pv = "2", two_pc = "0.8", two_d = "100", two_breakpoints;
  auto* two = app.add_subcommand("two-miner", "Exact equilibrium branches of the two-miner game over a reward grid");
  add_output_flags(two, two_out, "csv");
  two->add_option("--pv", two_pv, "Efficiency ratio v2/v1")->capture_default_str();
  two->add_option("--pc", two_pc, "Cost ratio c2/c1")->capture_default_str();
  two->add_option("--d", two_d, "Normalized difficulty D/v1")->capture_default_str();
  two->add_option("--breakpoints", two_breakpoints, "Path for the exact breakpoints CSV");
  two_reward.add(two);

  // symmetric
  OutputFlags sym_out;
  RewardFlags sym_reward;
  std::vector<std::size_t> sym_n = {2, 3, 4, 5, 6};
  std::string sym_d = "100";
  minegame::solver::SolverSettings sym_settings;
  auto* sym = app.add_subcommand("symmetric", "Pure and symmetric mixed equilibria for n identical miners");
  add_output_flags(sym, sym_out, "csv");
  sym->add_option("--n", sym_n, "Miner counts")->delimiter(',')->capture_default_str();
  sym->add_option("--d", sym_d, "Normalized difficulty D/v")->capture_default_str();
  sym->add_option("--grid-points", sym_settings.grid_points, "Bracketing grid size")->capture_default_str();
  sym->add_option("--bisection-tol", sym_settings.bisection_tolerance, "Bisection tolerance")->capture_default_str();
  sym->add_option("--regret-tol", sym_settings.regret_tolerance, "Regret tolerance")->capture_default_str();
  sym_reward.add(sym);

  // region-map
  OutputFlags map_out;
  std::string map_pv = "2", pc_min = "0.01", pc_max = "2.01", rd_min = "0", rd_max = "1";
  std::size_t pc_points = 201, rd_points = 201;
  auto* rmap = app.add_subcommand("region-map", "Region labels over the (p_c, R/d) plane");
  add_output_flags(rmap, map_out, "csv");
  rmap->add_option("--pv", map_pv, "Efficiency ratio (>= 1)")->capture_default_str();
  rmap->add_option("--pc-min", pc_min)->capture_default_str();
  rmap->add_option("--pc-max", pc_max)->capture_default_str();
  rmap->add_option("--pc-points", pc_points)->capture_default_str();
  rmap->add_option("--rd-min", rd_min)->capture_default_str();
  rmap->add_option("--rd-max", rd_max)->capture_default_str();
  rmap->add_option("--rd-points", rd_points)->capture_default_str();

  // threshold
  OutputFlags thr_out;
  RewardFlags thr_reward;
  std::vector<std::size_t> thr_n = {2, 3, 4, 5, 6};
  std::string thr_d = "100";
  auto* thr = app.add_subcommand("threshold", "Smallest reward with an all-participate equilibrium, per n");
  add_output_flags(thr, thr_out, "csv");
  thr->add_option("--n", thr_n, "Miner counts")->delimiter(',')->capture_default_str();
  thr->add_option("--d", thr_d, "Normalized difficulty D/v")->capture_default_str();
  thr_reward.add(thr);

  // simulate
  OutputFlags sim_out;
  std::string sim_miners, sim_pv, sim_pc, sim_d = "100", sim_reward = "100", sim_profile, sim_mode = "exponential";
  std::string sim_accounting = "paper";
  std::size_t sim_n = 0;
  std::uint64_t sim_trials = 1'000'000, sim_seed = 1;
  double sim_ticks = 1.0, sim_sigma = 4.0;
  unsigned sim_threads = 0;
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo check of win probability, reward, cost and utility");
  add_output_flags(sim, sim_out, "json");
  sim->add_option("--miners", sim_miners, "Comma-separated cost:efficiency pairs, e.g. 1:1,0.8:2");
  sim->add_option("--n", sim_n, "Number of identical (1:1) miners");
  sim->add_option("--pv", sim_pv, "Two-miner efficiency ratio (with --pc)");
  sim->add_option("--pc", sim_pc, "Two-miner cost ratio (with --pv)");
  sim->add_option("--d", sim_d, "Difficulty D")->capture_default_str();
  sim->add_option("--reward", sim_reward, "Block reward R")->capture_default_str();
  sim->add_option("--profile", sim_profile, "Participation bits, miner 1 first (default: everyone mines)");
  sim->add_option("--trials", sim_trials)->capture_default_str();
  sim->add_option("--seed", sim_seed)->capture_default_str();
  sim->add_option("--mode", sim_mode)->check(CLI::IsMember({"exponential", "discrete"}))->capture_default_str();
  sim->add_option("--ticks-per-unit", sim_ticks, "Discrete mode: ticks per unit time")->capture_default_str();
  sim->add_option("--cost-accounting", sim_accounting)
      ->check(CLI::IsMember({"paper", "all-pay"}))
      ->capture_default_str();
  sim->add_option("--threads", sim_threads, "Worker threads (0: all cores)")->capture_default_str();
  sim->add_option("--sigma", sim_sigma, "Pass threshold in standard errors")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  namespace sw = minegame::sweep;
  try {
    if (*two) {
      sw::TwoMinerSweepSpec spec{rational_flag("pv", two_pv), rational_flag("pc", two_pc), rational_flag("d", two_d),
                                 two_reward.range()};
      const auto art = sw::run_two_miner_sweep(spec);
      emit(two_out, art);
      std::string bp_path = two_breakpoints;
      if (bp_path.empty() && two_out.out != "-") bp_path = companion_path(two_out.out, ".breakpoints.csv");
      if (!bp_path.empty()) write_text(bp_path, art.breakpoints.to_csv());
    } else if (*sym) {
      sw::SymmetricSweepSpec spec{sym_n, rational_flag("d", sym_d), sym_reward.range(), sym_settings};
      emit(sym_out, sw::run_symmetric_sweep(spec));
    } else if (*rmap) {
      sw::RegionMapSpec spec{rational_flag("pv", map_pv), rational_flag("pc-min", pc_min),
                             rational_flag("pc-max", pc_max), pc_points,
                             rational_flag("rd-min", rd_min), rational_flag("rd-max", rd_max), rd_points};
      emit(map_out, sw::run_region_map(spec, !map_out.svg.empty()));
    } else if (*thr) {
      sw::ThresholdSpec spec{thr_n, rational_flag("d", thr_d), thr_reward.range()};
      emit(thr_out, sw::run_threshold(spec));
    } else if (*sim) {
      sw::SimulateSpec spec;
      const int sources = (!sim_miners.empty()) + (sim_n > 0) + (!sim_pv.empty() || !sim_pc.empty());
      if (sources != 1) throw UsageError("give exactly one of --miners, --n, or --pv/--pc");
      if (!sim_miners.empty()) {
        spec.miners = parse_miners(sim_miners);
      } else if (sim_n > 0) {
        spec.miners.assign(sim_n, minegame::MinerSpec{1.0, 1.0});
      } else {
        if (sim_pv.empty() || sim_pc.empty()) throw UsageError("--pv and --pc go together");
        spec.miners = {{1.0, 1.0},
                       {minegame::to_double(rational_flag("pc", sim_pc)), minegame::to_double(rational_flag("pv", sim_pv))}};
      }
      spec.difficulty = minegame::to_double(rational_flag("d", sim_d));
      spec.reward = minegame::to_double(rational_flag("reward", sim_reward));
      spec.profile = parse_profile(sim_profile, spec.miners.size());
      spec.trials = sim_trials;
      spec.seed = sim_seed;
      spec.mode = sim_mode == "discrete" ? minegame::race::RaceMode::discrete : minegame::race::RaceMode::exponential;
      spec.ticks_per_unit = sim_ticks;
      spec.cost_accounting = sim_accounting == "all-pay" ? sw::CostAccounting::all_pay : sw::CostAccounting::winner_pays;
      spec.threads = sim_threads;
      spec.sigma_threshold = sim_sigma;
      const auto art = sw::run_simulate(spec);
      write_text(sim_out.out, sim_out.format == "json" ? art.json : art.table.to_csv());
      if (!art.passed) {
        std::cerr << "simulate: at least one estimator is outside " << sim_sigma << " standard errors\n";
        return kExitValidationFailure;
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
