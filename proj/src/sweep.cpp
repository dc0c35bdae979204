#include "minegame/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

#include "minegame/analytic_two_miner.hpp"
#include "minegame/svg_plot.hpp"

namespace minegame::sweep {
namespace {

constexpr std::size_t kMaxGridPoints = 1'000'000;
constexpr std::size_t kContinuumSamples = 5;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string dec(const Rational& q) { return to_decimal_string(q, 12); }
std::string dec(double v) { return to_decimal_string(v, 12); }

// Appends (x, y) to the series `label`, starting a new polyline unless the
// previous point came from the immediately preceding grid index.
class SeriesBuilder {
 public:
  void add(const std::string& label, std::size_t grid_index, svg::Point p) {
    auto& entry = series_[label];
    if (entry.segments.empty() || entry.last_index + 1 != grid_index) entry.segments.emplace_back();
    entry.segments.back().push_back(p);
    entry.last_index = grid_index;
  }
  void add_segment(const std::string& label, std::vector<svg::Point> seg) {
    series_[label].segments.push_back(std::move(seg));
  }
  std::vector<svg::Series> build(const std::map<std::string, std::string>& colors, bool dash_mixed) const {
    std::vector<svg::Series> out;
    for (const auto& [label, entry] : series_) {
      svg::Series s;
      s.label = label;
      auto it = colors.find(label);
      s.color = it != colors.end() ? it->second : "#333";
      s.segments = entry.segments;
      s.dashed = dash_mixed && label.find("mixed") != std::string::npos;
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  struct Entry {
    std::vector<std::vector<svg::Point>> segments;
    std::size_t last_index = 0;
  };
  std::map<std::string, Entry> series_;
};

std::size_t checked_points(std::size_t points) {
  if (points > kMaxGridPoints) throw UsageError("grid too large");
  return points;
}

Rational grid_value(const Rational& lo, const Rational& hi, std::size_t i, std::size_t points) {
  if (points == 1) return lo;
  Rational frac(static_cast<long>(i), static_cast<long>(points - 1));
  frac.canonicalize();
  return Rational(lo + (hi - lo) * frac);
}

void check_miner_count(std::size_t n) {
  if (n < 2) throw UsageError("miner count must be >= 2");
  if (n > kMaxEnumeratedMiners) throw UsageError("miner count must be <= 24");
}

std::string branch_label(const two_miner::Equilibrium& e) {
  using two_miner::EquilibriumKind;
  switch (e.kind) {
    case EquilibriumKind::pure:
      return std::string("pure_") + (e.stay_out[0] == 0 ? '1' : '0') + (e.stay_out[1] == 0 ? '1' : '0');
    case EquilibriumKind::mixed_point:
      return "mixed";
    case EquilibriumKind::continuum:
      return "continuum_x" + std::to_string(e.free_miner + 1);
  }
  return "?";
}

std::string kind_label(two_miner::EquilibriumKind kind) {
  switch (kind) {
    case two_miner::EquilibriumKind::pure: return "pure";
    case two_miner::EquilibriumKind::mixed_point: return "mixed";
    case two_miner::EquilibriumKind::continuum: return "continuum";
  }
  return "?";
}

nlohmann::json cell_json(const std::string& cell) {
  if (cell.empty()) return nullptr;
  if (cell.find_first_not_of("-0123456789") == std::string::npos && cell != "-") {
    char* iend = nullptr;
    errno = 0;
    const long long i = std::strtoll(cell.c_str(), &iend, 10);
    if (errno == 0 && iend == cell.c_str() + cell.size()) return i;
  }
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() + cell.size() && std::isfinite(v)) return v;
  return cell;
}

}  // namespace

void RewardRange::validate() const {
  if (min < 0) throw UsageError("reward range must start at >= 0");
  if (max < min) throw UsageError("reward range is empty (max < min)");
  if (!(step > 0)) throw UsageError("reward step must be > 0");
  const Rational count = (max - min) / step;
  if (count > Rational(static_cast<long>(kMaxGridPoints))) throw UsageError("reward grid too large");
}

std::vector<Rational> RewardRange::grid() const {
  validate();
  std::vector<Rational> out;
  for (Rational r = min; r <= max; r += step) out.push_back(r);
  return out;
}

std::string Table::to_csv() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].find_first_of(",\n\"") != std::string::npos) throw std::logic_error("CSV cell needs quoting");
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  return out.str();
}

std::string Table::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) obj[header[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

const std::vector<std::string>& two_miner_header() {
  static const std::vector<std::string> h = {"p_v",      "p_c",        "d",         "R",          "R_over_d",
                                             "R_over_d_exact", "region", "branch",   "kind",       "x1_0",
                                             "x2_0",     "free_miner", "free_lower", "free_upper", "regret"};
  return h;
}

const std::vector<std::string>& symmetric_header() {
  static const std::vector<std::string> h = {"n", "d", "R", "R_over_d", "R_over_d_exact", "kind", "profile", "x0",
                                             "regret"};
  return h;
}

const std::vector<std::string>& region_map_header() {
  static const std::vector<std::string> h = {"p_v", "p_c", "R_over_d", "p_c_exact", "R_over_d_exact", "region"};
  return h;
}

const std::vector<std::string>& threshold_header() {
  static const std::vector<std::string> h = {"n",
                                             "threshold_R",
                                             "threshold_R_over_d",
                                             "n_times_R_over_d",
                                             "exact_threshold_R",
                                             "exact_threshold_R_over_d",
                                             "n_times_exact_R_over_d"};
  return h;
}

Artifacts run_two_miner_sweep(const TwoMinerSweepSpec& spec) {
  const two_miner::TwoMinerParams params{spec.p_v, spec.p_c, spec.d};
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto grid = spec.reward.grid();
  const auto norm = two_miner::normalize(params);

  Artifacts art;
  art.table.header = two_miner_header();
  SeriesBuilder panels[2];
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const Rational& reward = grid[gi];
    const Rational z = reward / spec.d;
    const auto set = two_miner::solve_two_miner(params, reward);
    const auto region = two_miner::to_string(two_miner::classify_region(norm.params, reward));
    const auto cfg = two_miner::config_from_params(params, reward);
    for (const auto& e : set.members) {
      Rational worst = 0;
      for (const auto& x : e.samples(kContinuumSamples)) {
        const Rational r = solver::regret(cfg, x);
        if (r > worst) worst = r;
      }
      if (worst != 0) throw std::logic_error("equilibrium with nonzero regret: " + e.describe());
      const bool cont = e.kind == two_miner::EquilibriumKind::continuum;
      std::vector<std::string> row = {dec(spec.p_v), dec(spec.p_c), dec(spec.d), dec(reward), dec(z),
                                      to_fraction_string(z), region, branch_label(e), kind_label(e.kind)};
      for (std::size_t k = 0; k < 2; ++k) row.push_back(cont && e.free_miner == k ? "" : dec(e.stay_out[k]));
      row.push_back(cont ? std::to_string(e.free_miner + 1) : "");
      row.push_back(cont ? dec(e.lower) : "");
      row.push_back(cont ? dec(e.upper) : "");
      row.push_back(to_fraction_string(worst));
      art.table.rows.push_back(std::move(row));

      const double zx = to_double(z);
      const std::string label = branch_label(e);
      for (std::size_t k = 0; k < 2; ++k) {
        if (cont && e.free_miner == k) {
          panels[k].add_segment(label, {{zx, to_double(e.lower)}, {zx, to_double(e.upper)}});
        } else {
          panels[k].add(label, gi, {zx, to_double(e.stay_out[k])});
        }
      }
    }
  }

  art.breakpoints.header = {"label", "R_over_d_exact", "R_over_d", "R_exact", "R"};
  for (const auto& bp : two_miner::breakpoints_2p(norm.params)) {
    const Rational reward = bp.r_over_d * norm.params.d;
    const Rational z = reward / spec.d;
    art.breakpoints.rows.push_back({bp.label, to_fraction_string(z), dec(z), to_fraction_string(reward), dec(reward)});
  }

  std::vector<svg::Panel> out_panels;
  const double zmin = to_double(grid.front() / spec.d);
  const double zmax = to_double(grid.back() / spec.d);
  for (std::size_t k = 0; k < 2; ++k) {
    const std::map<std::string, std::string> colors = {
        {"pure_00", kPalette[0]}, {"pure_01", kPalette[2]},      {"pure_10", kPalette[3]},
        {"pure_11", kPalette[1]}, {"mixed", kPalette[4]},        {"continuum_x1", kPalette[5]},
        {"continuum_x2", kPalette[6]}};
    svg::Panel p;
    p.title = "miner " + std::to_string(k + 1);
    p.x_label = "R/d";
    p.y_label = "x" + std::to_string(k + 1) + "_0 (stay-out probability)";
    p.x_min = zmin;
    p.x_max = zmax > zmin ? zmax : zmin + 1;
    p.y_min = -0.05;
    p.y_max = 1.05;
    p.series = panels[k].build(colors, true);
    out_panels.push_back(std::move(p));
  }
  art.svg = svg::render(out_panels, "Equilibria, p_v=" + dec(spec.p_v) + " p_c=" + dec(spec.p_c));
  return art;
}

Artifacts run_symmetric_sweep(const SymmetricSweepSpec& spec) {
  if (spec.miner_counts.empty()) throw UsageError("no miner counts given");
  for (auto n : spec.miner_counts) check_miner_count(n);
  if (!(spec.d > 0)) throw UsageError("d must be > 0");
  try {
    spec.settings.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto grid = spec.reward.grid();
  Artifacts art;
  art.table.header = symmetric_header();
  SeriesBuilder series;
  std::map<std::string, std::string> colors;
  for (std::size_t ni = 0; ni < spec.miner_counts.size(); ++ni) {
    const std::size_t n = spec.miner_counts[ni];
    const std::string tag = "n=" + std::to_string(n);
    for (const char* suffix : {" pure", " mixed"}) colors[tag + suffix] = kPalette[ni % std::size(kPalette)];
    const std::string ns = std::to_string(n);
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      const Rational& reward = grid[gi];
      const Rational z = reward / spec.d;
      const double zx = to_double(z);
      const auto cfg = make_symmetric_config<Rational>(n, 1, 1, spec.d, reward);
      for (const auto& s : solver::pure_nash_enumerate(cfg)) {
        const Rational r = solver::regret(cfg, ExactMixedProfile::from_pure(s));
        if (r != 0) throw std::logic_error("pure equilibrium with nonzero regret");
        std::string x0;
        if (s.participant_count() == 0) x0 = "1";
        if (s.participant_count() == n) x0 = "0";
        art.table.rows.push_back({ns, dec(spec.d), dec(reward), dec(z), to_fraction_string(z), "pure", s.to_string(),
                                  x0, to_fraction_string(r)});
        if (!x0.empty()) series.add(tag + " pure" + (x0 == "1" ? " out" : " in"), gi, {zx, x0 == "1" ? 1.0 : 0.0});
      }
      const double d = to_double(spec.d);
      const double rx = to_double(reward);
      const auto fcfg = make_symmetric_config<double>(n, 1.0, 1.0, d, rx);
      for (const auto& x : solver::symmetric_mixed_nash(n, 1.0, 1.0, d, rx, spec.settings)) {
        const double r = solver::regret(fcfg, x);
        if (!(r <= spec.settings.regret_tolerance)) throw std::logic_error("mixed equilibrium regret above tolerance");
        char rbuf[32];
        std::snprintf(rbuf, sizeof rbuf, "%.2e", r);
        art.table.rows.push_back({ns, dec(spec.d), dec(reward), dec(z), to_fraction_string(z), "mixed", "*",
                                  to_decimal_string(x.stay_out(0), 10), rbuf});
        series.add(tag + " mixed", gi, {zx, x.stay_out(0)});
      }
    }
    colors[tag + " pure out"] = colors[tag + " pure"];
    colors[tag + " pure in"] = colors[tag + " pure"];
  }
  svg::Panel p;
  p.title = "symmetric miners, d=" + dec(spec.d);
  p.x_label = "R/d";
  p.y_label = "x_0 (stay-out probability)";
  p.x_min = to_double(grid.front() / spec.d);
  p.x_max = std::max(p.x_min + 1e-9, to_double(grid.back() / spec.d));
  p.y_min = -0.05;
  p.y_max = 1.05;
  p.series = series.build(colors, true);
  art.svg = svg::render({p}, "Symmetric equilibria");
  return art;
}

Artifacts run_region_map(const RegionMapSpec& spec, bool with_svg) {
  if (spec.p_v < 1) throw UsageError("region map needs p_v >= 1");
  if (!(spec.p_c_min > 0)) throw UsageError("p_c range must be > 0");
  if (spec.p_c_max < spec.p_c_min || spec.r_over_d_max < spec.r_over_d_min) throw UsageError("empty range");
  if (spec.r_over_d_min < 0) throw UsageError("R/d range must be >= 0");
  if (spec.p_c_points < 1 || spec.r_over_d_points < 1) throw UsageError("grid needs at least one point per axis");
  if (checked_points(spec.p_c_points) * checked_points(spec.r_over_d_points) > kMaxGridPoints) {
    throw UsageError("grid too large");
  }
  const std::map<std::string, std::string> fill = {{"a", "#9ecae1"},  {"b", "#fdae6b"},  {"c", "#d9d9d9"},
                                                   {"d", "#a1d99b"},  {"ab", "#000"},    {"bc", "#000"},
                                                   {"cd", "#000"},    {"da", "#000"},    {"corner", "#e31a1c"}};
  Artifacts art;
  art.table.header = region_map_header();
  svg::Panel panel;
  const Rational pc_step = spec.p_c_points > 1 ? Rational((spec.p_c_max - spec.p_c_min) / (spec.p_c_points - 1)) : 1;
  const Rational rd_step =
      spec.r_over_d_points > 1 ? Rational((spec.r_over_d_max - spec.r_over_d_min) / (spec.r_over_d_points - 1)) : 1;
  for (std::size_t i = 0; i < spec.p_c_points; ++i) {
    const Rational pc = grid_value(spec.p_c_min, spec.p_c_max, i, spec.p_c_points);
    const two_miner::TwoMinerParams params{spec.p_v, pc, 1};
    for (std::size_t j = 0; j < spec.r_over_d_points; ++j) {
      const Rational z = grid_value(spec.r_over_d_min, spec.r_over_d_max, j, spec.r_over_d_points);
      const std::string label = two_miner::to_string(two_miner::classify_region(params, z));
      art.table.rows.push_back({dec(spec.p_v), dec(pc), dec(z), to_fraction_string(pc), to_fraction_string(z), label});
      if (with_svg) {
        const double hx = to_double(pc_step) / 2, hy = to_double(rd_step) / 2;
        const std::string& color = fill.at(label);
        if (j > 0 && panel.cells.back().color == color) {
          panel.cells.back().y1 = to_double(z) + hy;  // extend the run in this column
        } else {
          panel.cells.push_back({to_double(pc) - hx, to_double(z) - hy, to_double(pc) + hx, to_double(z) + hy, color});
        }
      }
    }
  }
  if (with_svg) {
    panel.title = "regions, p_v=" + dec(spec.p_v) + " (a blue, b orange, c grey, d green)";
    panel.x_label = "p_c";
    panel.y_label = "R/d";
    panel.x_min = to_double(spec.p_c_min);
    panel.x_max = std::max(panel.x_min + 1e-9, to_double(spec.p_c_max));
    panel.y_min = to_double(spec.r_over_d_min);
    panel.y_max = std::max(panel.y_min + 1e-9, to_double(spec.r_over_d_max));
    art.svg = svg::render({panel}, "Region map");
  }
  return art;
}

Artifacts run_threshold(const ThresholdSpec& spec) {
  if (spec.miner_counts.empty()) throw UsageError("no miner counts given");
  for (auto n : spec.miner_counts) check_miner_count(n);
  if (!(spec.d > 0)) throw UsageError("d must be > 0");
  const auto grid = spec.reward.grid();
  Artifacts art;
  art.table.header = threshold_header();
  svg::Series found{"grid threshold", kPalette[0], {}, false};
  svg::Series exact{"exact d/n", kPalette[1], {{}}, true};
  double y_max = 0;
  for (std::size_t n : spec.miner_counts) {
    const Rational nn(static_cast<long>(n));
    const auto threshold = solver::participation_threshold<Rational>(n, 1, 1, spec.d, grid);
    const Rational exact_r = solver::exact_participation_threshold<Rational>(n, 1, 1, spec.d);
    const Rational exact_z = exact_r / spec.d;
    std::vector<std::string> row = {std::to_string(n)};
    if (threshold) {
      const Rational z = *threshold / spec.d;
      row.insert(row.end(), {dec(*threshold), dec(z), dec(Rational(nn * z))});
      found.segments.push_back({{static_cast<double>(n), to_double(z)}});
      y_max = std::max(y_max, to_double(z));
    } else {
      row.insert(row.end(), {"none", "none", "none"});
    }
    row.insert(row.end(), {to_fraction_string(exact_r), to_fraction_string(exact_z),
                           to_fraction_string(Rational(nn * exact_z))});
    exact.segments.front().push_back({static_cast<double>(n), to_double(exact_z)});
    y_max = std::max(y_max, to_double(exact_z));
    art.table.rows.push_back(std::move(row));
  }
  svg::Panel p;
  p.title = "all-participate threshold, d=" + dec(spec.d);
  p.x_label = "number of miners n";
  p.y_label = "R/d";
  p.x_min = static_cast<double>(*std::min_element(spec.miner_counts.begin(), spec.miner_counts.end())) - 0.5;
  p.x_max = static_cast<double>(*std::max_element(spec.miner_counts.begin(), spec.miner_counts.end())) + 0.5;
  p.y_min = 0;
  p.y_max = y_max * 1.1 + 1e-9;
  p.series = {exact, found};
  art.svg = svg::render({p}, "Participation threshold");
  return art;
}

Artifacts run_simulate(const SimulateSpec& spec) {
  if (spec.trials < 1) throw UsageError("trials must be >= 1");
  if (!(spec.sigma_threshold > 0)) throw UsageError("sigma threshold must be > 0");
  std::optional<GameConfig> maybe_cfg;
  try {
    maybe_cfg.emplace(spec.miners, spec.difficulty, spec.reward);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const GameConfig& cfg = *maybe_cfg;
  if (spec.profile.size() != cfg.size()) throw UsageError("profile length does not match miner count");
  if (!(total_hash_rate(cfg, spec.profile) > 0)) throw UsageError("all-abstain profile: no race to simulate");
  if (spec.mode == race::RaceMode::discrete && spec.difficulty < 1) throw UsageError("discrete mode needs D >= 1");
  if (!(spec.ticks_per_unit > 0)) throw UsageError("ticks per unit must be > 0");

  race::SimulationOptions options;
  options.mode = spec.mode;
  options.discrete.ticks_per_unit = spec.ticks_per_unit;
  options.threads = spec.threads;
  const race::RaceStats stats = race::estimate_stats(cfg, spec.profile, spec.trials, spec.seed, options);

  Artifacts art;
  art.table.header = {"miner", "quantity", "closed_form", "estimate", "std_err", "z_score", "pass"};
  nlohmann::ordered_json report;
  report["mode"] = race::to_string(spec.mode);
  report["cost_accounting"] = spec.cost_accounting == CostAccounting::winner_pays ? "paper" : "all-pay";
  report["trials"] = spec.trials;
  report["seed"] = spec.seed;
  report["difficulty"] = spec.difficulty;
  report["reward"] = spec.reward;
  report["profile"] = spec.profile.to_string();
  report["sigma_threshold"] = spec.sigma_threshold;
  if (spec.mode == race::RaceMode::discrete) report["ticks_per_unit"] = spec.ticks_per_unit;

  bool all_pass = true;
  auto check = [&](std::size_t k, const char* name, double closed, const race::Estimate& est) {
    const double diff = std::abs(est.mean - closed);
    const bool pass = diff <= spec.sigma_threshold * est.std_err;
    all_pass = all_pass && pass;
    nlohmann::ordered_json j;
    j["closed_form"] = closed;
    j["estimate"] = est.mean;
    j["std_err"] = est.std_err;
    const double z = est.std_err > 0 ? (est.mean - closed) / est.std_err : 0.0;
    j["z_score"] = z;
    j["pass"] = pass;
    art.table.rows.push_back({std::to_string(k + 1), name, dec(closed), dec(est.mean), dec(est.std_err), dec(z),
                              pass ? "true" : "false"});
    return j;
  };

  nlohmann::ordered_json miners = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    nlohmann::ordered_json m;
    m["miner"] = k + 1;
    m["cost_rate"] = cfg.miner(k).cost_rate;
    m["efficiency"] = cfg.miner(k).efficiency;
    m["participates"] = spec.profile.participates(k);
    m["win_probability"] = check(k, "win_probability", win_probability(cfg, spec.profile, k), stats.win_prob[k]);
    m["expected_reward"] = check(k, "expected_reward", expected_reward(cfg, spec.profile, k), stats.reward[k]);
    m["expected_cost"] = check(k, "expected_cost", expected_cost(cfg, spec.profile, k), stats.cost[k]);
    m["utility"] = check(k, "utility", utility(cfg, spec.profile, k), stats.utility[k]);
    m["wins"] = stats.wins[k];
    m["mean_finish_time_given_win"] = {{"estimate", stats.finish_time_given_win[k].mean},
                                       {"std_err", stats.finish_time_given_win[k].std_err}};
    if (spec.cost_accounting == CostAccounting::all_pay) {
      m["all_pay_cost"] = {{"note", "diagnostic: c_k*T charged to every participant, not the expected-cost model"},
                           {"estimate", stats.all_pay_cost[k].mean},
                           {"std_err", stats.all_pay_cost[k].std_err}};
    }
    miners.push_back(std::move(m));
  }
  report["miners"] = std::move(miners);
  double total_rate = 0;
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    total_rate += poisson_rate(cfg.miner(k), spec.profile.participates(k), cfg.difficulty());
  }
  report["finish_time"] = {{"closed_form_exponential", 1.0 / total_rate},
                           {"estimate", stats.finish_time.mean},
                           {"std_err", stats.finish_time.std_err}};
  report["all_pass"] = all_pass;
  art.json = report.dump(2) + "\n";
  art.passed = all_pass;
  return art;
}

}  // namespace minegame::sweep
