#include "dualmeet/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dualmeet/emit.hpp"
#include "dualmeet/exact_dist.hpp"
#include "dualmeet/population.hpp"
#include "dualmeet/race_sim.hpp"
#include "dualmeet/reproduce.hpp"
#include "dualmeet/roster_file.hpp"
#include "dualmeet/summary.hpp"

namespace dualmeet {
namespace {

struct RunConfig {
  std::optional<int> m;
  std::optional<int> m_a;
  std::optional<int> m_b;
  std::optional<int> n;
  bool displacement = true;
  std::string condition = "none";
  bool abs = false;

  std::vector<std::string> ratios;
  bool scenario = false;
  std::optional<int> pool_a;
  std::optional<int> pool_b;

  std::string roster;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  std::string tiers;
  bool remainder = false;
  std::optional<int> m_full;
  std::optional<int> m_injured;

  std::string format = "csv";
  int precision = 4;
  std::string quantiles = "0.5,0.75,0.9";
  bool summary = false;
  std::string out_path;
  std::string out_dir = "reproduction";
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw InvalidInput("empty entry in list '" + text + "'");
    items.push_back(item);
  }
  return items;
}

std::vector<Rational> parse_levels(const std::string& text) {
  std::vector<Rational> levels;
  for (const auto& item : split_list(text)) {
    Rational q = parse_rational(item);
    if (q <= 0 || q >= 1) throw InvalidInput("quantile level " + item + " outside (0,1)");
    levels.push_back(q);
  }
  return levels;
}

MeetFormat require_format(const RunConfig& c) {
  if (!c.n) throw InvalidInput("--n is required");
  MeetFormat f;
  if (c.m) {
    if (c.m_a || c.m_b) throw InvalidInput("give either --m or --m-a/--m-b, not both");
    f = MeetFormat::symmetric(*c.m, *c.n, c.displacement);
  } else if (c.m_a && c.m_b) {
    f = MeetFormat{*c.m_a, *c.m_b, *c.n, c.displacement};
  } else if (c.m_a || c.m_b) {
    throw InvalidInput("--m-a and --m-b must be given together");
  } else {
    throw InvalidInput("--m (or --m-a and --m-b) is required");
  }
  f.validate();
  return f;
}

Condition require_condition(const RunConfig& c, const MeetFormat& f) {
  Condition cond = Condition::parse(c.condition);
  cond.validate(f);
  return cond;
}

class Emitter {
 public:
  Emitter(const RunConfig& c, std::ostream& out)
      : config_(c), out_(out), format_(output_format_from_string(c.format)), levels_(parse_levels(c.quantiles)) {
    if (c.precision < 0 || c.precision > 30) throw InvalidInput("--precision must lie in [0, 30]");
  }

  void distribution(const ScoreDistribution& dist, const Metadata& metadata = {}) {
    const ScoreDistribution shown = config_.abs ? symmetrize(dist, Symmetrization::Fold) : dist;
    if (config_.summary) {
      write(emit_summary(summarize(shown, levels_), format_, config_.precision));
    } else {
      write(emit_distribution(shown, format_, config_.precision, metadata));
    }
  }

  void sweep(const std::vector<SweepColumn>& columns) {
    if (config_.summary) {
      write(emit_sweep_summary(columns, format_, levels_, config_.precision));
    } else {
      write(emit_sweep(columns, format_, config_.precision));
    }
  }

 private:
  void write(const std::string& document) {
    if (config_.out_path.empty()) {
      out_ << document;
      return;
    }
    std::ofstream file(config_.out_path, std::ios::binary);
    if (!file) throw InvalidInput("cannot write '" + config_.out_path + "'");
    file << document;
  }

  const RunConfig& config_;
  std::ostream& out_;
  OutputFormat format_;
  std::vector<Rational> levels_;
};

void add_format_options(CLI::App* cmd, RunConfig& c, bool symmetric_only = false) {
  cmd->add_option("--m", c.m, "Runners per team")->check(CLI::PositiveNumber);
  if (!symmetric_only) {
    cmd->add_option("--m-a", c.m_a, "Team A roster size")->check(CLI::PositiveNumber);
    cmd->add_option("--m-b", c.m_b, "Team B roster size")->check(CLI::PositiveNumber);
  }
  cmd->add_option("--n", c.n, "Scorers per team")->check(CLI::PositiveNumber);
  cmd->add_flag("--displacement,!--no-displacement", c.displacement,
                "Non-scoring finishers keep their places (default) or are removed");
}

void add_condition_option(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--condition", c.condition, "none, fastest:A, top2:B or places such as 1:A,3:A")
      ->capture_default_str();
}

void add_output_options(CLI::App* cmd, RunConfig& c, bool distribution = true) {
  cmd->add_option("--format", c.format, "csv, json or md")->capture_default_str();
  cmd->add_option("--precision", c.precision, "Decimal places for rounded values")->capture_default_str();
  cmd->add_option("--quantiles", c.quantiles, "Quantile levels for --summary")->capture_default_str();
  cmd->add_flag("--summary", c.summary, "Emit summary statistics instead of the distribution");
  if (distribution) cmd->add_flag("--abs", c.abs, "Fold to the distribution of |margin|");
  cmd->add_option("--out", c.out_path, "Write the document to this file instead of standard output");
}

int reproduce(const RunConfig& c, std::ostream& out) {
  const ReproductionReport report = reproduce_reference_tables();
  write_reproduction(report, c.out_dir);
  for (const auto& t : report.tables) {
    out << std::left << std::setw(28) << t.name << ' ' << to_string(t.status) << " (" << t.cells << " cells";
    if (t.published_rounding > 0) out << ", " << t.published_rounding << " published-rounding";
    if (t.failures > 0) out << ", " << t.failures << " failed";
    out << ")\n";
  }
  std::size_t inconsistent = 0;
  std::size_t failed = 0;
  for (const auto& p : report.prose) {
    if (p.status == CheckStatus::Inconsistent) {
      ++inconsistent;
      out << "inconsistent: " << p.id << " published " << p.published << ", computed " << p.computed << '\n';
    } else if (p.status == CheckStatus::Fail) {
      ++failed;
      out << "failed: " << p.id << " published " << p.published << ", computed " << p.computed << '\n';
    }
  }
  out << "quoted statistics: " << report.prose.size() << " checked, " << inconsistent << " inconsistent, " << failed
      << " failed\n";
  out << "manifest: " << (std::filesystem::path(c.out_dir) / "manifest.json").string() << '\n';
  out << (report.pass() ? "PASS" : "FAIL") << " in " << std::fixed << std::setprecision(2) << report.seconds << " s\n";
  return report.pass() ? kExitOk : kExitManifestFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact score distributions for cross-country dual meets", "dualmeet"};
  app.require_subcommand(1);
  app.allow_extras(false);

  auto* iid = app.add_subcommand("iid", "Every interleaving of the two rosters equally likely");
  add_format_options(iid, c);
  add_condition_option(iid, c);
  add_output_options(iid, c);

  auto* population = app.add_subcommand("population", "Large-population limit at one or more ratios r");
  add_format_options(population, c, true);
  add_condition_option(population, c);
  population->add_option("--ratios", c.ratios, "Team A's share r of the talent pool, e.g. 0.5,0.55,2/3")
      ->delimiter(',')
      ->required();
  population->add_flag("--scenario", c.scenario, "Use the 2^(2n-1) scenario sum (no displacement only)");
  add_output_options(population, c);

  auto* finite = app.add_subcommand("finite-population", "Rosters drawn as the fastest runners of finite pools");
  add_format_options(finite, c);
  add_condition_option(finite, c);
  finite->add_option("--pool-a", c.pool_a, "Team A pool size")->required()->check(CLI::PositiveNumber);
  finite->add_option("--pool-b", c.pool_b, "Team B pool size")->required()->check(CLI::PositiveNumber);
  add_output_options(finite, c);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo meet from per-runner time models");
  simulate->add_option("--roster", c.roster, "Roster JSON file")->required();
  simulate->add_option("--n", c.n, "Scorers per team")->required()->check(CLI::PositiveNumber);
  simulate->add_flag("--displacement,!--no-displacement", c.displacement,
                     "Non-scoring finishers keep their places (default) or are removed");
  simulate->add_option("--samples", c.samples, "Number of simulated meets")->required();
  simulate->add_option("--seed", c.seed, "Generator seed")->capture_default_str();
  simulate->add_option("--threads", c.threads, "Worker threads; results do not depend on it")->capture_default_str();
  add_output_options(simulate, c);

  auto* tiers = app.add_subcommand("tiers", "Runners split into tiers that never interleave");
  add_format_options(tiers, c);
  tiers->add_option("--tiers", c.tiers, "A:B counts per tier, fastest first, e.g. 2:2,2:2")->required();
  tiers->add_flag("--remainder", c.remainder, "Put every runner not listed into one final tier");
  add_output_options(tiers, c);

  auto* injury = app.add_subcommand("injury", "Short-handed team (Team A) against a full roster");
  injury->add_option("--m-full", c.m_full, "Full team's roster size")->required()->check(CLI::PositiveNumber);
  injury->add_option("--m-injured", c.m_injured, "Short-handed team's roster size")->required()->check(CLI::PositiveNumber);
  injury->add_option("--n", c.n, "Scorers per team")->required()->check(CLI::PositiveNumber);
  injury->add_flag("--displacement,!--no-displacement", c.displacement,
                   "Non-scoring finishers keep their places (default) or are removed");
  add_condition_option(injury, c);
  add_output_options(injury, c);

  auto* repro = app.add_subcommand("reproduce-paper", "Recompute every reference table and write a manifest");
  repro->add_option("--out-dir", c.out_dir, "Directory for the documents and manifest")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(reversed.begin(), reversed.end());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "error: " << message << '\n';
    return kExitInvalid;
  }

  try {
    if (repro->parsed()) return reproduce(c, out);

    Emitter emitter(c, out);
    if (iid->parsed()) {
      const MeetFormat f = require_format(c);
      emitter.distribution(iid_distribution(f, require_condition(c, f)));
    } else if (population->parsed()) {
      const MeetFormat f = require_format(c);
      const Condition cond = require_condition(c, f);
      if (c.scenario && (f.displacement || !cond.empty())) {
        throw InvalidInput("--scenario needs --no-displacement and no condition");
      }
      std::vector<SweepColumn> columns;
      for (const auto& label : c.ratios) {
        const PopulationRatio r = PopulationRatio::parse(label);
        columns.push_back({label, c.scenario ? scenario_distribution_no_displacement(f.n, r)
                                             : population_distribution(f, r, cond)});
      }
      if (columns.size() == 1) {
        emitter.distribution(columns.front().distribution);
      } else {
        emitter.sweep(columns);
      }
    } else if (finite->parsed()) {
      const MeetFormat f = require_format(c);
      emitter.distribution(finite_population_distribution(*c.pool_a, *c.pool_b, f, require_condition(c, f)));
    } else if (simulate->parsed()) {
      const Roster roster = load_roster(c.roster);
      const MeetFormat f = roster.format(*c.n, c.displacement);
      SimulationOptions options;
      options.samples = c.samples;
      options.seed = c.seed;
      options.threads = c.threads;
      const SimulationResult result = simulate_meet(f, roster, options);
      emitter.distribution(result.distribution, {{"generator", result.generator},
                                                 {"seed", std::to_string(result.seed)},
                                                 {"samples", std::to_string(result.samples)},
                                                 {"batch_size", std::to_string(result.batch_size)}});
    } else if (tiers->parsed()) {
      const MeetFormat f = require_format(c);
      TierSpec spec = TierSpec::parse(c.tiers);
      if (c.remainder) spec = spec.with_remainder(f);
      emitter.distribution(tiered_distribution(f, spec));
    } else if (injury->parsed()) {
      const MeetFormat f{*c.m_injured, *c.m_full, *c.n, c.displacement};
      f.validate();
      emitter.distribution(injury_distribution(*c.m_full, *c.m_injured, *c.n, c.displacement, require_condition(c, f)));
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace dualmeet
