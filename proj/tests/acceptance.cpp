// One line per acceptance criterion. Exit status is nonzero if any line fails.

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dualmeet/exact_dist.hpp"
#include "dualmeet/population.hpp"
#include "dualmeet/race_sim.hpp"
#include "dualmeet/reference.hpp"
#include "dualmeet/reproduce.hpp"
#include "dualmeet/summary.hpp"
#include "oracles.hpp"

using namespace dualmeet;

namespace {

constexpr double kStatTolerance = 0.005;
constexpr double kPairwiseTolerance = 1e-9;
constexpr double kSimulationTv = 0.005;
constexpr std::uint64_t kSimulationSamples = 1'000'000;
constexpr std::uint64_t kSimulationSeed = 20240601;
constexpr double kMeanScoreATolerance = 0.02;
constexpr double kMeanScoreBTolerance = 0.05;

// Collects the sub-checks of one criterion; the first few misses are reported.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 3) misses_ << (failed_ > 1 ? "; " : "") << what;
  }

  void near(double computed, double expected, double tolerance, const std::string& what) {
    std::ostringstream s;
    s << what << " = " << std::setprecision(6) << computed << ", expected " << expected << " +/- " << tolerance;
    expect(std::fabs(computed - expected) <= tolerance, s.str());
  }

  [[nodiscard]] bool ok() const { return failed_ == 0; }
  [[nodiscard]] std::string detail() const {
    std::ostringstream s;
    s << total_ - failed_ << "/" << total_ << " checks";
    if (failed_ > 0) s << "; " << misses_.str();
    return s.str();
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::ostringstream misses_;
};

std::string with_zero(const std::string& cell) { return !cell.empty() && cell.front() == '.' ? "0" + cell : cell; }

// Counts and 4-decimal probabilities of an IID reference table.
void check_count_table(Check& c, const std::string& name, const MeetFormat& f, const Condition& cond,
                       bool allow_published_rounding) {
  const ReferenceTable table = reference_table(name);
  const ScoreDistribution d = iid_distribution(f, cond);
  const std::size_t c_margin = table.column("margin");
  const std::size_t c_count = table.column("count");
  const std::size_t c_prob = table.column("probability");
  c.expect(table.rows.size() == d.support_size(), name + ": support size");
  for (const auto& row : table.rows) {
    const int m = std::stoi(row[c_margin]);
    c.expect(d.weight(m) == Rational(BigInt(row[c_count])), name + ": count at margin " + row[c_margin]);
    const int places = decimal_places(row[c_prob]);
    const Rational published = parse_rational(row[c_prob]);
    const Rational computed = round_half_even(d.probability(m), places);
    const Rational ulp = Rational(1) / power(Rational(10), places);
    const bool ok = computed == published || (allow_published_rounding && abs(computed - published) == ulp);
    c.expect(ok, name + ": probability at margin " + row[c_margin] + " " + format_fixed(computed, places) +
                     " vs " + with_zero(row[c_prob]));
  }
}

double stat(const ScoreDistribution& d, const std::string& name) { return evaluate_statistic(d, name).value; }

MeetFormat format_from_table(const std::string& name) {
  // population_<kind>_<m>_<n>_<disp|nodisp>
  std::istringstream in(name);
  std::vector<std::string> parts;
  for (std::string p; std::getline(in, p, '_');) parts.push_back(p);
  return MeetFormat::symmetric(std::stoi(parts[2]), std::stoi(parts[3]), parts[4] == "disp");
}

const std::vector<std::string> kPopulationVariants{"4_4_nodisp", "5_5_nodisp", "6_4_disp", "7_5_disp"};

bool criterion_1(Check& c) {
  const MeetFormat f = MeetFormat::symmetric(6, 4, false);
  const ScoreDistribution d = iid_distribution(f, Condition::fastest(Team::A));
  const std::vector<long> published{21, 15, 25, 35, 45, 40, 55, 45, 50, 46, 36, 21, 28};
  std::vector<long> computed;
  for (const auto& [m, w] : d.weights()) computed.push_back(static_cast<long>(numerator(w)));
  c.expect(computed == published, "(6,4) A-fastest counts");
  c.expect(d.total() == 462, "(6,4) A-fastest total");
  check_count_table(c, "iid_6_4_nodisp_first", f, Condition::fastest(Team::A), false);
  return c.ok();
}

bool criterion_2(Check& c) {
  const MeetFormat f = MeetFormat::symmetric(6, 4, true);
  const ScoreDistribution d = iid_distribution(f, Condition::fastest(Team::A));
  c.expect(d.support_size() == 39 && d.min_margin() == -14 && d.max_margin() == 24, "support -14..24");
  check_count_table(c, "iid_6_4_disp_first", f, Condition::fastest(Team::A), true);
  c.near(stat(d, "p_win"), 0.6991, kStatTolerance, "p_win");
  c.near(stat(d, "p_tie"), 0.0584, kStatTolerance, "p_tie");
  c.near(stat(d, "mean_win"), 9.08, kStatTolerance, "mean_win");
  // The quoted 0.30 contradicts the quoted win and tie figures; it must show
  // up as inconsistent while the exact value matches 1 - 0.6991 - 0.0584.
  c.near(stat(d, "p_loss"), 0.2425, kStatTolerance, "p_loss");
  c.expect(std::fabs(stat(d, "p_loss") - 0.30) > kStatTolerance, "p_loss differs from the quoted 0.30");
  bool flagged = false;
  for (const auto& p : reproduce_reference_tables().prose) {
    if (p.id == "iid_6_4_disp_first_loss") flagged = p.status == CheckStatus::Inconsistent;
  }
  c.expect(flagged, "quoted p_loss flagged inconsistent");
  return c.ok();
}

bool criterion_3(Check& c) {
  const auto top2 = Condition::fastest(Team::A, 2);
  const auto first = Condition::fastest(Team::A);
  check_count_table(c, "iid_6_4_nodisp_top2", MeetFormat::symmetric(6, 4, false), top2, true);
  check_count_table(c, "iid_7_5_nodisp_first", MeetFormat::symmetric(7, 5, false), first, true);
  check_count_table(c, "iid_7_5_disp_first", MeetFormat::symmetric(7, 5, true), first, true);
  check_count_table(c, "iid_7_5_disp_top2", MeetFormat::symmetric(7, 5, true), top2, true);

  const auto d75 = iid_distribution(MeetFormat::symmetric(7, 5, true), first);
  c.near(stat(d75, "p_win"), 0.7022, kStatTolerance, "(7,5) p_win");
  c.near(stat(d75, "mean_win"), 11.66, kStatTolerance, "(7,5) mean_win");
  c.near(stat(d75, "mean_loss_abs"), 6.882, kStatTolerance, "(7,5) mean_loss");
  const auto t75 = iid_distribution(MeetFormat::symmetric(7, 5, true), top2);
  c.near(stat(t75, "p_win"), 0.904, kStatTolerance, "(7,5) top-two p_win");
  c.near(stat(t75, "mean_win"), 14.06, kStatTolerance, "(7,5) top-two mean_win");
  c.near(stat(t75, "p_tie"), 0.009, kStatTolerance, "(7,5) top-two p_tie");
  return c.ok();
}

bool criterion_4(Check& c) {
  struct Expected {
    MeetFormat format;
    double mean, std;
    Rational median;
    std::optional<Rational> q75, q90;
  };
  const std::vector<Expected> rows{
      {MeetFormat::symmetric(6, 4, false), 6.56277, 4.52355, 6, Rational(10), Rational(14)},
      {MeetFormat::symmetric(6, 4, true), 7.554, 5.334, Rational(13, 2), Rational(11), Rational(15)},
      {MeetFormat::symmetric(7, 5, false), 9.108, 6.283, 9, std::nullopt, Rational(19)},
      {MeetFormat::symmetric(7, 5, true), 10.12, 7.100, 9, Rational(15), Rational(21)},
  };
  for (const auto& e : rows) {
    const std::string label = describe(e.format);
    const auto abs_margin = symmetrize(iid_distribution(e.format), Symmetrization::Fold);
    const MeetSummary s = summarize(abs_margin);
    c.near(to_double(s.mean_margin), e.mean, kStatTolerance, label + " mean");
    c.near(s.std_margin, e.std, kStatTolerance, label + " std");
    c.expect(s.median == e.median, label + " median " + to_string(s.median));
    if (e.q75) c.expect(quantile(abs_margin, Rational(3, 4)) == *e.q75, label + " q75");
    if (e.q90) c.expect(quantile(abs_margin, Rational(9, 10)) == *e.q90, label + " q90");
  }
  return c.ok();
}

bool criterion_5(Check& c) {
  for (const auto& variant : kPopulationVariants) {
    const std::string name = "population_stats_" + variant;
    const ReferenceTable table = reference_table(name);
    const MeetFormat f = format_from_table(name);
    for (std::size_t col = 1; col < table.header.size(); ++col) {
      const auto d = population_distribution(f, PopulationRatio::parse(table.header[col]));
      const MeetSummary s = summarize(d, std::vector<Rational>{Rational(9, 10)});
      for (const auto& row : table.rows) {
        const std::string what = name + " r=" + table.header[col] + " " + row[0];
        const double published = std::stod(row[col]);
        if (row[0] == "win") {
          c.near(to_double(s.p_win), published, kStatTolerance, what);
        } else if (row[0] == "mean") {
          c.near(to_double(s.mean_margin), published, kStatTolerance, what);
        } else if (row[0] == "std") {
          c.near(s.std_margin, published, kStatTolerance, what);
        } else if (row[0] == "mean_win") {
          c.near(s.mean_win_margin ? to_double(*s.mean_win_margin) : NAN, published, kStatTolerance, what);
        } else if (row[0] == "mean_loss") {
          c.near(s.mean_loss_margin ? to_double(*s.mean_loss_margin) : NAN, published, kStatTolerance, what);
        } else if (row[0] == "quantile_0.9") {
          c.expect(s.quantiles.at(Rational(9, 10)) == parse_rational(row[col]), what);
        } else {
          c.expect(false, what + ": unknown row");
        }
      }
    }
  }
  return c.ok();
}

bool criterion_6(Check& c) {
  for (const auto& variant : kPopulationVariants) {
    const std::string name = "population_dist_" + variant;
    const ReferenceTable table = reference_table(name);
    const MeetFormat f = format_from_table(name);
    for (std::size_t col = 1; col < table.header.size(); ++col) {
      const auto d = population_distribution(f, PopulationRatio::parse(table.header[col]));
      for (const auto& row : table.rows) {
        const int m = std::stoi(row[0]);
        const int places = row[col] == "0" ? 4 : decimal_places(row[col]);
        const Rational computed = round_half_even(d.probability(m), places);
        const Rational published = parse_rational(row[col]);
        const Rational ulp = Rational(1) / power(Rational(10), places);
        c.expect(computed == published || abs(computed - published) == ulp,
                 name + " r=" + table.header[col] + " margin " + row[0]);
      }
    }
  }
  auto anchor = [&](int m, int n, bool disp, const char* r, int margin, const char* expected) {
    const auto d = population_distribution(MeetFormat::symmetric(m, n, disp), PopulationRatio::parse(r));
    c.expect(format_fixed(d.probability(margin), 4) == expected,
             std::string("anchor r=") + r + " d=" + std::to_string(margin));
  };
  anchor(4, 4, false, "0.8", 16, "0.4096");
  anchor(5, 5, false, "0.7", 25, "0.1681");
  anchor(7, 5, true, "0.5", -35, "0.0078");
  return c.ok();
}

void check_identities(Check& c, const ScoreDistribution& d, const std::string& what) {
  const auto fold = symmetrize(d, Symmetrization::Fold);
  const auto half = symmetrize(d, Symmetrization::MirrorHalfSpace);
  c.expect(d.mirrored().mirrored() == d, what + ": mirror is an involution");
  c.expect(symmetrize(d.mirrored(), Symmetrization::Fold) == fold, what + ": fold ignores the sign");
  c.expect(fold.total() == d.total(), what + ": fold keeps the total");
  if (d.kind() == WeightKind::Count) {
    c.expect(half.total() == 2 * d.total(), what + ": mirrored half doubles the count");
  } else {
    c.expect(half.total() == 1, what + ": probabilities stay normalized");
  }
  c.expect(fold.normalized() == half.normalized(), what + ": both modes agree in probability");
  c.expect(fold.min_margin() >= 0, what + ": folded margins are nonnegative");
}

bool criterion_7(Check& c) {
  const std::vector<std::string> ratios{"0.5", "0.55", "2/3", "0.8"};
  for (int n = 2; n <= 5; ++n) {
    for (const auto& text : ratios) {
      const PopulationRatio r = PopulationRatio::parse(text);
      const auto scenario = scenario_distribution_no_displacement(n, r);
      c.expect(scenario.total() == 1, "scenario total N=" + std::to_string(n));
      check_identities(c, scenario, "scenario N=" + std::to_string(n) + " r=" + text);
      for (int m = n; m <= n + 2; ++m) {
        const auto pop = population_distribution(MeetFormat::symmetric(m, n, false), r);
        const std::string what = "M=" + std::to_string(m) + " N=" + std::to_string(n) + " r=" + text;
        c.expect(pop.weights() == scenario.weights(), what + ": scenario equals population");
        check_identities(c, pop, what);
        check_identities(c, population_distribution(MeetFormat::symmetric(m, n, true), r), what + " displacement");
      }
    }
  }
  for (const auto& text : ratios) {
    const PopulationRatio r = PopulationRatio::parse(text);
    for (const MeetFormat& f : {MeetFormat::symmetric(6, 4, true), MeetFormat::symmetric(7, 5, false),
                                MeetFormat{6, 7, 5, true}}) {
      Rational sum = 0;
      for (const FinishOrder& order : enumerate_outcomes(f)) sum += truncated_bernoulli_weight(order, f, r);
      c.expect(sum == 1, describe(f) + " r=" + text + ": truncated weights sum to 1");
    }
  }
  for (const MeetFormat& f : {MeetFormat::symmetric(6, 4, false), MeetFormat::symmetric(6, 4, true),
                              MeetFormat::symmetric(7, 5, false), MeetFormat::symmetric(7, 5, true)}) {
    check_identities(c, iid_distribution(f), describe(f));
    check_identities(c, iid_distribution(f, Condition::fastest(Team::A)), describe(f) + " A fastest");
    c.expect(iid_distribution(f).mirrored() == iid_distribution(f), describe(f) + ": unconditional is symmetric");
  }
  return c.ok();
}

bool criterion_8(Check& c) {
  for (const auto& [m, n] : std::vector<std::pair<int, int>>{{6, 4}, {7, 5}}) {
    const MeetFormat disp = MeetFormat::symmetric(m, n, true);
    const MeetFormat nodisp = MeetFormat::symmetric(m, n, false);
    const std::string label = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
    int best = 1 << 20, worst = 0, biggest = 0;
    bool sum_ok = true, parity_ok = true, tie_seen = false, top3_ok = true, top2_ok = true;
    for (const FinishOrder& order : enumerate_outcomes(disp)) {
      const ScorePair sd = score(disp, order);
      const ScorePair sn = score(nodisp, order);
      best = std::min(best, sd.s_a);
      worst = std::max(worst, sd.s_a);
      biggest = std::max(biggest, margin(sd));
      sum_ok = sum_ok && sn.s_a + sn.s_b == n * (2 * n + 1);
      parity_ok = parity_ok && std::abs(margin(sn)) % 2 == n % 2;
      tie_seen = tie_seen || margin(sn) == 0;
      const bool a123 = order.at(1) == Team::A && order.at(2) == Team::A && order.at(3) == Team::A;
      if (n == 5 && a123) top3_ok = top3_ok && margin(sd) > 0 && margin(sn) > 0;
      if (m == 6 && order.at(1) == Team::A && order.at(2) == Team::A) top2_ok = top2_ok && margin(sn) >= 0;
    }
    c.expect(best == n * (n + 1) / 2, label + " result 1: best score");
    c.expect(worst == m * n + n * (n + 1) / 2, label + " result 1: worst score");
    c.expect(biggest == m * n, label + " result 2: biggest margin");
    c.expect(top3_ok, label + " result 3: top three places win");
    c.expect(sum_ok, label + " result A: score sum");
    c.expect(tie_seen == (n % 2 == 0), label + " result B: ties");
    c.expect(parity_ok, label + " result C: margin parity");
    c.expect(top2_ok, label + " result D: top two cannot lose");
  }
  // Results B and 3 for the other small formats.
  for (int n = 2; n <= 5; ++n) {
    for (int m = n; m <= 7; ++m) {
      const auto d = iid_distribution(MeetFormat::symmetric(m, n, false));
      c.expect((d.weight(0) > 0) == (n % 2 == 0), "result B (" + std::to_string(m) + "," + std::to_string(n) + ")");
      if (n == 5) {
        const auto top3 = iid_distribution(MeetFormat::symmetric(m, n, true), Condition::fastest(Team::A, 3));
        c.expect(top3.min_margin() > 0, "result 3 (" + std::to_string(m) + ",5)");
      }
    }
  }

  const MeetFormat f32 = MeetFormat::symmetric(3, 2, true);
  std::vector<ScorePair> pairs;
  for (const FinishOrder& order : enumerate_outcomes(f32)) pairs.push_back(score(f32, order));
  const std::vector<ScorePair> published{{3, 9}, {3, 8}, {3, 7}, {3, 7}, {4, 7}, {4, 6}, {4, 6}, {5, 5}, {5, 5}, {6, 5},
                                         {5, 6}, {5, 5}, {5, 5}, {6, 4}, {6, 4}, {7, 4}, {7, 3}, {7, 3}, {8, 3}, {9, 3}};
  c.expect(pairs == published, "(3,2) displacement score pairs");
  const auto abs32 = symmetrize(iid_distribution(f32), Symmetrization::Fold);
  c.expect(abs32.weights() == ScoreDistribution::MarginMap{{0, 4}, {1, 2}, {2, 4}, {3, 2}, {4, 4}, {5, 2}, {6, 2}},
           "(3,2) displacement |margin| counts");
  const auto nodisp32 = iid_distribution(MeetFormat::symmetric(3, 2, false)).normalized();
  c.expect(nodisp32.weight(0) == Rational(3, 10), "(3,2) tie probability 0.3");
  c.expect(iid_distribution(MeetFormat::symmetric(3, 2, false), Condition::fastest(Team::A)).normalized().probability(0) +
                   Rational(7, 10) ==
               1,
           "(3,2) fastest runner wins 70%");
  const auto two = iid_distribution(MeetFormat::symmetric(2, 2, true)).normalized();
  c.expect(two.weight(0) == Rational(1, 3), "(2,2) tie probability 1/3");
  return c.ok();
}

bool criterion_9(Check& c) {
  auto s_b_counts = [](const MeetFormat& f) {
    oracle::Counts out;
    const ScoreDistribution d = iid_distribution(f);
    for (const auto& [pair, w] : d.joint()) out[pair.s_b] += static_cast<std::int64_t>(numerator(w));
    return out;
  };
  for (int n = 2; n <= 5; ++n) {
    c.expect(s_b_counts(MeetFormat::symmetric(n, n, false)) == oracle::wilcoxon_rank_sum_counts(n, n),
             "M=N=" + std::to_string(n) + " rank-sum null");
  }
  // With non-scorers present the scorer interleavings are no longer uniform.
  const auto wide = s_b_counts(MeetFormat::symmetric(6, 4, false));
  const auto rank_sum = oracle::wilcoxon_rank_sum_counts(4, 4);
  const std::int64_t wide_total = 924, rank_total = 70;
  bool differ = false;
  for (const auto& [s, k] : rank_sum) {
    const auto it = wide.find(s);
    const std::int64_t w = it == wide.end() ? 0 : it->second;
    differ = differ || w * rank_total != k * wide_total;
  }
  c.expect(differ, "(6,4) differs from the rank-sum null");
  return c.ok();
}

bool criterion_10(Check& c) {
  const MeetFormat f = MeetFormat::symmetric(7, 5, true);
  std::vector<Runner> runners;
  const auto model = TimeModel::beta(1.5, 3.0, 960.0, 120.0);
  for (int k = 1; k <= 7; ++k) {
    runners.push_back({Team::A, "a" + std::to_string(k), model});
    runners.push_back({Team::B, "b" + std::to_string(k), model});
  }
  SimulationOptions options;
  options.samples = kSimulationSamples;
  options.seed = kSimulationSeed;
  options.threads = std::max(1u, std::thread::hardware_concurrency());
  const auto result = simulate_meet(f, Roster(runners), options);
  const double tv = to_double(total_variation(result.distribution, iid_distribution(f)));
  std::ostringstream what;
  what << "TV " << tv;
  c.expect(tv <= kSimulationTv, what.str());
  const double p = pairwise_win_probability(TimeModel::uniform(9, 11), TimeModel::uniform(10, 12));
  c.near(p, 7.0 / 8.0, kPairwiseTolerance, "P(U(9,11) < U(10,12))");
  return c.ok();
}

bool criterion_11(Check& c) {
  const auto d = population_distribution(MeetFormat::symmetric(30, 2, true), PopulationRatio::parse("0.5"),
                                         Condition::fastest(Team::A));
  c.near(stat(d, "mean_s_a"), 4.0, kMeanScoreATolerance, "mean s_A");
  c.near(stat(d, "mean_s_b"), 8.0, kMeanScoreBTolerance, "mean s_B");
  return c.ok();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool(Check&)>>> criteria{
      {"(6,4) no-displacement A-fastest table", criterion_1},
      {"(6,4) displacement A-fastest table and statistics", criterion_2},
      {"top-two and (7,5) tables and statistics", criterion_3},
      {"unconditional |margin| statistics", criterion_4},
      {"population summary tables", criterion_5},
      {"population probability tables", criterion_6},
      {"scenario/population equivalence and identities", criterion_7},
      {"structural facts and worked examples", criterion_8},
      {"rank-sum cross-check", criterion_9},
      {"Monte Carlo convergence and pairwise quadrature", criterion_10},
      {"N=2 large-M limit", criterion_11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    bool ok = false;
    try {
      ok = criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    ok = ok && c.ok();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  " << criteria[i].first << " ("
              << c.detail() << ")" << std::endl;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
