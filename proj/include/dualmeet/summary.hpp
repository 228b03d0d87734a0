#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualmeet/distribution.hpp"
#include "dualmeet/rational.hpp"

namespace dualmeet {

// Summary of a margin distribution (margin = s_b - s_a, so positive means
// Team A won). Everything but the standard deviation is exact.
struct MeetSummary {
  Rational p_win;
  Rational p_tie;
  Rational p_loss;
  Rational mean_margin;
  Rational variance;  // population variance
  double std_margin = 0.0;
  // Conditional means; absent when the conditioning event has probability 0.
  // mean_loss_margin is signed (negative).
  std::optional<Rational> mean_win_margin;
  std::optional<Rational> mean_loss_margin;
  Rational median;
  std::map<Rational, Rational> quantiles;      // signed margin
  std::map<Rational, Rational> abs_quantiles;  // |margin|
};

// Default quantile levels: 1/2, 3/4, 9/10.
std::vector<Rational> default_quantile_levels();

MeetSummary summarize(const ScoreDistribution& dist, std::span<const Rational> levels);
MeetSummary summarize(const ScoreDistribution& dist);

// Smallest support value v with P(X <= v) >= q. When P(X <= v) == q exactly,
// the midpoint of v and the next support value is returned; this is what makes
// the median of the (6,4) displacement |margin| distribution 6.5.
// q must lie strictly inside (0, 1).
Rational quantile(const ScoreDistribution& dist, const Rational& q);

// quantile of the folded |margin| distribution.
Rational abs_quantile(const ScoreDistribution& dist, const Rational& q);

// The 0.9 quantile of |margin|: the smallest "big victory".
Rational big_victory(const ScoreDistribution& dist);

struct FieldDiff {
  std::string field;
  double expected = 0.0;
  double actual = 0.0;
  double difference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SummaryComparison {
  std::vector<FieldDiff> fields;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] std::vector<std::string> failed_fields() const;
};

struct SummaryTolerances {
  double probability = 0.005;
  double moment = 0.005;
  double quantile = 0.0;
};

// Field-by-field |expected - actual|. Quantiles are compared at the levels
// both summaries carry. A conditional mean present on one side only fails.
SummaryComparison compare_summaries(const MeetSummary& expected, const MeetSummary& actual,
                                    const SummaryTolerances& tolerances = {});

}  // namespace dualmeet
