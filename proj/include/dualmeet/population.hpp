#pragma once

#include <string_view>

#include "dualmeet/distribution.hpp"
#include "dualmeet/exact_dist.hpp"
#include "dualmeet/meet.hpp"
#include "dualmeet/rational.hpp"

namespace dualmeet {

// Limiting share r = M_A / (M_A + M_B) of the combined talent pool belonging
// to Team A's school. Stored exactly.
class PopulationRatio {
 public:
  explicit PopulationRatio(Rational r);

  // "0.55", "2/3", "1".
  static PopulationRatio parse(std::string_view text);
  static PopulationRatio from_double(double r);

  [[nodiscard]] const Rational& value() const { return r_; }
  [[nodiscard]] Rational complement() const { return 1 - r_; }
  [[nodiscard]] double to_double() const;

  bool operator==(const PopulationRatio&) const = default;

 private:
  Rational r_;
};

// Probability of `order` in the large-population limit. Places are Bernoulli(r)
// draws until the first place t at which either roster is used up; the
// weight is r^a (1-r)^b over places 1..t and every later place is forced.
Rational truncated_bernoulli_weight(const FinishOrder& order, const MeetFormat& format, const PopulationRatio& ratio);

// Large-population limit distribution of the margin (and score pair). With a
// non-empty condition the result is conditional on it; a condition of zero
// probability throws InvalidInput.
ScoreDistribution population_distribution(const MeetFormat& format, const PopulationRatio& ratio,
                                          const Condition& condition = {});

// No-displacement limit via the 2^(2n-1) scorer scenarios: a sequence of
// 2n-1 places fixes which team reaches n scorers first, and the other team's
// remaining scorers take the last ranks. Independent of the roster size.
ScoreDistribution scenario_distribution_no_displacement(int n, const PopulationRatio& ratio);

// Finite-pool model: schools of pool_a and pool_b potential runners, a
// uniformly random ranking of the combined pool, and each team fielding its
// fastest m_a / m_b. Exact, by dynamic programming over prefix states.
ScoreDistribution finite_population_distribution(int pool_a, int pool_b, const MeetFormat& format,
                                                 const Condition& condition = {});

}  // namespace dualmeet
