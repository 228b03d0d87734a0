#include "dualmeet/population.hpp"

#include <cstdint>
#include <string>

#include "lattice_walk.hpp"

namespace dualmeet {

PopulationRatio::PopulationRatio(Rational r) : r_(std::move(r)) {
  if (r_ < 0 || r_ > 1) throw InvalidInput("population ratio " + dualmeet::to_string(r_) + " outside [0,1]");
}

PopulationRatio PopulationRatio::parse(std::string_view text) { return PopulationRatio(parse_rational(text)); }

PopulationRatio PopulationRatio::from_double(double r) { return PopulationRatio(dualmeet::from_double(r)); }

double PopulationRatio::to_double() const { return dualmeet::to_double(r_); }

Rational truncated_bernoulli_weight(const FinishOrder& order, const MeetFormat& format, const PopulationRatio& ratio) {
  format.validate();
  if (order.count(Team::A) != format.m_a || order.count(Team::B) != format.m_b) {
    throw InvalidInput("finish order " + order.to_string() + " does not match " + describe(format));
  }
  int a = 0;
  int b = 0;
  for (Team t : order.labels()) {
    if (a == format.m_a || b == format.m_b) break;
    (t == Team::A ? a : b) += 1;
  }
  return power(ratio.value(), a) * power(ratio.complement(), b);
}

ScoreDistribution population_distribution(const MeetFormat& format, const PopulationRatio& ratio,
                                          const Condition& condition) {
  const Rational r = ratio.value();
  const Rational s = ratio.complement();
  ScoreDistribution dist = detail::walk_distribution(
      format, condition, [&](int, int) { return detail::StepWeights{r, s}; }, WeightKind::Probability);
  if (dist.empty()) {
    throw InvalidInput("condition " + condition.to_string() + " has zero probability at r=" + to_string(r));
  }
  return condition.empty() ? dist : dist.normalized();
}

ScoreDistribution scenario_distribution_no_displacement(int n, const PopulationRatio& ratio) {
  if (n < 1) throw InvalidInput("scorers per team must be at least 1");
  if (n > 15) throw InvalidInput("scenario enumeration supports n <= 15");
  const int length = 2 * n - 1;
  const Rational r = ratio.value();
  const Rational s = ratio.complement();

  ScoreDistribution dist(WeightKind::Probability);
  for (std::uint32_t mask = 0; mask < (1u << length); ++mask) {
    // Bit i set: Team A takes place i+1.
    int k = 0;
    int a = 0;
    int b = 0;
    int rank = 0;
    ScorePair pair;
    for (int i = 0; i < length; ++i) {
      const bool is_a = (mask >> i) & 1u;
      k += is_a ? 1 : 0;
      if (a == n || b == n) continue;  // later places only carry probability mass
      ++rank;
      if (is_a) {
        pair.s_a += rank;
        ++a;
      } else {
        pair.s_b += rank;
        ++b;
      }
    }
    // The team still short of n scorers fills the remaining ranks.
    for (; a < n; ++a) pair.s_a += ++rank;
    for (; b < n; ++b) pair.s_b += ++rank;
    dist.add(pair, power(r, k) * power(s, length - k));
  }
  return dist;
}

ScoreDistribution finite_population_distribution(int pool_a, int pool_b, const MeetFormat& format,
                                                 const Condition& condition) {
  format.validate();
  if (pool_a < format.m_a || pool_b < format.m_b) {
    throw InvalidInput("pools (" + std::to_string(pool_a) + "," + std::to_string(pool_b) +
                       ") smaller than rosters of " + describe(format));
  }
  const Rational total = pool_a + pool_b;
  ScoreDistribution dist = detail::walk_distribution(
      format, condition,
      [&](int a, int b) {
        const Rational remaining = total - a - b;
        return detail::StepWeights{Rational(pool_a - a) / remaining, Rational(pool_b - b) / remaining};
      },
      WeightKind::Probability);
  if (dist.empty()) throw InvalidInput("condition " + condition.to_string() + " has zero probability");
  return condition.empty() ? dist : dist.normalized();
}

}  // namespace dualmeet
