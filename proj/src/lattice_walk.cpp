#include "lattice_walk.hpp"

#include <map>
#include <utility>
#include <vector>

namespace dualmeet::detail {

ScoreDistribution walk_distribution(const MeetFormat& format, const Condition& condition,
                                    const StepModel& model, WeightKind kind) {
  format.validate();
  condition.validate(format);
  ScoreDistribution result(kind);
  if (!condition.satisfiable(format)) return result;

  using Partial = std::map<ScorePair, Rational>;
  // layer[a] holds partial scores for states with a A-finishers after `placed` places.
  std::vector<Partial> layer(static_cast<std::size_t>(format.m_a + 1));
  layer[0][ScorePair{}] = 1;

  for (int placed = 0; placed < format.runners(); ++placed) {
    const int place = placed + 1;
    const auto fixed = condition.fixed().find(place);
    std::vector<Partial> next(layer.size());

    for (int a = 0; a <= format.m_a; ++a) {
      Partial& scores = layer[static_cast<std::size_t>(a)];
      if (scores.empty()) continue;
      const int b = placed - a;
      if (b < 0 || b > format.m_b) continue;

      const bool exhausted = a == format.m_a || b == format.m_b;
      StepWeights w{1, 1};
      if (!exhausted) w = model(a, b);

      auto step = [&](Team team, const Rational& weight) {
        if (weight == 0) return;
        if (fixed != condition.fixed().end() && fixed->second != team) return;
        const bool is_a = team == Team::A;
        if (is_a ? a == format.m_a : b == format.m_b) return;
        const int points = is_a ? finisher_points(format, place, a, b) : finisher_points(format, place, b, a);
        Partial& target = next[static_cast<std::size_t>(is_a ? a + 1 : a)];
        for (const auto& [pair, value] : scores) {
          ScorePair moved = pair;
          (is_a ? moved.s_a : moved.s_b) += points;
          target[moved] += value * weight;
        }
      };
      step(Team::A, w.a);
      step(Team::B, w.b);
    }
    layer = std::move(next);
  }

  for (const auto& [pair, value] : layer[static_cast<std::size_t>(format.m_a)]) result.add(pair, value);
  return result;
}

}  // namespace dualmeet::detail
