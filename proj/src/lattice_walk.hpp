#pragma once

#include <functional>

#include "dualmeet/distribution.hpp"
#include "dualmeet/exact_dist.hpp"
#include "dualmeet/meet.hpp"
#include "dualmeet/rational.hpp"

namespace dualmeet::detail {

struct StepWeights {
  Rational a;  // weight of Team A taking the next place
  Rational b;
};

// Per-step weights given how many A and B runners have already finished.
// Only consulted while neither roster is exhausted.
using StepModel = std::function<StepWeights(int a_done, int b_done)>;

// Sums, over every finish order admitted by `condition`, the product of the
// per-step weights up to the first roster exhaustion (later places are forced
// and contribute a factor of 1). Orders sharing a prefix state (a_done,
// b_done) and partial scores are merged, so the cost is polynomial in the
// roster sizes rather than C(m_a + m_b, m_a).
ScoreDistribution walk_distribution(const MeetFormat& format, const Condition& condition,
                                    const StepModel& model, WeightKind kind);

}  // namespace dualmeet::detail
