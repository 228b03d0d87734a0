#pragma once

#include <cstdint>
#include <map>

#include "dualmeet/distribution.hpp"
#include "oracles.hpp"

inline oracle::Counts as_counts(const dualmeet::ScoreDistribution& dist) {
  oracle::Counts out;
  for (const auto& [m, w] : dist.weights()) out[m] = static_cast<std::int64_t>(numerator(w));
  return out;
}

inline std::map<int, dualmeet::Rational> as_probabilities(const dualmeet::ScoreDistribution& dist) {
  const auto p = dist.normalized();
  return {p.weights().begin(), p.weights().end()};
}

inline dualmeet::Rational q(long long num, long long den = 1) { return dualmeet::Rational(num, den); }
