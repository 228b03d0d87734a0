#include "dualmeet/distribution.hpp"

#include <string>

namespace dualmeet {

std::string_view to_string(WeightKind kind) {
  return kind == WeightKind::Count ? "count" : "probability";
}

WeightKind weight_kind_from_string(std::string_view text) {
  if (text == "count") return WeightKind::Count;
  if (text == "probability") return WeightKind::Probability;
  throw InvalidInput("unknown weight kind '" + std::string(text) + "'");
}

void ScoreDistribution::add(int margin_value, const Rational& weight) {
  if (weight < 0) throw InvalidInput("negative weight");
  if (weight == 0) return;
  weights_[margin_value] += weight;
  joint_valid_ = false;
  joint_.clear();
}

void ScoreDistribution::add(ScorePair pair, const Rational& weight) {
  if (weight < 0) throw InvalidInput("negative weight");
  if (weight == 0) return;
  weights_[margin(pair)] += weight;
  if (joint_valid_) joint_[pair] += weight;
}

void ScoreDistribution::merge(const ScoreDistribution& other) {
  for (const auto& [m, w] : other.weights_) weights_[m] += w;
  joint_valid_ = joint_valid_ && other.joint_valid_;
  if (joint_valid_) {
    for (const auto& [pair, w] : other.joint_) joint_[pair] += w;
  } else {
    joint_.clear();
  }
}

int ScoreDistribution::min_margin() const {
  if (empty()) throw InvalidInput("empty distribution has no support");
  return weights_.begin()->first;
}

int ScoreDistribution::max_margin() const {
  if (empty()) throw InvalidInput("empty distribution has no support");
  return weights_.rbegin()->first;
}

Rational ScoreDistribution::total() const {
  Rational sum = 0;
  for (const auto& [m, w] : weights_) sum += w;
  return sum;
}

Rational ScoreDistribution::weight(int margin_value) const {
  auto it = weights_.find(margin_value);
  return it == weights_.end() ? Rational(0) : it->second;
}

Rational ScoreDistribution::probability(int margin_value) const {
  const Rational t = total();
  if (t == 0) throw InvalidInput("empty distribution has no probabilities");
  return weight(margin_value) / t;
}

ScoreDistribution ScoreDistribution::normalized() const {
  const Rational t = total();
  if (t == 0) throw InvalidInput("cannot normalize an empty distribution");
  ScoreDistribution out(WeightKind::Probability);
  for (const auto& [m, w] : weights_) out.weights_[m] = w / t;
  for (const auto& [pair, w] : joint_) out.joint_[pair] = w / t;
  out.joint_valid_ = joint_valid_;
  return out;
}

ScoreDistribution ScoreDistribution::mirrored() const {
  ScoreDistribution out(kind_);
  for (const auto& [m, w] : weights_) out.weights_[-m] = w;
  for (const auto& [pair, w] : joint_) out.joint_[ScorePair{pair.s_b, pair.s_a}] = w;
  out.joint_valid_ = joint_valid_;
  return out;
}

ScoreDistribution ScoreDistribution::shifted(int delta) const {
  ScoreDistribution out(kind_);
  for (const auto& [m, w] : weights_) out.add(m + delta, w);
  return out;
}

bool ScoreDistribution::operator==(const ScoreDistribution& other) const {
  return kind_ == other.kind_ && weights_ == other.weights_ && has_joint() == other.has_joint() &&
         joint_ == other.joint_;
}

Rational total_variation(const ScoreDistribution& p, const ScoreDistribution& q) {
  const ScoreDistribution pn = p.normalized();
  const ScoreDistribution qn = q.normalized();
  Rational sum = 0;
  auto accumulate = [&sum](const Rational& a, const Rational& b) { sum += a > b ? a - b : b - a; };
  for (const auto& [m, w] : pn.weights()) accumulate(w, qn.weight(m));
  for (const auto& [m, w] : qn.weights()) {
    if (pn.weights().count(m) == 0) accumulate(0, w);
  }
  return sum / 2;
}

}  // namespace dualmeet
