#pragma once

#include <cstddef>
#include <map>
#include <string_view>

#include "dualmeet/meet.hpp"
#include "dualmeet/rational.hpp"

namespace dualmeet {

enum class WeightKind { Count, Probability };

std::string_view to_string(WeightKind kind);
WeightKind weight_kind_from_string(std::string_view text);

// Exact distribution of the margin s_b - s_a, optionally with the joint
// (s_a, s_b) distribution. Count weights are integers; probability weights
// sum to one. Only strictly positive weights are stored.
class ScoreDistribution {
 public:
  using MarginMap = std::map<int, Rational>;
  using JointMap = std::map<ScorePair, Rational>;

  explicit ScoreDistribution(WeightKind kind = WeightKind::Count) : kind_(kind) {}

  [[nodiscard]] WeightKind kind() const { return kind_; }

  void add(int margin_value, const Rational& weight);
  // Records the pair in the joint map and its margin.
  void add(ScorePair pair, const Rational& weight);
  // Weight-wise sum. Associative and commutative; the joint map survives
  // only if both sides carry one.
  void merge(const ScoreDistribution& other);

  [[nodiscard]] const MarginMap& weights() const { return weights_; }
  [[nodiscard]] const JointMap& joint() const { return joint_; }
  [[nodiscard]] bool has_joint() const { return joint_valid_ && !joint_.empty(); }

  [[nodiscard]] bool empty() const { return weights_.empty(); }
  [[nodiscard]] std::size_t support_size() const { return weights_.size(); }
  [[nodiscard]] int min_margin() const;
  [[nodiscard]] int max_margin() const;
  [[nodiscard]] Rational total() const;
  [[nodiscard]] Rational weight(int margin_value) const;
  [[nodiscard]] Rational probability(int margin_value) const;

  // Probability-kind copy with total 1.
  [[nodiscard]] ScoreDistribution normalized() const;
  // Margin negated, joint pairs swapped: the same meet seen from Team B.
  [[nodiscard]] ScoreDistribution mirrored() const;
  // Every margin moved by delta. The joint map is dropped.
  [[nodiscard]] ScoreDistribution shifted(int delta) const;

  bool operator==(const ScoreDistribution& other) const;

 private:
  WeightKind kind_;
  MarginMap weights_;
  JointMap joint_;
  // False once any weight arrived without its score pair.
  bool joint_valid_ = true;
};

// Total-variation distance between the normalized margin distributions.
Rational total_variation(const ScoreDistribution& p, const ScoreDistribution& q);

}  // namespace dualmeet
