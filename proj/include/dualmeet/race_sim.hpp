#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dualmeet/distribution.hpp"
#include "dualmeet/exact_dist.hpp"
#include "dualmeet/meet.hpp"

namespace dualmeet {

struct UniformTime {
  double lower = 0.0;
  double upper = 0.0;
};

// shift + scale * X with X ~ Beta(a, b).
struct BetaTime {
  double a = 1.5;
  double b = 3.0;
  double shift = 0.0;
  double scale = 1.0;
};

struct PointTime {
  double t = 0.0;
};

// Finishing-time distribution of one runner, in seconds.
class TimeModel {
 public:
  using Params = std::variant<UniformTime, BetaTime, PointTime>;

  static TimeModel uniform(double lower, double upper);
  static TimeModel beta(double a, double b, double shift, double scale);
  static TimeModel point(double t);

  [[nodiscard]] const Params& params() const { return params_; }
  [[nodiscard]] std::string_view kind() const;  // "uniform", "beta", "point"
  [[nodiscard]] bool is_point() const { return std::holds_alternative<PointTime>(params_); }

  // Density; 0 everywhere for a point mass.
  [[nodiscard]] double pdf(double t) const;
  [[nodiscard]] double cdf(double t) const;
  // [lowest, highest] attainable time.
  [[nodiscard]] std::pair<double, double> support() const;

 private:
  explicit TimeModel(Params params) : params_(params) {}
  Params params_;
};

// P(T_i < T_j) for independent times: the integral of F_i(t) p_j(t) dt.
// Closed form when both are uniform or either is a point mass (two equal point
// masses give 1/2); adaptive tanh-sinh quadrature otherwise, accurate to 1e-9.
double pairwise_win_probability(const TimeModel& i, const TimeModel& j);

struct Runner {
  Team team = Team::A;
  std::string id;
  TimeModel model = TimeModel::point(1.0);
};

class Roster {
 public:
  Roster() = default;
  explicit Roster(std::vector<Runner> runners);

  [[nodiscard]] const std::vector<Runner>& runners() const { return runners_; }
  [[nodiscard]] std::size_t size() const { return runners_.size(); }
  [[nodiscard]] int count(Team team) const;
  // The format implied by the roster's team sizes.
  [[nodiscard]] MeetFormat format(int n, bool displacement) const;
  // Throws InvalidInput unless team sizes equal the format's rosters and ids are unique.
  void validate(const MeetFormat& format) const;

 private:
  std::vector<Runner> runners_;
};

struct SimulationOptions {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  // Batches run on this many threads. The result does not depend on it.
  unsigned threads = 1;
  // Called once per sample, in sample order, with runner indices in finish
  // order. Requires threads == 1.
  std::function<void(std::span<const std::size_t>)> observer;
};

struct SimulationResult {
  ScoreDistribution distribution{WeightKind::Count};
  std::string generator;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t batch_size = 0;
};

// Samples are grouped into fixed-size batches; runner r in batch k draws
// from its own mt19937_64 stream seeded by splitmix64 from (seed, r, k).
// Runs are therefore reproducible for a given (seed, samples, roster order)
// and adding samples only appends draws. Equal times go to the lower runner
// id (byte-wise comparison).
SimulationResult simulate_meet(const MeetFormat& format, const Roster& roster, const SimulationOptions& options);
SimulationResult simulate_meet(const MeetFormat& format, const Roster& roster, std::uint64_t samples,
                               std::uint64_t seed);

inline constexpr std::uint64_t kSimulationBatchSize = 1u << 16;

// A block of runners that all finish ahead of every later block. Inside a
// tier every interleaving is equally likely.
struct Tier {
  int a = 0;
  int b = 0;

  bool operator==(const Tier&) const = default;
};

class TierSpec {
 public:
  TierSpec() = default;
  explicit TierSpec(std::vector<Tier> tiers) : tiers_(std::move(tiers)) {}

  // "2:2,2:2" lists (A count):(B count) per tier, fastest first.
  static TierSpec parse(std::string_view text);
  // n tiers of one A and one B runner each.
  static TierSpec pairs(int n);

  [[nodiscard]] const std::vector<Tier>& tiers() const { return tiers_; }
  // Appends one tier holding every runner not yet assigned.
  [[nodiscard]] TierSpec with_remainder(const MeetFormat& format) const;
  // Tiers must be non-empty and partition both rosters exactly.
  void validate(const MeetFormat& format) const;

 private:
  std::vector<Tier> tiers_;
};

// Exact count distribution; tiers are independent sub-races whose places
// are offset by the runners in faster tiers.
ScoreDistribution tiered_distribution(const MeetFormat& format, const TierSpec& tiers);

// The short-handed (m_injured) team is Team A, so margins are from its side.
ScoreDistribution injury_distribution(int m_full, int m_injured, int n, bool displacement,
                                      const Condition& condition = {});

}  // namespace dualmeet
