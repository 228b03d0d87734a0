#include "dualmeet/race_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace dualmeet {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

// Integral of a uniform CDF from -inf to t.
double uniform_cdf_integral(const UniformTime& u, double t) {
  if (t <= u.lower) return 0.0;
  const double width = u.upper - u.lower;
  if (t <= u.upper) return (t - u.lower) * (t - u.lower) / (2.0 * width);
  return width / 2.0 + (t - u.upper);
}

double integrate_segments(const std::function<double(double)>& f, std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  boost::math::quadrature::tanh_sinh<double> integrator;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] <= cuts[k]) continue;
    double error = 0.0;
    total += integrator.integrate(f, cuts[k], cuts[k + 1], 1e-13, &error);
    if (error > 1e-10) throw ConsistencyError("quadrature error estimate " + std::to_string(error) + " too large");
  }
  return total;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t runner, std::uint64_t batch) {
  return splitmix64(splitmix64(splitmix64(seed) ^ runner) ^ batch);
}

double canonical(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

class TimeSampler {
 public:
  explicit TimeSampler(const TimeModel& model) : model_(model.params()) {
    if (const auto* beta = std::get_if<BetaTime>(&model_)) {
      gamma_a_ = std::gamma_distribution<double>(beta->a, 1.0);
      gamma_b_ = std::gamma_distribution<double>(beta->b, 1.0);
    }
  }

  double operator()(std::mt19937_64& engine) {
    return std::visit(Overloaded{
                          [&](const UniformTime& u) { return u.lower + (u.upper - u.lower) * canonical(engine); },
                          [&](const BetaTime& b) {
                            const double x = gamma_a_(engine);
                            const double y = gamma_b_(engine);
                            return b.shift + b.scale * (x / (x + y));
                          },
                          [](const PointTime& p) { return p.t; },
                      },
                      model_);
  }

 private:
  TimeModel::Params model_;
  std::gamma_distribution<double> gamma_a_;
  std::gamma_distribution<double> gamma_b_;
};

}  // namespace

// ---------------------------------------------------------------- TimeModel

TimeModel TimeModel::uniform(double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || lower < 0.0 || !(lower < upper)) {
    throw InvalidInput("uniform time model needs 0 <= lower < upper");
  }
  return TimeModel(UniformTime{lower, upper});
}

TimeModel TimeModel::beta(double a, double b, double shift, double scale) {
  if (!finite_positive(a) || !finite_positive(b)) throw InvalidInput("beta shapes must be positive");
  if (!finite_positive(scale)) throw InvalidInput("beta scale must be positive");
  if (!std::isfinite(shift) || shift < 0.0) throw InvalidInput("beta shift must be a nonnegative time");
  return TimeModel(BetaTime{a, b, shift, scale});
}

TimeModel TimeModel::point(double t) {
  if (!finite_positive(t)) throw InvalidInput("point time must be positive");
  return TimeModel(PointTime{t});
}

std::string_view TimeModel::kind() const {
  return std::visit(Overloaded{
                        [](const UniformTime&) { return std::string_view("uniform"); },
                        [](const BetaTime&) { return std::string_view("beta"); },
                        [](const PointTime&) { return std::string_view("point"); },
                    },
                    params_);
}

double TimeModel::pdf(double t) const {
  return std::visit(Overloaded{
                        [t](const UniformTime& u) { return (t < u.lower || t > u.upper) ? 0.0 : 1.0 / (u.upper - u.lower); },
                        [t](const BetaTime& b) {
                          const double x = (t - b.shift) / b.scale;
                          if (x <= 0.0 || x >= 1.0) return 0.0;
                          return boost::math::pdf(boost::math::beta_distribution<double>(b.a, b.b), x) / b.scale;
                        },
                        [](const PointTime&) { return 0.0; },
                    },
                    params_);
}

double TimeModel::cdf(double t) const {
  return std::visit(Overloaded{
                        [t](const UniformTime& u) { return std::clamp((t - u.lower) / (u.upper - u.lower), 0.0, 1.0); },
                        [t](const BetaTime& b) {
                          const double x = (t - b.shift) / b.scale;
                          if (x <= 0.0) return 0.0;
                          if (x >= 1.0) return 1.0;
                          return boost::math::ibeta(b.a, b.b, x);
                        },
                        [t](const PointTime& p) { return t >= p.t ? 1.0 : 0.0; },
                    },
                    params_);
}

std::pair<double, double> TimeModel::support() const {
  return std::visit(Overloaded{
                        [](const UniformTime& u) { return std::pair{u.lower, u.upper}; },
                        [](const BetaTime& b) { return std::pair{b.shift, b.shift + b.scale}; },
                        [](const PointTime& p) { return std::pair{p.t, p.t}; },
                    },
                    params_);
}

double pairwise_win_probability(const TimeModel& i, const TimeModel& j) {
  const auto* pi = std::get_if<PointTime>(&i.params());
  const auto* pj = std::get_if<PointTime>(&j.params());
  if (pi && pj) return pi->t < pj->t ? 1.0 : (pi->t > pj->t ? 0.0 : 0.5);
  if (pi) return 1.0 - j.cdf(pi->t);
  if (pj) return i.cdf(pj->t);

  const auto* ui = std::get_if<UniformTime>(&i.params());
  const auto* uj = std::get_if<UniformTime>(&j.params());
  if (ui && uj) {
    return (uniform_cdf_integral(*ui, uj->upper) - uniform_cdf_integral(*ui, uj->lower)) / (uj->upper - uj->lower);
  }

  const auto [lo_i, hi_i] = i.support();
  const auto [lo_j, hi_j] = j.support();
  if (hi_i <= lo_j) return 1.0;
  if (hi_j <= lo_i) return 0.0;

  double result = 0.0;
  if (uj) {
    const double width = uj->upper - uj->lower;
    auto f = [&](double t) { return i.cdf(t) / width; };
    std::vector<double> cuts{lo_j, hi_j};
    for (double c : {lo_i, hi_i}) {
      if (c > lo_j && c < hi_j) cuts.push_back(c);
    }
    result = integrate_segments(f, cuts);
  } else {
    // Integrate over the unit interval of j's beta variable so the density's
    // endpoint behaviour sits at the ends of a segment.
    const auto& bj = std::get<BetaTime>(j.params());
    const boost::math::beta_distribution<double> dist(bj.a, bj.b);
    auto f = [&](double x) { return i.cdf(bj.shift + bj.scale * x) * boost::math::pdf(dist, x); };
    std::vector<double> cuts{0.0, 1.0};
    for (double c : {lo_i, hi_i}) {
      const double x = (c - bj.shift) / bj.scale;
      if (x > 0.0 && x < 1.0) cuts.push_back(x);
    }
    result = integrate_segments(f, cuts);
  }
  return std::clamp(result, 0.0, 1.0);
}

// ------------------------------------------------------------------- Roster

Roster::Roster(std::vector<Runner> runners) : runners_(std::move(runners)) {}

int Roster::count(Team team) const {
  return static_cast<int>(std::count_if(runners_.begin(), runners_.end(), [team](const Runner& r) { return r.team == team; }));
}

MeetFormat Roster::format(int n, bool displacement) const {
  MeetFormat f{count(Team::A), count(Team::B), n, displacement};
  f.validate();
  return f;
}

void Roster::validate(const MeetFormat& format) const {
  format.validate();
  if (count(Team::A) != format.m_a || count(Team::B) != format.m_b) {
    throw InvalidInput("roster has " + std::to_string(count(Team::A)) + " A and " + std::to_string(count(Team::B)) +
                       " B runners but the format is " + describe(format));
  }
  std::set<std::string> ids;
  for (const Runner& r : runners_) {
    if (!ids.insert(r.id).second) throw InvalidInput("duplicate runner id '" + r.id + "'");
  }
}

// --------------------------------------------------------------- simulation

SimulationResult simulate_meet(const MeetFormat& format, const Roster& roster, std::uint64_t samples,
                               std::uint64_t seed) {
  SimulationOptions options;
  options.samples = samples;
  options.seed = seed;
  return simulate_meet(format, roster, options);
}

SimulationResult simulate_meet(const MeetFormat& format, const Roster& roster, const SimulationOptions& options) {
  roster.validate(format);
  if (options.samples < 1) throw InvalidInput("need at least one sample");
  if (options.threads < 1) throw InvalidInput("need at least one thread");
  if (options.observer && options.threads != 1) throw InvalidInput("a per-sample observer needs threads == 1");

  const auto& runners = roster.runners();
  const std::size_t count = runners.size();
  // Tie-break rank: position of the runner's id in byte order.
  std::vector<std::size_t> by_id(count);
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(), [&](std::size_t x, std::size_t y) { return runners[x].id < runners[y].id; });
  std::vector<std::size_t> id_rank(count);
  for (std::size_t k = 0; k < count; ++k) id_rank[by_id[k]] = k;

  const int max_score = format.n * format.runners();
  const std::size_t stride = static_cast<std::size_t>(max_score + 1);
  const std::uint64_t batches = (options.samples + kSimulationBatchSize - 1) / kSimulationBatchSize;

  auto run_batch = [&](std::uint64_t batch, std::vector<std::uint64_t>& tally) {
    const std::uint64_t first = batch * kSimulationBatchSize;
    const std::uint64_t size = std::min(kSimulationBatchSize, options.samples - first);
    std::vector<std::mt19937_64> engines;
    std::vector<TimeSampler> samplers;
    engines.reserve(count);
    samplers.reserve(count);
    for (std::size_t r = 0; r < count; ++r) {
      engines.emplace_back(stream_seed(options.seed, r, batch));
      samplers.emplace_back(runners[r].model);
    }
    std::vector<double> times(count);
    std::vector<std::size_t> order(count);
    for (std::uint64_t s = 0; s < size; ++s) {
      for (std::size_t r = 0; r < count; ++r) times[r] = samplers[r](engines[r]);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return times[x] != times[y] ? times[x] < times[y] : id_rank[x] < id_rank[y];
      });
      if (options.observer) options.observer(order);

      ScorePair pair;
      int a = 0;
      int b = 0;
      for (std::size_t k = 0; k < count; ++k) {
        const int place = static_cast<int>(k) + 1;
        if (runners[order[k]].team == Team::A) {
          pair.s_a += finisher_points(format, place, a++, b);
        } else {
          pair.s_b += finisher_points(format, place, b++, a);
        }
      }
      ++tally[static_cast<std::size_t>(pair.s_a) * stride + static_cast<std::size_t>(pair.s_b)];
    }
  };

  std::vector<std::uint64_t> tally(stride * stride, 0);
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(options.threads, batches));
  if (threads <= 1) {
    for (std::uint64_t batch = 0; batch < batches; ++batch) run_batch(batch, tally);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::vector<std::uint64_t>> local(threads, std::vector<std::uint64_t>(tally.size(), 0));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t batch = next++; batch < batches; batch = next++) run_batch(batch, local[t]);
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : local) {
      for (std::size_t k = 0; k < tally.size(); ++k) tally[k] += part[k];
    }
  }

  SimulationResult result;
  result.generator = "mt19937_64, per-runner per-batch streams seeded by splitmix64";
  result.seed = options.seed;
  result.samples = options.samples;
  result.batch_size = kSimulationBatchSize;
  for (std::size_t k = 0; k < tally.size(); ++k) {
    if (tally[k] == 0) continue;
    const ScorePair pair{static_cast<int>(k / stride), static_cast<int>(k % stride)};
    result.distribution.add(pair, Rational(BigInt(tally[k])));
  }
  return result;
}

// -------------------------------------------------------------------- tiers

TierSpec TierSpec::parse(std::string_view text) {
  std::vector<Tier> tiers;
  std::string spec(text);
  std::size_t start = 0;
  while (start < spec.size()) {
    const std::size_t comma = std::min(spec.find(',', start), spec.size());
    const std::string item = spec.substr(start, comma - start);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw InvalidInput("tier '" + item + "' needs the form A:B");
    try {
      std::size_t used_a = 0;
      std::size_t used_b = 0;
      const std::string a_text = item.substr(0, colon);
      const std::string b_text = item.substr(colon + 1);
      const int a = std::stoi(a_text, &used_a);
      const int b = std::stoi(b_text, &used_b);
      if (used_a != a_text.size() || used_b != b_text.size()) throw std::invalid_argument(item);
      tiers.push_back({a, b});
    } catch (const std::logic_error&) {
      throw InvalidInput("tier '" + item + "' needs the form A:B");
    }
    start = comma + 1;
  }
  return TierSpec(std::move(tiers));
}

TierSpec TierSpec::pairs(int n) { return TierSpec(std::vector<Tier>(static_cast<std::size_t>(n), Tier{1, 1})); }

TierSpec TierSpec::with_remainder(const MeetFormat& format) const {
  int a = 0;
  int b = 0;
  for (const Tier& t : tiers_) {
    a += t.a;
    b += t.b;
  }
  std::vector<Tier> tiers = tiers_;
  if (a < format.m_a || b < format.m_b) tiers.push_back({format.m_a - a, format.m_b - b});
  return TierSpec(std::move(tiers));
}

void TierSpec::validate(const MeetFormat& format) const {
  format.validate();
  int a = 0;
  int b = 0;
  for (const Tier& t : tiers_) {
    if (t.a < 0 || t.b < 0 || t.a + t.b == 0) throw InvalidInput("every tier needs at least one runner");
    a += t.a;
    b += t.b;
  }
  if (a != format.m_a || b != format.m_b) {
    throw InvalidInput("tiers hold " + std::to_string(a) + " A and " + std::to_string(b) +
                       " B runners but the format is " + describe(format));
  }
}

ScoreDistribution tiered_distribution(const MeetFormat& format, const TierSpec& tiers) {
  tiers.validate(format);
  std::map<ScorePair, BigInt> total{{ScorePair{}, BigInt(1)}};
  int a0 = 0;
  int b0 = 0;
  for (const Tier& tier : tiers.tiers()) {
    // Contributions of this tier given a0 A and b0 B runners ahead of it.
    // A tier may hold runners of one team only, so interleavings are
    // enumerated directly rather than as a meet.
    std::vector<Team> labels(static_cast<std::size_t>(tier.a), Team::A);
    labels.insert(labels.end(), static_cast<std::size_t>(tier.b), Team::B);
    std::map<ScorePair, BigInt> contribution;
    do {
      ScorePair pair;
      int a = a0;
      int b = b0;
      int place = a0 + b0;
      for (Team t : labels) {
        ++place;
        if (t == Team::A) {
          pair.s_a += finisher_points(format, place, a++, b);
        } else {
          pair.s_b += finisher_points(format, place, b++, a);
        }
      }
      contribution[pair] += 1;
    } while (std::next_permutation(labels.begin(), labels.end()));
    std::map<ScorePair, BigInt> next;
    for (const auto& [left, lw] : total) {
      for (const auto& [right, rw] : contribution) {
        next[ScorePair{left.s_a + right.s_a, left.s_b + right.s_b}] += lw * rw;
      }
    }
    total = std::move(next);
    a0 += tier.a;
    b0 += tier.b;
  }
  ScoreDistribution dist(WeightKind::Count);
  for (const auto& [pair, w] : total) dist.add(pair, Rational(w));
  return dist;
}

ScoreDistribution injury_distribution(int m_full, int m_injured, int n, bool displacement, const Condition& condition) {
  if (m_injured < n) {
    throw InvalidInput("injured roster of " + std::to_string(m_injured) + " cannot field " + std::to_string(n) +
                       " scorers");
  }
  return iid_distribution(MeetFormat{m_injured, m_full, n, displacement}, condition);
}

}  // namespace dualmeet
