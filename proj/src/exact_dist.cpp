#include "dualmeet/exact_dist.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace dualmeet {
namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

int parse_place(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw InvalidInput("bad place '" + text + "' in condition");
  }
  return std::stoi(text);
}

Team parse_team(const std::string& text) {
  if (text.size() != 1) throw InvalidInput("bad team '" + text + "' in condition");
  return team_from_char(text[0]);
}

}  // namespace

// ---------------------------------------------------------------- Condition

Condition Condition::fastest(Team team, int places) {
  Condition c;
  for (int p = 1; p <= places; ++p) c.fix(p, team);
  return c;
}

Condition Condition::parse(std::string_view text) {
  const std::string spec = trim(text);
  Condition c;
  if (spec.empty() || spec == "none") return c;

  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', start), spec.size());
    const std::string item = trim(std::string_view(spec).substr(start, comma - start));
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw InvalidInput("condition item '" + item + "' needs the form place:TEAM");
    const std::string key = trim(std::string_view(item).substr(0, colon));
    const Team team = parse_team(trim(std::string_view(item).substr(colon + 1)));

    if (key == "fastest") {
      c.fix(1, team);
    } else if (key.rfind("top", 0) == 0) {
      const int places = parse_place(key.substr(3));
      for (int p = 1; p <= places; ++p) c.fix(p, team);
    } else {
      c.fix(parse_place(key), team);
    }
    start = comma + 1;
  }
  return c;
}

Condition& Condition::fix(int place, Team team) {
  if (place < 1) throw InvalidInput("condition place must be >= 1, got " + std::to_string(place));
  auto [it, inserted] = fixed_.emplace(place, team);
  if (!inserted && it->second != team) {
    throw InvalidInput("place " + std::to_string(place) + " fixed to both teams");
  }
  return *this;
}

int Condition::count(Team team) const {
  return static_cast<int>(std::count_if(fixed_.begin(), fixed_.end(), [team](const auto& kv) { return kv.second == team; }));
}

bool Condition::admits(const FinishOrder& order) const {
  for (const auto& [place, team] : fixed_) {
    if (place > order.size() || order.at(place) != team) return false;
  }
  return true;
}

bool Condition::satisfiable(const MeetFormat& format) const {
  return count(Team::A) <= format.m_a && count(Team::B) <= format.m_b;
}

void Condition::validate(const MeetFormat& format) const {
  if (!fixed_.empty() && fixed_.rbegin()->first > format.runners()) {
    throw InvalidInput("condition fixes place " + std::to_string(fixed_.rbegin()->first) + " but " +
                       describe(format) + " has only " + std::to_string(format.runners()) + " finishers");
  }
}

Condition Condition::swapped() const {
  Condition c;
  for (const auto& [place, team] : fixed_) c.fixed_.emplace(place, opponent(team));
  return c;
}

std::string Condition::to_string() const {
  if (fixed_.empty()) return "none";
  std::string s;
  for (const auto& [place, team] : fixed_) {
    if (!s.empty()) s += ",";
    s += std::to_string(place) + ":" + to_char(team);
  }
  return s;
}

// ------------------------------------------------------------- OutcomeRange

OutcomeRange::OutcomeRange(const MeetFormat& format, const Condition& condition)
    : format_(format), condition_(condition) {
  format_.validate();
  condition_.validate(format_);
  satisfiable_ = condition_.satisfiable(format_);
  free_a_ = format_.m_a - condition_.count(Team::A);
  for (int place = 1; place <= format_.runners(); ++place) {
    if (condition_.fixed().count(place) == 0) free_places_.push_back(place);
  }
}

OutcomeRange::iterator::iterator(const OutcomeRange* range, bool done) : range_(range), done_(done) {
  if (done_) return;
  choice_.resize(static_cast<std::size_t>(range_->free_a_));
  for (std::size_t i = 0; i < choice_.size(); ++i) choice_[i] = static_cast<int>(i);
  rebuild();
}

OutcomeRange::iterator& OutcomeRange::iterator::operator++() {
  const int k = static_cast<int>(choice_.size());
  const int n = static_cast<int>(range_->free_places_.size());
  int i = k - 1;
  while (i >= 0 && choice_[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) {
    done_ = true;
    choice_.clear();
    return *this;
  }
  ++choice_[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) {
    choice_[static_cast<std::size_t>(j)] = choice_[static_cast<std::size_t>(j - 1)] + 1;
  }
  rebuild();
  return *this;
}

bool OutcomeRange::iterator::operator==(const iterator& other) const {
  if (done_ || other.done_) return done_ == other.done_;
  return range_ == other.range_ && choice_ == other.choice_;
}

void OutcomeRange::iterator::rebuild() {
  std::vector<Team> labels(static_cast<std::size_t>(range_->format_.runners()), Team::B);
  for (const auto& [place, team] : range_->condition_.fixed()) labels[static_cast<std::size_t>(place - 1)] = team;
  for (int idx : choice_) {
    labels[static_cast<std::size_t>(range_->free_places_[static_cast<std::size_t>(idx)] - 1)] = Team::A;
  }
  order_ = FinishOrder(std::move(labels));
}

OutcomeRange enumerate_outcomes(const MeetFormat& format, const Condition& condition) {
  return OutcomeRange(format, condition);
}

BigInt count_outcomes(const MeetFormat& format, const Condition& condition) {
  format.validate();
  condition.validate(format);
  if (!condition.satisfiable(format)) return 0;
  const int fixed = static_cast<int>(condition.fixed().size());
  return binomial(format.runners() - fixed, format.m_a - condition.count(Team::A));
}

// ------------------------------------------------------------ distributions

ScoreDistribution iid_distribution(const MeetFormat& format, const Condition& condition) {
  ScoreDistribution dist(WeightKind::Count);
  for (const FinishOrder& order : enumerate_outcomes(format, condition)) {
    dist.add(score(format, order), Rational(1));
  }
  return dist;
}

ScoreDistribution symmetrize(const ScoreDistribution& dist, Symmetrization mode) {
  const Rational factor = mode == Symmetrization::MirrorHalfSpace ? 2 : 1;
  ScoreDistribution out(dist.kind());
  for (const auto& [m, w] : dist.weights()) out.add(m < 0 ? -m : m, w * factor);
  if (dist.kind() == WeightKind::Probability) return out.normalized();
  return out;
}

ScoreDistribution unconditional_from_fastest(const ScoreDistribution& conditional) {
  ScoreDistribution out = conditional;
  out.merge(conditional.mirrored());
  if (conditional.kind() == WeightKind::Probability) return out.normalized();
  return out;
}

int top_three_shift(const std::set<int>& a_places) {
  if (a_places == std::set<int>{1, 3}) return 1;
  if (a_places == std::set<int>{2, 3}) return -1;
  throw InvalidInput("the shift rule covers Team A holding places {1,3} or {2,3} only");
}

ScoreDistribution shifted_condition_distribution(const MeetFormat& format, const std::set<int>& a_places) {
  const int shift = top_three_shift(a_places);
  format.validate();
  if (!format.is_symmetric()) throw InvalidInput("the shift rule needs equal rosters");
  if (format.n < 2) throw InvalidInput("the shift rule needs at least two scorers");

  const MeetFormat reduced{format.m_a - 1, format.m_b - 1, format.n - 1, format.displacement};
  const ScoreDistribution base = iid_distribution(reduced, Condition::fastest(Team::A));
  ScoreDistribution shifted = base.shifted(shift);

  Condition top_three;
  for (int place = 1; place <= 3; ++place) top_three.fix(place, a_places.count(place) ? Team::A : Team::B);
  ScoreDistribution direct(WeightKind::Count);
  const ScoreDistribution enumerated = iid_distribution(format, top_three);
  for (const auto& [m, w] : enumerated.weights()) direct.add(m, w);

  if (!(direct == shifted)) {
    throw ConsistencyError("shift rule disagrees with direct enumeration for " + describe(format) +
                           " with Team A at " + top_three.to_string());
  }
  return shifted;
}

}  // namespace dualmeet
