#include "dualmeet/meet.hpp"

#include <algorithm>
#include <cctype>

#include "dualmeet/rational.hpp"

namespace dualmeet {

char to_char(Team t) { return t == Team::A ? 'A' : 'B'; }

Team team_from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'A': return Team::A;
    case 'B': return Team::B;
    default: throw InvalidInput(std::string("unknown team label '") + c + "'");
  }
}

MeetFormat MeetFormat::symmetric(int m, int n, bool displacement) {
  MeetFormat format{m, m, n, displacement};
  format.validate();
  return format;
}

void MeetFormat::validate() const {
  if (n < 1) throw InvalidInput("scorers per team must be at least 1");
  if (m_a < n || m_b < n) {
    throw InvalidInput("each roster must hold at least n=" + std::to_string(n) + " runners, got " +
                       std::to_string(m_a) + " and " + std::to_string(m_b));
  }
}

std::string describe(const MeetFormat& format) {
  std::string s = "(";
  if (format.is_symmetric()) {
    s += std::to_string(format.m_a);
  } else {
    s += std::to_string(format.m_a) + "," + std::to_string(format.m_b);
  }
  s += "," + std::to_string(format.n) + ") ";
  s += format.displacement ? "displacement" : "no displacement";
  return s;
}

FinishOrder::FinishOrder(std::vector<Team> labels) : labels_(std::move(labels)) {}

FinishOrder FinishOrder::parse(std::string_view text) {
  std::vector<Team> labels;
  labels.reserve(text.size());
  for (char c : text) labels.push_back(team_from_char(c));
  return FinishOrder(std::move(labels));
}

FinishOrder FinishOrder::from_positions(const MeetFormat& format, std::span<const int> a_places) {
  const int total = format.runners();
  if (static_cast<int>(a_places.size()) != format.m_a) {
    throw InvalidInput("expected " + std::to_string(format.m_a) + " Team A places, got " +
                       std::to_string(a_places.size()));
  }
  std::vector<Team> labels(static_cast<std::size_t>(total), Team::B);
  for (int place : a_places) {
    if (place < 1 || place > total) throw InvalidInput("place " + std::to_string(place) + " out of range");
    auto& slot = labels[static_cast<std::size_t>(place - 1)];
    if (slot == Team::A) throw InvalidInput("duplicate place " + std::to_string(place));
    slot = Team::A;
  }
  return FinishOrder(std::move(labels));
}

Team FinishOrder::at(int place) const {
  if (place < 1 || place > size()) throw InvalidInput("place " + std::to_string(place) + " out of range");
  return labels_[static_cast<std::size_t>(place - 1)];
}

int FinishOrder::count(Team t) const {
  return static_cast<int>(std::count(labels_.begin(), labels_.end(), t));
}

std::vector<int> FinishOrder::places(Team t) const {
  std::vector<int> result;
  for (int i = 0; i < size(); ++i) {
    if (labels_[static_cast<std::size_t>(i)] == t) result.push_back(i + 1);
  }
  return result;
}

FinishOrder FinishOrder::swapped() const {
  std::vector<Team> labels(labels_.size());
  std::transform(labels_.begin(), labels_.end(), labels.begin(), opponent);
  return FinishOrder(std::move(labels));
}

std::string FinishOrder::to_string() const {
  std::string s;
  s.reserve(labels_.size());
  for (Team t : labels_) s.push_back(to_char(t));
  return s;
}

int finisher_points(const MeetFormat& format, int place, int own_before, int other_before) {
  if (own_before >= format.n) return 0;
  if (format.displacement) return place;
  return own_before + std::min(other_before, format.n) + 1;
}

ScorePair score(const MeetFormat& format, const FinishOrder& order) {
  format.validate();
  if (order.count(Team::A) != format.m_a || order.count(Team::B) != format.m_b) {
    throw InvalidInput("finish order " + order.to_string() + " does not match " + describe(format));
  }
  ScorePair pair;
  int a = 0;
  int b = 0;
  int place = 1;
  for (Team t : order.labels()) {
    if (t == Team::A) {
      pair.s_a += finisher_points(format, place, a, b);
      ++a;
    } else {
      pair.s_b += finisher_points(format, place, b, a);
      ++b;
    }
    ++place;
  }
  return pair;
}

ScoreBounds score_bounds(const MeetFormat& format) {
  format.validate();
  if (!format.is_symmetric()) {
    throw InvalidInput("closed-form bounds need equal rosters; enumerate " + describe(format) + " instead");
  }
  // Without displacement only the 2n scorers are ranked, so the bounds are
  // those of the (n,n) meet.
  const int m = format.displacement ? format.m_a : format.n;
  const int n = format.n;
  const int best = n * (n + 1) / 2;
  return {best, m * n + best, m * n};
}

}  // namespace dualmeet
