#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dualmeet {

enum class Team : std::uint8_t { A, B };

constexpr Team opponent(Team t) { return t == Team::A ? Team::B : Team::A; }
char to_char(Team t);
Team team_from_char(char c);

// Dual meet format: each team fields a roster (m_a, m_b) and the fastest n of
// each team score. With displacement every finisher occupies a place; without
// it only the 2n scorers are ranked.
struct MeetFormat {
  int m_a = 0;
  int m_b = 0;
  int n = 0;
  bool displacement = true;

  static MeetFormat symmetric(int m, int n, bool displacement);

  [[nodiscard]] bool is_symmetric() const { return m_a == m_b; }
  [[nodiscard]] int runners() const { return m_a + m_b; }
  [[nodiscard]] int roster(Team t) const { return t == Team::A ? m_a : m_b; }

  // Throws InvalidInput unless n >= 1 and both rosters hold at least n runners.
  void validate() const;

  bool operator==(const MeetFormat&) const = default;
};

// "(6,4) displacement", "(7,6,5) no displacement"
std::string describe(const MeetFormat& format);

// A strict finish order, one team label per place. Place 1 is the winner.
class FinishOrder {
 public:
  FinishOrder() = default;
  explicit FinishOrder(std::vector<Team> labels);

  // "AABAB..." (case-insensitive).
  static FinishOrder parse(std::string_view text);
  // Expands Team A's places (1-based, any order) into a full label sequence.
  static FinishOrder from_positions(const MeetFormat& format, std::span<const int> a_places);

  [[nodiscard]] int size() const { return static_cast<int>(labels_.size()); }
  // 1-based.
  [[nodiscard]] Team at(int place) const;
  [[nodiscard]] const std::vector<Team>& labels() const { return labels_; }
  [[nodiscard]] int count(Team t) const;
  [[nodiscard]] std::vector<int> places(Team t) const;
  [[nodiscard]] FinishOrder swapped() const;
  [[nodiscard]] std::string to_string() const;

  bool operator==(const FinishOrder&) const = default;

 private:
  std::vector<Team> labels_;
};

struct ScorePair {
  int s_a = 0;
  int s_b = 0;

  auto operator<=>(const ScorePair&) const = default;
};

// Positive when Team A wins (lowest score wins).
constexpr int margin(ScorePair pair) { return pair.s_b - pair.s_a; }

// Points earned by a finisher at overall `place` when `own_before` teammates
// and `other_before` opponents finished ahead. Non-scorers earn 0.
int finisher_points(const MeetFormat& format, int place, int own_before, int other_before);

ScorePair score(const MeetFormat& format, const FinishOrder& order);

struct ScoreBounds {
  int min_team_score = 0;
  int max_team_score = 0;
  int max_margin = 0;

  bool operator==(const ScoreBounds&) const = default;
};

// Closed-form bounds; symmetric formats only.
ScoreBounds score_bounds(const MeetFormat& format);

}  // namespace dualmeet
