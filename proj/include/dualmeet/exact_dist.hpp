#pragma once

#include <cstddef>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dualmeet/distribution.hpp"
#include "dualmeet/meet.hpp"
#include "dualmeet/rational.hpp"

namespace dualmeet {

// Positional conditioning: which team holds which overall places.
class Condition {
 public:
  Condition() = default;

  // `team` holds places 1..places.
  static Condition fastest(Team team, int places = 1);
  // "", "none", "fastest:A", "top2:B", "1:A,3:A" (places 1-based).
  static Condition parse(std::string_view text);

  // Throws InvalidInput if the place is < 1 or already fixed to the other team.
  Condition& fix(int place, Team team);

  [[nodiscard]] const std::map<int, Team>& fixed() const { return fixed_; }
  [[nodiscard]] bool empty() const { return fixed_.empty(); }
  [[nodiscard]] int count(Team team) const;
  [[nodiscard]] bool admits(const FinishOrder& order) const;
  // False when a team is asked to hold more places than its roster size.
  [[nodiscard]] bool satisfiable(const MeetFormat& format) const;
  // Throws InvalidInput when a fixed place lies beyond the last finisher.
  void validate(const MeetFormat& format) const;
  [[nodiscard]] Condition swapped() const;
  [[nodiscard]] std::string to_string() const;

  bool operator==(const Condition&) const = default;

 private:
  std::map<int, Team> fixed_;
};

// Every finish order admitted by a condition, in lexicographic order of
// Team A's place set. Unsatisfiable conditions yield an empty range.
class OutcomeRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = FinishOrder;
    using difference_type = std::ptrdiff_t;
    using pointer = const FinishOrder*;
    using reference = const FinishOrder&;

    iterator() = default;

    reference operator*() const { return order_; }
    pointer operator->() const { return &order_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(const iterator& other) const;

   private:
    friend class OutcomeRange;
    iterator(const OutcomeRange* range, bool done);
    void rebuild();

    const OutcomeRange* range_ = nullptr;
    std::vector<int> choice_;  // indices into range_->free_places_
    FinishOrder order_;
    bool done_ = true;
  };

  OutcomeRange(const MeetFormat& format, const Condition& condition);

  [[nodiscard]] iterator begin() const { return iterator(this, !satisfiable_); }
  [[nodiscard]] iterator end() const { return iterator(); }

 private:
  MeetFormat format_;
  Condition condition_;
  std::vector<int> free_places_;
  int free_a_ = 0;
  bool satisfiable_ = true;
};

OutcomeRange enumerate_outcomes(const MeetFormat& format, const Condition& condition = {});

// C(m_a + m_b - f, m_a - f_a): the size of enumerate_outcomes.
BigInt count_outcomes(const MeetFormat& format, const Condition& condition = {});

// Count-weighted margin and score-pair distribution over all admitted orders,
// each order equally likely.
ScoreDistribution iid_distribution(const MeetFormat& format, const Condition& condition = {});

enum class Symmetrization {
  // The input already covers both teams' outcomes: w'(k) = w(k) + w(-k).
  Fold,
  // The input is one half of the outcome space (e.g. Team A fastest); the
  // other half is its mirror image: w'(k) = 2 (w(k) + w(-k)), w'(0) = 2 w(0).
  MirrorHalfSpace,
};

// Distribution of |margin|. Both modes give the same probabilities; they differ
// in the count total (462 vs 924 for the (6,4) Team-A-fastest table).
ScoreDistribution symmetrize(const ScoreDistribution& dist,
                             Symmetrization mode = Symmetrization::MirrorHalfSpace);

// Signed unconditional distribution from a Team-A-fastest one: cond ⊎ mirror(cond).
ScoreDistribution unconditional_from_fastest(const ScoreDistribution& conditional);

// The top-three shift rule. When one team holds place 1 and the other place 2,
// the rest of the race is an (m-1, n-1) meet whose winner is known. Team A
// holding {1,3} therefore yields the (m-1, n-1) Team-A-fastest distribution
// shifted by +1; Team A holding {2,3} shifts it by -1.
//
// `a_places` must be {1,3} or {2,3}. The result is checked against direct
// enumeration of `format` with the top three places fixed; a mismatch throws
// ConsistencyError.
ScoreDistribution shifted_condition_distribution(const MeetFormat& format, const std::set<int>& a_places);

// Shift applied by the rule above: +1 for {1,3}, -1 for {2,3}.
int top_three_shift(const std::set<int>& a_places);

}  // namespace dualmeet
