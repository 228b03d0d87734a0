#include "dualmeet/summary.hpp"

#include <cmath>

#include "dualmeet/exact_dist.hpp"

namespace dualmeet {

std::vector<Rational> default_quantile_levels() {
  return {Rational(1, 2), Rational(3, 4), Rational(9, 10)};
}

Rational quantile(const ScoreDistribution& dist, const Rational& q) {
  if (q <= 0 || q >= 1) throw InvalidInput("quantile level " + to_string(q) + " outside (0,1)");
  if (dist.empty()) throw InvalidInput("quantile of an empty distribution");
  const Rational total = dist.total();
  const auto& weights = dist.weights();

  Rational cumulative = 0;
  for (auto it = weights.begin(); it != weights.end(); ++it) {
    cumulative += it->second;
    const Rational level = cumulative / total;
    if (level < q) continue;
    auto next = std::next(it);
    if (level == q && next != weights.end()) return Rational(it->first + next->first, 2);
    return Rational(it->first);
  }
  return Rational(weights.rbegin()->first);
}

Rational abs_quantile(const ScoreDistribution& dist, const Rational& q) {
  return quantile(symmetrize(dist, Symmetrization::Fold), q);
}

Rational big_victory(const ScoreDistribution& dist) { return abs_quantile(dist, Rational(9, 10)); }

MeetSummary summarize(const ScoreDistribution& dist) {
  const auto levels = default_quantile_levels();
  return summarize(dist, levels);
}

MeetSummary summarize(const ScoreDistribution& dist, std::span<const Rational> levels) {
  if (dist.empty()) throw InvalidInput("cannot summarize an empty distribution");
  const ScoreDistribution p = dist.normalized();

  MeetSummary s;
  Rational win_moment = 0;
  Rational loss_moment = 0;
  Rational second_moment = 0;
  for (const auto& [m, w] : p.weights()) {
    if (m > 0) {
      s.p_win += w;
      win_moment += w * m;
    } else if (m < 0) {
      s.p_loss += w;
      loss_moment += w * m;
    } else {
      s.p_tie += w;
    }
    second_moment += w * m * m;
  }
  s.mean_margin = win_moment + loss_moment;
  s.variance = second_moment - s.mean_margin * s.mean_margin;
  s.std_margin = std::sqrt(to_double(s.variance));
  if (s.p_win > 0) s.mean_win_margin = win_moment / s.p_win;
  if (s.p_loss > 0) s.mean_loss_margin = loss_moment / s.p_loss;

  s.median = quantile(p, Rational(1, 2));
  const ScoreDistribution folded = symmetrize(p, Symmetrization::Fold);
  for (const Rational& q : levels) {
    s.quantiles[q] = quantile(p, q);
    s.abs_quantiles[q] = quantile(folded, q);
  }
  return s;
}

bool SummaryComparison::pass() const {
  for (const auto& f : fields) {
    if (!f.pass) return false;
  }
  return true;
}

std::vector<std::string> SummaryComparison::failed_fields() const {
  std::vector<std::string> names;
  for (const auto& f : fields) {
    if (!f.pass) names.push_back(f.field);
  }
  return names;
}

SummaryComparison compare_summaries(const MeetSummary& expected, const MeetSummary& actual,
                                    const SummaryTolerances& tolerances) {
  SummaryComparison report;
  auto check = [&](std::string name, double e, double a, double tol) {
    const double diff = std::fabs(e - a);
    report.fields.push_back({std::move(name), e, a, diff, tol, diff <= tol + 1e-12});
  };
  auto exact = [](const Rational& r) { return to_double(r); };

  check("p_win", exact(expected.p_win), exact(actual.p_win), tolerances.probability);
  check("p_tie", exact(expected.p_tie), exact(actual.p_tie), tolerances.probability);
  check("p_loss", exact(expected.p_loss), exact(actual.p_loss), tolerances.probability);
  check("mean_margin", exact(expected.mean_margin), exact(actual.mean_margin), tolerances.moment);
  check("std_margin", expected.std_margin, actual.std_margin, tolerances.moment);

  auto optional_check = [&](const std::string& name, const std::optional<Rational>& e,
                            const std::optional<Rational>& a) {
    if (e.has_value() != a.has_value()) {
      report.fields.push_back({name, e ? exact(*e) : 0.0, a ? exact(*a) : 0.0, 0.0, tolerances.moment, false});
      return;
    }
    if (e) check(name, exact(*e), exact(*a), tolerances.moment);
  };
  optional_check("mean_win_margin", expected.mean_win_margin, actual.mean_win_margin);
  optional_check("mean_loss_margin", expected.mean_loss_margin, actual.mean_loss_margin);

  check("median", exact(expected.median), exact(actual.median), tolerances.quantile);
  for (const auto& [q, value] : expected.quantiles) {
    if (auto it = actual.quantiles.find(q); it != actual.quantiles.end()) {
      check("quantile(" + format_fixed(q, 2) + ")", exact(value), exact(it->second), tolerances.quantile);
    }
  }
  for (const auto& [q, value] : expected.abs_quantiles) {
    if (auto it = actual.abs_quantiles.find(q); it != actual.abs_quantiles.end()) {
      check("abs_quantile(" + format_fixed(q, 2) + ")", exact(value), exact(it->second), tolerances.quantile);
    }
  }
  return report;
}

}  // namespace dualmeet
