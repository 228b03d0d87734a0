#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualmeet/distribution.hpp"
#include "dualmeet/rational.hpp"

namespace dualmeet {

enum class CheckStatus {
  Pass,
  // Off by exactly one unit in the last published digit.
  PublishedRounding,
  // A published figure that the published tables themselves contradict.
  Inconsistent,
  Fail,
};

std::string_view to_string(CheckStatus status);

struct CellCheck {
  std::string item;  // "margin=-8 count", "r=0.55 std", ...
  std::string published;
  std::string computed;
  CheckStatus status = CheckStatus::Pass;
};

struct TableReport {
  std::string name;
  std::string reference;
  CheckStatus status = CheckStatus::Pass;
  std::size_t cells = 0;
  std::size_t published_rounding = 0;
  std::size_t failures = 0;
  std::vector<CellCheck> exceptions;  // every cell whose status is not Pass
  std::string csv;                    // computed table
  std::string markdown;
};

struct ProseCheck {
  std::string id;
  std::string statistic;
  std::string published;
  std::string computed;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
};

struct ReproductionReport {
  std::vector<TableReport> tables;
  std::vector<ProseCheck> prose;
  double seconds = 0.0;

  // No table or prose check failed. Published-rounding cells and flagged
  // inconsistencies do not count as failures.
  [[nodiscard]] bool pass() const;
};

// A statistic of a distribution by name:
//   p_win p_tie p_loss mean std mean_win mean_loss (signed) mean_loss_abs median
//   q<level> (e.g. q0.9)  p_abs:<k>  p_div:<k>  mean_s_a  mean_s_b
// `exact` is set whenever the value is a rational.
struct StatisticValue {
  double value = 0.0;
  std::optional<Rational> exact;
};
StatisticValue evaluate_statistic(const ScoreDistribution& dist, std::string_view statistic);

// Recomputes every embedded reference table and prose statistic.
ReproductionReport reproduce_reference_tables();

// Writes <table>.csv and <table>.md per table plus manifest.json and
// manifest.md into `directory` (created if needed).
void write_reproduction(const ReproductionReport& report, const std::filesystem::path& directory);

std::string manifest_json(const ReproductionReport& report);
std::string manifest_markdown(const ReproductionReport& report);

}  // namespace dualmeet
