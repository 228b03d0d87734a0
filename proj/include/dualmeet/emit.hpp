#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualmeet/distribution.hpp"
#include "dualmeet/summary.hpp"

namespace dualmeet {

enum class OutputFormat { Csv, Json, Markdown };

// "csv", "json", "md" (or "markdown").
OutputFormat output_format_from_string(std::string_view text);

// Free-form provenance written into JSON documents ("generator", "seed", ...).
// Ignored by the CSV and markdown writers.
using Metadata = std::vector<std::pair<std::string, std::string>>;

// Distribution document.
//   csv:  margin,count,probability  (count empty for probability weights)
//   json: {"kind","total","weights":[{"margin","weight","probability"}],"joint":[...]}
//         with exact weights as strings so the document parses back losslessly
//   md:   margin / counts / prob rows, wrapped into bands of at most 12 columns
// Probabilities are rounded half-even to `precision` places.
std::string emit_distribution(const ScoreDistribution& dist, OutputFormat format, int precision = 4,
                              const Metadata& metadata = {});

ScoreDistribution parse_distribution_json(std::string_view text);

// statistic,value document. mean_loss_margin is printed signed.
std::string emit_summary(const MeetSummary& summary, OutputFormat format, int precision = 4);

// One column of a population-ratio sweep.
struct SweepColumn {
  std::string label;  // as printed in the header, e.g. "0.55"
  ScoreDistribution distribution;
};

// Margin-by-ratio probability matrix: margin,<label>,<label>,...
std::string emit_sweep(const std::vector<SweepColumn>& columns, OutputFormat format, int precision = 4);

// Statistic-by-ratio matrix with rows win, mean, std, mean_win, mean_loss and
// quantile_<q> (signed-margin quantile) for every requested level.
std::string emit_sweep_summary(const std::vector<SweepColumn>& columns, OutputFormat format,
                               const std::vector<Rational>& levels, int precision = 4);

// Band layout used by the markdown writer: ceil(n / 12) bands of
// ceil(n / bands) columns, the last band taking the remainder.
std::vector<std::size_t> markdown_band_sizes(std::size_t columns);

// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

}  // namespace dualmeet
