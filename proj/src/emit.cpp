#include "dualmeet/emit.hpp"

#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

namespace dualmeet {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string probability_text(const Rational& p, int precision) { return format_fixed(p, precision); }

double rounded_number(const Rational& x, int precision) { return to_double(round_half_even(x, precision)); }

// "0.75" for terminating decimals, "p/q" otherwise.
std::string level_label(const Rational& q) {
  BigInt den = denominator(q);
  int places = 0;
  while (den % 10 == 0) {
    den /= 10;
    ++places;
  }
  for (; den % 2 == 0 || den % 5 == 0; ++places) {
    den /= den % 2 == 0 ? 2 : 5;
  }
  if (den != 1) return to_string(q);
  std::string text = format_fixed(q, places);
  return text;
}

std::string value_text(const Rational& x, int precision) {
  if (denominator(x) == 1) return numerator(x).str();
  return format_fixed(x, precision);
}

void markdown_row(std::ostringstream& out, const std::vector<std::string>& cells) {
  out << '|';
  for (const auto& c : cells) out << ' ' << c << " |";
  out << '\n';
}

void markdown_rule(std::ostringstream& out, std::size_t columns) {
  out << '|';
  for (std::size_t k = 0; k < columns; ++k) out << "---|";
  out << '\n';
}

struct SummaryRow {
  std::string name;
  std::optional<Rational> value;
};

std::vector<SummaryRow> summary_rows(const MeetSummary& s) {
  std::vector<SummaryRow> rows{
      {"p_win", s.p_win},
      {"p_tie", s.p_tie},
      {"p_loss", s.p_loss},
      {"mean_margin", s.mean_margin},
      {"std_margin", from_double(s.std_margin)},
      {"mean_win_margin", s.mean_win_margin},
      {"mean_loss_margin", s.mean_loss_margin},
      {"median", s.median},
  };
  for (const auto& [q, v] : s.quantiles) rows.push_back({"quantile_" + level_label(q), v});
  for (const auto& [q, v] : s.abs_quantiles) rows.push_back({"abs_quantile_" + level_label(q), v});
  return rows;
}

std::vector<int> sweep_support(const std::vector<SweepColumn>& columns) {
  std::set<int> margins;
  for (const auto& c : columns) {
    for (const auto& [m, w] : c.distribution.weights()) margins.insert(m);
  }
  return {margins.begin(), margins.end()};
}

std::string emit_matrix(const std::string& corner, const std::vector<SweepColumn>& columns,
                        const std::vector<std::pair<std::string, std::vector<std::string>>>& rows,
                        OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::Csv) {
    out << csv_field(corner);
    for (const auto& c : columns) out << ',' << csv_field(c.label);
    out << "\n";
    for (const auto& [name, cells] : rows) {
      out << csv_field(name);
      for (const auto& cell : cells) out << ',' << cell;
      out << "\n";
    }
    return out.str();
  }
  if (format == OutputFormat::Markdown) {
    std::vector<std::string> header{corner};
    for (const auto& c : columns) header.push_back(c.label);
    markdown_row(out, header);
    markdown_rule(out, header.size());
    for (const auto& [name, cells] : rows) {
      std::vector<std::string> line{name};
      line.insert(line.end(), cells.begin(), cells.end());
      markdown_row(out, line);
    }
    return out.str();
  }
  ordered_json doc;
  doc["columns"] = ordered_json::array();
  for (const auto& c : columns) doc["columns"].push_back(c.label);
  doc["rows"] = ordered_json::array();
  for (const auto& [name, cells] : rows) {
    ordered_json row;
    row[corner] = name;
    ordered_json values = ordered_json::array();
    for (const auto& cell : cells) {
      if (cell.empty()) {
        values.push_back(nullptr);
      } else {
        values.push_back(std::stod(cell));
      }
    }
    row["values"] = std::move(values);
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

}  // namespace

OutputFormat output_format_from_string(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  if (text == "md" || text == "markdown") return OutputFormat::Markdown;
  throw InvalidInput("unknown output format '" + std::string(text) + "' (expected csv, json or md)");
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::size_t> markdown_band_sizes(std::size_t columns) {
  if (columns == 0) return {};
  const std::size_t bands = (columns + 11) / 12;
  const std::size_t width = (columns + bands - 1) / bands;
  std::vector<std::size_t> sizes;
  for (std::size_t left = columns; left > 0; left -= std::min(left, width)) sizes.push_back(std::min(left, width));
  return sizes;
}

std::string emit_distribution(const ScoreDistribution& dist, OutputFormat format, int precision,
                              const Metadata& metadata) {
  if (precision < 0) throw InvalidInput("precision must be nonnegative");
  const bool counts = dist.kind() == WeightKind::Count;
  const Rational total = dist.total();
  auto probability = [&](const Rational& w) { return w / total; };

  std::ostringstream out;
  switch (format) {
    case OutputFormat::Csv: {
      out << "margin,count,probability\n";
      for (const auto& [m, w] : dist.weights()) {
        out << m << ',' << (counts ? numerator(w).str() : std::string()) << ','
            << probability_text(probability(w), precision) << "\n";
      }
      return out.str();
    }
    case OutputFormat::Markdown: {
      std::vector<std::pair<int, Rational>> cells(dist.weights().begin(), dist.weights().end());
      std::size_t offset = 0;
      for (std::size_t width : markdown_band_sizes(cells.size())) {
        if (offset > 0) out << '\n';
        std::vector<std::string> margins{"margin"};
        std::vector<std::string> count_row{"counts"};
        std::vector<std::string> prob_row{"prob"};
        for (std::size_t k = offset; k < offset + width; ++k) {
          margins.push_back(std::to_string(cells[k].first));
          count_row.push_back(numerator(cells[k].second).str());
          prob_row.push_back(probability_text(probability(cells[k].second), precision));
        }
        markdown_row(out, margins);
        markdown_rule(out, margins.size());
        if (counts) markdown_row(out, count_row);
        markdown_row(out, prob_row);
        offset += width;
      }
      return out.str();
    }
    case OutputFormat::Json: {
      ordered_json doc;
      for (const auto& [key, value] : metadata) doc[key] = value;
      doc["kind"] = std::string(to_string(dist.kind()));
      doc["total"] = to_string(total);
      doc["weights"] = ordered_json::array();
      for (const auto& [m, w] : dist.weights()) {
        doc["weights"].push_back(
            ordered_json{{"margin", m}, {"weight", to_string(w)}, {"probability", rounded_number(probability(w), precision)}});
      }
      if (dist.has_joint()) {
        doc["joint"] = ordered_json::array();
        for (const auto& [pair, w] : dist.joint()) {
          doc["joint"].push_back(ordered_json{{"s_a", pair.s_a}, {"s_b", pair.s_b}, {"weight", to_string(w)}});
        }
      }
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

ScoreDistribution parse_distribution_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    ScoreDistribution dist(weight_kind_from_string(doc.at("kind").get<std::string>()));
    if (doc.contains("joint")) {
      for (const auto& entry : doc.at("joint")) {
        dist.add(ScorePair{entry.at("s_a").get<int>(), entry.at("s_b").get<int>()},
                 parse_rational(entry.at("weight").get<std::string>()));
      }
      for (const auto& entry : doc.at("weights")) {
        if (dist.weight(entry.at("margin").get<int>()) != parse_rational(entry.at("weight").get<std::string>())) {
          throw InvalidInput("joint and margin weights disagree at margin " +
                             std::to_string(entry.at("margin").get<int>()));
        }
      }
    } else {
      for (const auto& entry : doc.at("weights")) {
        dist.add(entry.at("margin").get<int>(), parse_rational(entry.at("weight").get<std::string>()));
      }
    }
    return dist;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed distribution document: ") + e.what());
  }
}

std::string emit_summary(const MeetSummary& summary, OutputFormat format, int precision) {
  if (precision < 0) throw InvalidInput("precision must be nonnegative");
  const auto rows = summary_rows(summary);
  std::ostringstream out;
  switch (format) {
    case OutputFormat::Csv:
      out << "statistic,value\n";
      for (const auto& row : rows) {
        out << row.name << ',' << (row.value ? value_text(*row.value, precision) : std::string()) << "\n";
      }
      return out.str();
    case OutputFormat::Markdown:
      markdown_row(out, {"statistic", "value"});
      markdown_rule(out, 2);
      for (const auto& row : rows) {
        markdown_row(out, {row.name, row.value ? value_text(*row.value, precision) : std::string("-")});
      }
      return out.str();
    case OutputFormat::Json: {
      ordered_json doc;
      auto put = [&](ordered_json& target, const std::string& key, const std::optional<Rational>& v) {
        if (v) {
          target[key] = rounded_number(*v, precision);
        } else {
          target[key] = nullptr;
        }
      };
      put(doc, "p_win", summary.p_win);
      put(doc, "p_tie", summary.p_tie);
      put(doc, "p_loss", summary.p_loss);
      put(doc, "mean_margin", summary.mean_margin);
      put(doc, "std_margin", from_double(summary.std_margin));
      put(doc, "mean_win_margin", summary.mean_win_margin);
      put(doc, "mean_loss_margin", summary.mean_loss_margin);
      put(doc, "median", summary.median);
      doc["quantiles"] = ordered_json::object();
      for (const auto& [q, v] : summary.quantiles) put(doc["quantiles"], level_label(q), v);
      doc["abs_quantiles"] = ordered_json::object();
      for (const auto& [q, v] : summary.abs_quantiles) put(doc["abs_quantiles"], level_label(q), v);
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

std::string emit_sweep(const std::vector<SweepColumn>& columns, OutputFormat format, int precision) {
  if (precision < 0) throw InvalidInput("precision must be nonnegative");
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  for (int m : sweep_support(columns)) {
    std::vector<std::string> cells;
    for (const auto& c : columns) cells.push_back(probability_text(c.distribution.probability(m), precision));
    rows.emplace_back(std::to_string(m), std::move(cells));
  }
  return emit_matrix("margin", columns, rows, format);
}

std::string emit_sweep_summary(const std::vector<SweepColumn>& columns, OutputFormat format,
                               const std::vector<Rational>& levels, int precision) {
  if (precision < 0) throw InvalidInput("precision must be nonnegative");
  std::vector<MeetSummary> summaries;
  for (const auto& c : columns) summaries.push_back(summarize(c.distribution, levels));

  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  auto add_row = [&](const std::string& name, auto field) {
    std::vector<std::string> cells;
    for (const auto& s : summaries) {
      const std::optional<Rational> v = field(s);
      cells.push_back(v ? value_text(*v, precision) : std::string());
    }
    rows.emplace_back(name, std::move(cells));
  };
  add_row("win", [](const MeetSummary& s) { return std::optional<Rational>(s.p_win); });
  add_row("mean", [](const MeetSummary& s) { return std::optional<Rational>(s.mean_margin); });
  add_row("std", [](const MeetSummary& s) { return std::optional<Rational>(from_double(s.std_margin)); });
  add_row("mean_win", [](const MeetSummary& s) { return s.mean_win_margin; });
  add_row("mean_loss", [](const MeetSummary& s) { return s.mean_loss_margin; });
  for (const Rational& q : levels) {
    add_row("quantile_" + level_label(q), [&q](const MeetSummary& s) { return std::optional<Rational>(s.quantiles.at(q)); });
  }
  return emit_matrix("statistic", columns, rows, format);
}

}  // namespace dualmeet
