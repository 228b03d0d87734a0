#include "dualmeet/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dualmeet/emit.hpp"
#include "dualmeet/exact_dist.hpp"
#include "dualmeet/population.hpp"
#include "dualmeet/reference.hpp"
#include "dualmeet/summary.hpp"

namespace dualmeet {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

// "iid_7_5_disp_top2" -> format and condition.
struct TableConfig {
  MeetFormat format;
  Condition condition;
};

TableConfig parse_table_name(const std::string& name) {
  const auto parts = split(name, '_');
  // iid_M_N_mode_cond  |  population_dist_M_N_mode  |  population_stats_M_N_mode
  const std::size_t first = parts.at(0) == "iid" ? 1 : 2;
  const int m = std::stoi(parts.at(first));
  const int n = std::stoi(parts.at(first + 1));
  const bool displacement = parts.at(first + 2) == "disp";
  TableConfig config{MeetFormat::symmetric(m, n, displacement), {}};
  if (parts.size() > first + 3) {
    const std::string& cond = parts[first + 3];
    config.condition = Condition::fastest(Team::A, cond == "top2" ? 2 : 1);
  }
  return config;
}

void record(TableReport& report, std::string item, std::string published, std::string computed, CheckStatus status) {
  ++report.cells;
  if (status == CheckStatus::Pass) return;
  if (status == CheckStatus::PublishedRounding) ++report.published_rounding;
  if (status == CheckStatus::Fail) ++report.failures;
  report.exceptions.push_back({std::move(item), std::move(published), std::move(computed), status});
}

void finish(TableReport& report) {
  report.status = report.failures > 0         ? CheckStatus::Fail
                  : report.published_rounding > 0 ? CheckStatus::PublishedRounding
                                              : CheckStatus::Pass;
}

// Exact probability against a published rounded cell.
CheckStatus compare_rounded(const Rational& exact, const std::string& cell, std::string& shown) {
  const int places = std::max(decimal_places(cell), cell.find('.') == std::string::npos ? 4 : 0);
  const Rational published = parse_rational(cell);
  const Rational rounded = round_half_even(exact, places);
  shown = format_fixed(exact, places);
  if (rounded == published) return CheckStatus::Pass;
  const Rational diff = rounded > published ? rounded - published : published - rounded;
  if (diff == Rational(1) / power(Rational(10), places)) return CheckStatus::PublishedRounding;
  return CheckStatus::Fail;
}

TableReport check_count_table(const ReferenceTable& table) {
  TableReport report;
  report.name = table.name;
  report.reference = table.provenance;
  const auto config = parse_table_name(table.name);
  const ScoreDistribution dist = iid_distribution(config.format, config.condition);
  const std::size_t margin_col = table.column("margin");
  const std::size_t count_col = table.column("count");
  const std::size_t prob_col = table.column("probability");

  std::set<int> published_margins;
  for (const auto& row : table.rows) {
    const int m = std::stoi(row[margin_col]);
    published_margins.insert(m);
    const Rational count = dist.weight(m);
    const std::string label = "margin=" + std::to_string(m);
    record(report, label + " count", row[count_col], to_string(count),
           count == parse_rational(row[count_col]) ? CheckStatus::Pass : CheckStatus::Fail);
    std::string shown;
    const CheckStatus status = compare_rounded(dist.probability(m), row[prob_col], shown);
    record(report, label + " probability", row[prob_col], shown, status);
  }
  for (const auto& [m, w] : dist.weights()) {
    if (published_margins.count(m) == 0) {
      record(report, "margin=" + std::to_string(m) + " count", "(absent)", to_string(w), CheckStatus::Fail);
    }
  }
  record(report, "total", "", to_string(dist.total()),
         dist.total() == Rational(count_outcomes(config.format, config.condition)) ? CheckStatus::Pass
                                                                                    : CheckStatus::Fail);
  finish(report);
  report.csv = emit_distribution(dist, OutputFormat::Csv);
  report.markdown = emit_distribution(dist, OutputFormat::Markdown);
  return report;
}

std::vector<SweepColumn> sweep_columns(const ReferenceTable& table, const MeetFormat& format) {
  std::vector<SweepColumn> columns;
  for (std::size_t k = 1; k < table.header.size(); ++k) {
    columns.push_back({table.header[k], population_distribution(format, PopulationRatio::parse(table.header[k]))});
  }
  return columns;
}

TableReport check_probability_table(const ReferenceTable& table) {
  TableReport report;
  report.name = table.name;
  report.reference = table.provenance;
  const auto config = parse_table_name(table.name);
  const auto columns = sweep_columns(table, config.format);

  std::set<int> published_margins;
  for (const auto& row : table.rows) {
    const int m = std::stoi(row[0]);
    published_margins.insert(m);
    for (std::size_t k = 0; k < columns.size(); ++k) {
      std::string shown;
      const CheckStatus status = compare_rounded(columns[k].distribution.probability(m), row[k + 1], shown);
      record(report, "margin=" + std::to_string(m) + " r=" + columns[k].label, row[k + 1], shown, status);
    }
  }
  for (const auto& c : columns) {
    for (const auto& [m, w] : c.distribution.weights()) {
      if (published_margins.count(m) == 0 && round_half_even(w, 4) != 0) {
        record(report, "margin=" + std::to_string(m) + " r=" + c.label, "(absent)", format_fixed(w, 4),
               CheckStatus::Fail);
      }
    }
  }
  finish(report);
  report.csv = emit_sweep(columns, OutputFormat::Csv);
  report.markdown = emit_sweep(columns, OutputFormat::Markdown);
  return report;
}

// The "quantile_0.9" row is the 0.9 quantile of the signed margin; the other
// rows are compared within 0.005.
TableReport check_statistics_table(const ReferenceTable& table) {
  TableReport report;
  report.name = table.name;
  report.reference = table.provenance;
  const auto config = parse_table_name(table.name);
  const auto columns = sweep_columns(table, config.format);
  const std::vector<Rational> levels{Rational(9, 10)};

  for (const auto& row : table.rows) {
    const std::string& name = row[0];
    std::string statistic = name;
    bool exact = false;
    if (name == "win") {
      statistic = "p_win";
    } else if (name.rfind("quantile_", 0) == 0) {
      statistic = "q" + name.substr(9);
      exact = true;
    } else if (name != "mean" && name != "std" && name != "mean_win" && name != "mean_loss") {
      throw InvalidInput("reference table " + table.name + " has unknown statistic '" + name + "'");
    }
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const StatisticValue v = evaluate_statistic(columns[k].distribution, statistic);
      const double published = to_double(parse_rational(row[k + 1]));
      const bool ok = exact ? (v.exact && *v.exact == parse_rational(row[k + 1]))
                            : std::fabs(v.value - published) <= 0.005 + 1e-12;
      std::ostringstream shown;
      shown.precision(6);
      shown << v.value;
      record(report, name + " r=" + columns[k].label, row[k + 1], shown.str(), ok ? CheckStatus::Pass : CheckStatus::Fail);
    }
  }
  finish(report);
  report.csv = emit_sweep_summary(columns, OutputFormat::Csv, levels);
  report.markdown = emit_sweep_summary(columns, OutputFormat::Markdown, levels);
  return report;
}

std::vector<ProseCheck> check_prose(const ReferenceTable& table) {
  std::vector<ProseCheck> checks;
  const std::size_t c_id = table.column("id");
  const std::size_t c_model = table.column("model");
  const std::size_t c_m = table.column("m");
  const std::size_t c_n = table.column("n");
  const std::size_t c_disp = table.column("displacement");
  const std::size_t c_cond = table.column("condition");
  const std::size_t c_view = table.column("view");
  const std::size_t c_stat = table.column("statistic");
  const std::size_t c_value = table.column("value");
  const std::size_t c_tol = table.column("tolerance");
  const std::size_t c_flag = table.column("known_inconsistent");

  for (const auto& row : table.rows) {
    const MeetFormat format = MeetFormat::symmetric(std::stoi(row[c_m]), std::stoi(row[c_n]), row[c_disp] == "1");
    const Condition condition = Condition::parse(row[c_cond]);
    ScoreDistribution dist;
    const std::string& model = row[c_model];
    if (model == "iid") {
      dist = iid_distribution(format, condition).normalized();
    } else if (model.rfind("population:", 0) == 0) {
      dist = population_distribution(format, PopulationRatio::parse(model.substr(11)), condition);
    } else {
      throw InvalidInput("prose statistic " + row[c_id] + " has unknown model '" + model + "'");
    }
    if (row[c_view] == "unconditional") {
      if (!condition.empty()) throw InvalidInput("prose statistic " + row[c_id] + ": unconditional view with a condition");
      dist = symmetrize(dist, Symmetrization::Fold);
    } else if (row[c_view] != "conditional") {
      throw InvalidInput("prose statistic " + row[c_id] + " has unknown view '" + row[c_view] + "'");
    }

    const StatisticValue v = evaluate_statistic(dist, row[c_stat]);
    const Rational published = parse_rational(row[c_value]);
    const double tolerance = std::stod(row[c_tol]);
    const bool ok = (tolerance == 0.0 && v.exact) ? *v.exact == published
                                                 : std::fabs(v.value - to_double(published)) <= tolerance + 1e-12;

    ProseCheck check{row[c_id], row[c_stat], row[c_value], "", tolerance, CheckStatus::Pass, ""};
    std::ostringstream shown;
    shown.precision(6);
    shown << v.value;
    check.computed = shown.str();
    if (!ok) {
      check.status = row[c_flag] == "1" ? CheckStatus::Inconsistent : CheckStatus::Fail;
      if (check.status == CheckStatus::Inconsistent) {
        check.note = "published value contradicts the exact distribution";
      }
    } else if (row[c_flag] == "1") {
      check.note = "listed as inconsistent but agrees with the exact value";
    }
    checks.push_back(std::move(check));
  }
  return checks;
}

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::PublishedRounding:
      return "published-rounding";
    case CheckStatus::Inconsistent:
      return "inconsistent";
    case CheckStatus::Fail:
      return "fail";
  }
  return "fail";
}

bool ReproductionReport::pass() const {
  for (const auto& t : tables) {
    if (t.status == CheckStatus::Fail) return false;
  }
  for (const auto& p : prose) {
    if (p.status == CheckStatus::Fail) return false;
  }
  return true;
}

StatisticValue evaluate_statistic(const ScoreDistribution& input, std::string_view statistic) {
  const ScoreDistribution dist = input.normalized();
  const std::string stat(statistic);
  auto exact = [](const Rational& r) { return StatisticValue{to_double(r), r}; };

  if (stat.rfind("p_abs:", 0) == 0) {
    const int k = std::stoi(stat.substr(6));
    Rational p = dist.weight(k);
    if (k != 0) p += dist.weight(-k);
    return exact(p);
  }
  if (stat.rfind("p_div:", 0) == 0) {
    const int k = std::stoi(stat.substr(6));
    if (k <= 0) throw InvalidInput("divisor must be positive");
    Rational p = 0;
    for (const auto& [m, w] : dist.weights()) {
      if (m % k == 0) p += w;
    }
    return exact(p);
  }
  if (stat == "mean_s_a" || stat == "mean_s_b") {
    if (!dist.has_joint()) throw InvalidInput(stat + " needs the joint score distribution");
    Rational mean = 0;
    for (const auto& [pair, w] : dist.joint()) mean += w * (stat == "mean_s_a" ? pair.s_a : pair.s_b);
    return exact(mean);
  }
  if (stat.size() > 1 && stat[0] == 'q') return exact(quantile(dist, parse_rational(stat.substr(1))));

  const MeetSummary s = summarize(dist, std::vector<Rational>{});
  if (stat == "p_win") return exact(s.p_win);
  if (stat == "p_tie") return exact(s.p_tie);
  if (stat == "p_loss") return exact(s.p_loss);
  if (stat == "mean") return exact(s.mean_margin);
  if (stat == "std") return {s.std_margin, std::nullopt};
  if (stat == "median") return exact(s.median);
  if (stat == "mean_win") {
    if (!s.mean_win_margin) throw InvalidInput("mean_win undefined: no wins");
    return exact(*s.mean_win_margin);
  }
  if (stat == "mean_loss" || stat == "mean_loss_abs") {
    if (!s.mean_loss_margin) throw InvalidInput("mean_loss undefined: no losses");
    return exact(stat == "mean_loss" ? *s.mean_loss_margin : Rational(-*s.mean_loss_margin));
  }
  throw InvalidInput("unknown statistic '" + stat + "'");
}

ReproductionReport reproduce_reference_tables() {
  const auto start = std::chrono::steady_clock::now();
  ReproductionReport report;
  for (const std::string& name : reference_table_names()) {
    const ReferenceTable table = reference_table(name);
    if (name.rfind("iid_", 0) == 0) {
      report.tables.push_back(check_count_table(table));
    } else if (name.rfind("population_dist_", 0) == 0) {
      report.tables.push_back(check_probability_table(table));
    } else if (name.rfind("population_stats_", 0) == 0) {
      report.tables.push_back(check_statistics_table(table));
    } else if (name == "prose_statistics") {
      report.prose = check_prose(table);
    } else {
      throw InvalidInput("reference table '" + name + "' has no checker");
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string manifest_json(const ReproductionReport& report) {
  nlohmann::ordered_json doc;
  doc["status"] = report.pass() ? "pass" : "fail";
  doc["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : report.tables) {
    nlohmann::ordered_json entry;
    entry["name"] = t.name;
    entry["reference"] = t.reference;
    entry["status"] = std::string(to_string(t.status));
    entry["cells"] = t.cells;
    entry["published_rounding"] = t.published_rounding;
    entry["failures"] = t.failures;
    entry["exceptions"] = nlohmann::ordered_json::array();
    for (const auto& c : t.exceptions) {
      entry["exceptions"].push_back({{"item", c.item},
                                     {"published", c.published},
                                     {"computed", c.computed},
                                     {"status", std::string(to_string(c.status))}});
    }
    doc["tables"].push_back(std::move(entry));
  }
  doc["prose"] = nlohmann::ordered_json::array();
  for (const auto& p : report.prose) {
    doc["prose"].push_back({{"id", p.id},
                            {"statistic", p.statistic},
                            {"published", p.published},
                            {"computed", p.computed},
                            {"tolerance", p.tolerance},
                            {"status", std::string(to_string(p.status))},
                            {"note", p.note}});
  }
  return doc.dump(2) + "\n";
}

std::string manifest_markdown(const ReproductionReport& report) {
  std::ostringstream out;
  out << "# Reproduction manifest\n\nOverall: **" << (report.pass() ? "pass" : "fail") << "**\n\n";
  out << "| table | status | cells | published-rounding | failures |\n|---|---|---|---|---|\n";
  for (const auto& t : report.tables) {
    out << "| " << t.name << " | " << to_string(t.status) << " | " << t.cells << " | " << t.published_rounding << " | "
        << t.failures << " |\n";
  }
  bool any = false;
  for (const auto& t : report.tables) {
    for (const auto& c : t.exceptions) {
      if (!any) out << "\n## Cell exceptions\n\n| table | cell | published | computed | status |\n|---|---|---|---|---|\n";
      any = true;
      out << "| " << t.name << " | " << c.item << " | " << c.published << " | " << c.computed << " | "
          << to_string(c.status) << " |\n";
    }
  }
  out << "\n## Quoted statistics\n\n| id | statistic | published | computed | tolerance | status | note |\n"
         "|---|---|---|---|---|---|---|\n";
  for (const auto& p : report.prose) {
    out << "| " << p.id << " | " << p.statistic << " | " << p.published << " | " << p.computed << " | " << p.tolerance
        << " | " << to_string(p.status) << " | " << p.note << " |\n";
  }
  return out.str();
}

void write_reproduction(const ReproductionReport& report, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw InvalidInput("cannot create directory '" + directory.string() + "': " + ec.message());
  auto write = [&](const std::string& file, const std::string& content) {
    std::ofstream out(directory / file, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + (directory / file).string() + "'");
    out << content;
  };
  for (const auto& t : report.tables) {
    write(t.name + ".csv", t.csv);
    write(t.name + ".md", t.markdown);
  }
  write("manifest.json", manifest_json(report));
  write("manifest.md", manifest_markdown(report));
}

}  // namespace dualmeet
