#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dualmeet/cli.hpp"
#include "dualmeet/emit.hpp"
#include "dualmeet/exact_dist.hpp"
#include "dualmeet/population.hpp"
#include "dualmeet/reference.hpp"
#include "dualmeet/reproduce.hpp"
#include "dualmeet/roster_file.hpp"
#include "helpers.hpp"

using namespace dualmeet;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dualmeet");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  std::random_device rd;
  fs::path dir = fs::temp_directory_path() / ("dualmeet-" + name + "-" + std::to_string(rd()));
  fs::create_directories(dir);
  return dir;
}

const MeetFormat kTable1 = MeetFormat::symmetric(6, 4, false);

}  // namespace

TEST_SUITE("cli-io") {
  TEST_CASE("csv distribution") {
    const auto d = iid_distribution(kTable1, Condition::fastest(Team::A));
    const auto lines = lines_of(emit_distribution(d, OutputFormat::Csv));
    REQUIRE(lines.size() == 14);
    CHECK(lines[0] == "margin,count,probability");
    CHECK(lines[1] == "-8,21,0.0455");
    long long sum = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) sum += std::stoll(split(lines[i])[1]);
    CHECK(sum == 462);

    const std::string text = emit_distribution(d, OutputFormat::Csv);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.back() == '\n');
    CHECK(text == emit_distribution(iid_distribution(kTable1, Condition::fastest(Team::A)), OutputFormat::Csv));

    CHECK(emit_distribution(ScoreDistribution{}, OutputFormat::Csv) == "margin,count,probability\n");

    const auto p = population_distribution(MeetFormat::symmetric(5, 5, true), PopulationRatio::parse("0.5"));
    const auto plines = lines_of(emit_distribution(p, OutputFormat::Csv));
    CHECK(split(plines[1])[1].empty());
  }

  TEST_CASE("rounding is half-even at the requested precision") {
    ScoreDistribution d(WeightKind::Probability);
    d.add(0, q(1, 32));
    d.add(1, q(31, 32));
    const auto lines = lines_of(emit_distribution(d, OutputFormat::Csv, 4));
    CHECK(lines[1] == "0,,0.0312");
    CHECK(lines[2] == "1,,0.9688");
    CHECK(lines_of(emit_distribution(d, OutputFormat::Csv, 5))[1] == "0,,0.03125");
  }

  TEST_CASE("json round trip") {
    const auto d = iid_distribution(MeetFormat::symmetric(7, 5, true), Condition::fastest(Team::A));
    const std::string text = emit_distribution(d, OutputFormat::Json, 4, {{"generator", "exact"}});
    const auto parsed = parse_distribution_json(text);
    CHECK(parsed == d);
    CHECK(parsed.has_joint());
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["kind"] == "count");
    CHECK(doc["total"] == "1716");

    const auto p = population_distribution(MeetFormat::symmetric(6, 4, true), PopulationRatio::parse("0.55"));
    CHECK(parse_distribution_json(emit_distribution(p, OutputFormat::Json)) == p);

    CHECK_THROWS_AS(parse_distribution_json("{\"kind\":\"count\"}"), InvalidInput);
    CHECK_THROWS(parse_distribution_json("not json"));
  }

  TEST_CASE("markdown bands") {
    CHECK(markdown_band_sizes(39) == std::vector<std::size_t>{10, 10, 10, 9});
    CHECK(markdown_band_sizes(12) == std::vector<std::size_t>{12});
    CHECK(markdown_band_sizes(13) == std::vector<std::size_t>{7, 6});
    CHECK(markdown_band_sizes(0).empty());

    const auto d = iid_distribution(MeetFormat::symmetric(6, 4, true), Condition::fastest(Team::A));
    const std::string md = emit_distribution(d, OutputFormat::Markdown);
    std::size_t tables = 0;
    for (const auto& line : lines_of(md)) {
      if (line.rfind("| margin", 0) == 0) ++tables;
    }
    CHECK(tables == 4);
  }

  TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  }

  TEST_CASE("summary and sweep documents") {
    const auto d = iid_distribution(MeetFormat::symmetric(6, 4, true), Condition::fastest(Team::A));
    const auto lines = lines_of(emit_summary(summarize(d), OutputFormat::Csv));
    CHECK(lines[0] == "statistic,value");
    CHECK(lines[1].rfind("p_win,", 0) == 0);

    std::vector<SweepColumn> columns;
    for (const char* r : {"0.5", "0.6"}) {
      columns.push_back({r, population_distribution(MeetFormat::symmetric(4, 4, false), PopulationRatio::parse(r))});
    }
    const auto sweep = lines_of(emit_sweep(columns, OutputFormat::Csv));
    CHECK(sweep[0] == "margin,0.5,0.6");
    CHECK(sweep[1] == "-16,0.0625,0.0256");
    const auto stats = lines_of(emit_sweep_summary(columns, OutputFormat::Csv, {q(9, 10)}));
    CHECK(stats[1] == "win,0.4609,0.6452");
  }

  TEST_CASE("roster documents") {
    const std::string text = R"({"runners": [
      {"team": "A", "id": "a1", "model": {"kind": "uniform", "lower": 960, "upper": 1010}},
      {"team": "B", "id": "b1", "model": {"kind": "beta", "shift": 950, "scale": 90}},
      {"team": "B", "id": "b2", "model": {"kind": "point", "t": 1000}}]})";
    const Roster roster = parse_roster(text);
    REQUIRE(roster.size() == 3);
    CHECK(roster.count(Team::B) == 2);
    const auto& beta = std::get<BetaTime>(roster.runners()[1].model.params());
    CHECK(beta.a == 1.5);
    CHECK(beta.b == 3.0);
    CHECK(parse_roster(roster_to_json(roster)).size() == 3);

    auto message = [](const std::string& doc) {
      try {
        parse_roster(doc);
      } catch (const InvalidInput& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message(R"({"runners":[{"team":"A","id":"a","model":{"kind":"point","t":1,"x":2}}]})").find("'x'") !=
          std::string::npos);
    CHECK(message(R"({"runners":[{"team":"A","id":"a","model":{"kind":"uniform","lower":1}}]})").find("upper") !=
          std::string::npos);
    CHECK_FALSE(message(R"({"runners":[{"team":"C","id":"a","model":{"kind":"point","t":1}}]})").empty());
    CHECK_FALSE(message(R"({"runners":[{"team":"A","id":"a","model":{"kind":"gamma"}}]})").empty());
    CHECK_FALSE(message("[").empty());
    CHECK_THROWS_AS(load_roster("/nonexistent/roster.json"), InvalidInput);
  }

  TEST_CASE("reference tables and statistics") {
    const auto names = reference_table_names();
    CHECK(names.size() == 15);
    const auto t = reference_table("iid_6_4_nodisp_first");
    CHECK(t.header == std::vector<std::string>{"margin", "count", "probability"});
    CHECK(t.rows.size() == 13);
    CHECK(t.rows[0][2] == ".0455");
    CHECK(t.column("count") == 1);
    CHECK_THROWS_AS((void)t.column("nope"), InvalidInput);
    CHECK_THROWS_AS(reference_table("missing"), InvalidInput);
    CHECK(decimal_places(".0455") == 4);
    CHECK(decimal_places("0") == 0);
    CHECK(decimal_places("7.100") == 3);

    const auto d = iid_distribution(MeetFormat::symmetric(3, 2, false));
    CHECK(*evaluate_statistic(d, "p_abs:0").exact == q(3, 10));
    CHECK(*evaluate_statistic(d, "p_win").exact == q(7, 20));
    CHECK(evaluate_statistic(d, "std").value > 0);
    CHECK_THROWS_AS(evaluate_statistic(d, "kurtosis"), InvalidInput);
  }

  TEST_CASE("command line documents") {
    auto r = run_cli({"iid", "--m", "6", "--n", "4", "--no-displacement", "--condition", "fastest:A"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == emit_distribution(iid_distribution(kTable1, Condition::fastest(Team::A)), OutputFormat::Csv));

    r = run_cli({"population", "--m", "4", "--n", "4", "--no-displacement", "--ratios", "0.5,0.55,0.6,0.65,0.7,0.75,0.8"});
    CHECK(r.code == kExitOk);
    const auto lines = lines_of(r.out);
    CHECK(lines[0] == "margin,0.5,0.55,0.6,0.65,0.7,0.75,0.8");
    CHECK(lines[1] == "-16,0.0625,0.0410,0.0256,0.0150,0.0081,0.0039,0.0016");

    r = run_cli({"population", "--m", "4", "--n", "4", "--no-displacement", "--scenario", "--ratios", "0.5"});
    CHECK(r.code == kExitOk);
    CHECK(lines_of(r.out)[1] == "-16,,0.0625");

    r = run_cli({"iid", "--m", "1", "--n", "1"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "margin,count,probability\n-1,1,0.5000\n1,1,0.5000\n");

    r = run_cli({"iid", "--m", "6", "--n", "4", "--summary", "--abs"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("median,6.5") != std::string::npos);

    r = run_cli({"injury", "--m-full", "7", "--m-injured", "6", "--n", "5", "--format", "json"});
    CHECK(r.code == kExitOk);
    CHECK(parse_distribution_json(r.out).total() == 1716);

    r = run_cli({"tiers", "--m", "6", "--n", "4", "--tiers", "2:2,2:2", "--remainder"});
    CHECK(r.code == kExitOk);
  }

  TEST_CASE("command line errors") {
    auto r = run_cli({"iid", "--m", "6", "--n", "4", "--bogus"});
    CHECK(r.code == kExitInvalid);
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

    CHECK(run_cli({"iid", "--m", "3", "--n", "4"}).code == kExitInvalid);
    CHECK(run_cli({"iid", "--m", "6", "--n", "4", "--format", "xml"}).code == kExitInvalid);
    CHECK(run_cli({"population", "--m", "4", "--n", "4", "--ratios", "1.5"}).code == kExitInvalid);
    CHECK(run_cli({"population", "--m", "4", "--n", "4", "--scenario", "--ratios", "0.5"}).code == kExitInvalid);
    CHECK(run_cli({}).code == kExitInvalid);

    r = run_cli({"iid", "--help"});
    CHECK(r.code == kExitOk);
    for (const char* flag : {"--m", "--n", "--condition", "--format", "--precision", "--summary", "--out"}) {
      CAPTURE(flag);
      CHECK(r.out.find(flag) != std::string::npos);
    }
  }

  TEST_CASE("command line files") {
    const fs::path dir = scratch_dir("io");
    const fs::path out = dir / "table.csv";
    auto r = run_cli({"iid", "--m", "6", "--n", "4", "--no-displacement", "--condition", "fastest:A", "--out", out.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(out, std::ios::binary);
    const std::string written((std::istreambuf_iterator<char>(in)), {});
    CHECK(written == emit_distribution(iid_distribution(kTable1, Condition::fastest(Team::A)), OutputFormat::Csv));

    const fs::path roster = dir / "roster.json";
    {
      std::ofstream f(roster);
      f << R"({"runners": [)";
      for (int k = 0; k < 5; ++k) {
        f << (k ? "," : "") << R"({"team":"A","id":"a)" << k << R"(","model":{"kind":"uniform","lower":960,"upper":1010}},)"
          << R"({"team":"B","id":"b)" << k << R"(","model":{"kind":"uniform","lower":970,"upper":1020}})";
      }
      f << "]}";
    }
    r = run_cli({"simulate", "--roster", roster.string(), "--n", "3", "--samples", "5000", "--seed", "9", "--format", "json"});
    CHECK(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["total"] == "5000");
    CHECK(doc["seed"] == "9");
    const auto again = run_cli({"simulate", "--roster", roster.string(), "--n", "3", "--samples", "5000", "--seed", "9",
                                "--format", "json", "--threads", "3"});
    CHECK(again.out == r.out);

    const fs::path repro = dir / "repro";
    r = run_cli({"reproduce-paper", "--out-dir", repro.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("inconsistent: iid_6_4_disp_first_loss") != std::string::npos);
    CHECK(fs::exists(repro / "manifest.json"));
    CHECK(fs::exists(repro / "iid_6_4_nodisp_first.csv"));
    const auto manifest = nlohmann::json::parse(std::ifstream(repro / "manifest.json"));
    CHECK(manifest.contains("tables"));
    fs::remove_all(dir);
  }
}
