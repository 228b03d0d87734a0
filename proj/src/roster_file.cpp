#include "dualmeet/roster_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dualmeet {
namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (allowed.count(key) == 0) throw InvalidInput("unknown field '" + key + "' in " + where);
  }
}

const json& require(const json& object, const std::string& key, const std::string& where) {
  if (!object.contains(key)) throw InvalidInput("missing field '" + key + "' in " + where);
  return object.at(key);
}

double number(const json& object, const std::string& key, const std::string& where) {
  const json& v = require(object, key, where);
  if (!v.is_number()) throw InvalidInput("field '" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

std::string text(const json& object, const std::string& key, const std::string& where) {
  const json& v = require(object, key, where);
  if (!v.is_string()) throw InvalidInput("field '" + key + "' in " + where + " must be a string");
  return v.get<std::string>();
}

TimeModel parse_model(const json& model, const std::string& where) {
  if (!model.is_object()) throw InvalidInput("field 'model' in " + where + " must be an object");
  const std::string kind = text(model, "kind", where);
  if (kind == "uniform") {
    reject_unknown(model, {"kind", "lower", "upper"}, where);
    return TimeModel::uniform(number(model, "lower", where), number(model, "upper", where));
  }
  if (kind == "beta") {
    reject_unknown(model, {"kind", "a", "b", "shift", "scale"}, where);
    const double a = model.contains("a") ? number(model, "a", where) : BetaTime{}.a;
    const double b = model.contains("b") ? number(model, "b", where) : BetaTime{}.b;
    return TimeModel::beta(a, b, number(model, "shift", where), number(model, "scale", where));
  }
  if (kind == "point") {
    reject_unknown(model, {"kind", "t"}, where);
    return TimeModel::point(number(model, "t", where));
  }
  throw InvalidInput("unknown model kind '" + kind + "' in " + where);
}

}  // namespace

Roster parse_roster(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("roster is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("roster must be a JSON object");
  reject_unknown(doc, {"runners"}, "roster");
  const json& list = require(doc, "runners", "roster");
  if (!list.is_array()) throw InvalidInput("field 'runners' in roster must be an array");

  std::vector<Runner> runners;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const json& entry = list[k];
    const std::string where = "runners[" + std::to_string(k) + "]";
    if (!entry.is_object()) throw InvalidInput(where + " must be an object");
    reject_unknown(entry, {"team", "id", "model"}, where);
    const std::string team = text(entry, "team", where);
    if (team != "A" && team != "B") throw InvalidInput("field 'team' in " + where + " must be \"A\" or \"B\"");
    Runner r;
    r.team = team_from_char(team[0]);
    r.id = text(entry, "id", where);
    r.model = parse_model(require(entry, "model", where), where + ".model");
    runners.push_back(std::move(r));
  }
  return Roster(std::move(runners));
}

Roster load_roster(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read roster file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_roster(buffer.str());
}

std::string roster_to_json(const Roster& roster) {
  nlohmann::ordered_json doc;
  doc["runners"] = nlohmann::ordered_json::array();
  for (const Runner& r : roster.runners()) {
    nlohmann::ordered_json model;
    model["kind"] = std::string(r.model.kind());
    std::visit(
        [&model](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, UniformTime>) {
            model["lower"] = p.lower;
            model["upper"] = p.upper;
          } else if constexpr (std::is_same_v<T, BetaTime>) {
            model["a"] = p.a;
            model["b"] = p.b;
            model["shift"] = p.shift;
            model["scale"] = p.scale;
          } else {
            model["t"] = p.t;
          }
        },
        r.model.params());
    doc["runners"].push_back({{"team", std::string(1, to_char(r.team))}, {"id", r.id}, {"model", model}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace dualmeet
