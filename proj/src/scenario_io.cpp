#include "esr/scenario_io.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace esr {

namespace {

using nlohmann::json;

Vec2 parse_point(const json &doc, const std::string &key) {
  const json &v = doc.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ScenarioError("'" + key + "' must be an [x, y] pair of numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

double parse_number(const json &doc, const std::string &key) {
  if (!doc.contains(key))
    throw ScenarioError("missing key '" + key + "'");
  if (!doc[key].is_number())
    throw ScenarioError("'" + key + "' must be a number");
  return doc[key].get<double>();
}

int parse_int(const json &doc, const std::string &key) {
  if (!doc.contains(key))
    throw ScenarioError("missing key '" + key + "'");
  if (!doc[key].is_number_integer())
    throw ScenarioError("'" + key + "' must be an integer");
  const auto v = doc[key].get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw ScenarioError("'" + key + "' is out of range");
  return static_cast<int>(v);
}

json point_json(Vec2 p) { return json::array({p.x, p.y}); }

Scenario parse_document(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ScenarioError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ScenarioError("scenario must be a JSON object");

  Scenario s;
  for (const char *key : {"source", "ris", "dest"})
    if (!doc.contains(key))
      throw ScenarioError(std::string("missing key '") + key + "'");
  s.source = parse_point(doc, "source");
  s.ris = parse_point(doc, "ris");
  s.dest = parse_point(doc, "dest");

  if (doc.contains("eves")) {
    if (!doc["eves"].is_array())
      throw ScenarioError("'eves' must be an array of [x, y] pairs");
    for (std::size_t i = 0; i < doc["eves"].size(); ++i) {
      const json wrapper = {{"eve", doc["eves"][i]}};
      s.eves.push_back(parse_point(wrapper, "eve"));
    }
  } else if (doc.contains("eves_auto")) {
    const json &autoeve = doc["eves_auto"];
    if (!autoeve.is_object())
      throw ScenarioError("'eves_auto' must be an object with 'count'");
    const int count = parse_int(autoeve, "count");
    if (count < 1)
      throw ScenarioError("'eves_auto.count' must be >= 1");
    s.eves = reference_eve_positions(static_cast<std::size_t>(count));
  } else {
    throw ScenarioError("one of 'eves' or 'eves_auto' is required");
  }

  s.alpha = parse_number(doc, "alpha");
  s.bits = parse_int(doc, "b");
  s.eta = parse_number(doc, "eta");
  s.p_dbm = parse_number(doc, "p_dbm");
  s.noise_dbm = parse_number(doc, "noise_dbm");
  s.n_elements = parse_int(doc, "n_elements");

  try {
    s.validate();
  } catch (const std::invalid_argument &e) {
    throw ScenarioError(e.what());
  }
  return s;
}

} // namespace

Scenario parse_scenario(std::string_view json_text) {
  try {
    return parse_document(json_text);
  } catch (const json::exception &e) {
    throw ScenarioError(std::string("invalid scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ScenarioError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const ScenarioError &e) {
    throw ScenarioError("scenario file '" + path.string() + "': " + e.what());
  }
}

std::string scenario_to_json(const Scenario &scenario) {
  json eves = json::array();
  for (const auto &e : scenario.eves)
    eves.push_back(point_json(e));
  const json doc = {
      {"source", point_json(scenario.source)},
      {"ris", point_json(scenario.ris)},
      {"dest", point_json(scenario.dest)},
      {"eves", eves},
      {"alpha", scenario.alpha},
      {"b", scenario.bits},
      {"eta", scenario.eta},
      {"p_dbm", scenario.p_dbm},
      {"noise_dbm", scenario.noise_dbm},
      {"n_elements", scenario.n_elements},
  };
  return doc.dump(2);
}

} // namespace esr
