#include "ctmp/model_io.hpp"

#include <fstream>
#include <set>
#include <unordered_map>

#include "ctmp/errors.hpp"

namespace ctmp {

ModelFile ModelFile::from_json(const nlohmann::json& j) {
  ModelFile f;
  try {
    f.schema_version = j.at("schema_version").get<int>();
    f.states = j.at("states").get<std::vector<std::string>>();
    for (const auto& entry : j.at("rates")) {
      f.rates.push_back({entry.at("from").get<std::string>(),
                         entry.at("to").get<std::string>(),
                         entry.at("rate").get<double>()});
    }
    f.observable = j.at("observable").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
  if (f.schema_version != 1)
    throw ParseError("model file: unsupported schema_version " +
                     std::to_string(f.schema_version));
  return f;
}

nlohmann::json ModelFile::to_json() const {
  nlohmann::json rates_json = nlohmann::json::array();
  for (const auto& r : rates)
    rates_json.push_back({{"from", r.from}, {"to", r.to}, {"rate", r.rate}});
  return {{"schema_version", schema_version},
          {"states", states},
          {"rates", rates_json},
          {"observable", observable}};
}

RateModel ModelFile::to_model() const {
  const int n = static_cast<int>(states.size());
  std::unordered_map<std::string, int> index;
  for (int s = 0; s < n; ++s) {
    if (!index.emplace(states[s], s).second)
      throw ParseError("model file: duplicate state label '" + states[s] + "'");
  }

  Matrix w = Matrix::Zero(n, n);
  std::set<std::pair<int, int>> seen;
  for (const auto& entry : rates) {
    const auto from = index.find(entry.from);
    const auto to = index.find(entry.to);
    if (from == index.end())
      throw ParseError("model file: rate references unknown state '" + entry.from + "'");
    if (to == index.end())
      throw ParseError("model file: rate references unknown state '" + entry.to + "'");
    if (from->second == to->second)
      throw ParseError("model file: self-rate on state '" + entry.from + "'");
    if (!(entry.rate > 0.0))
      throw ParseError("model file: rate " + entry.from + " -> " + entry.to +
                       " must be positive");
    if (!seen.emplace(from->second, to->second).second)
      throw ParseError("model file: duplicate rate " + entry.from + " -> " + entry.to);
    w(to->second, from->second) = entry.rate;
  }
  for (int i = 0; i < n; ++i) w(i, i) = -(w.col(i).sum() - w(i, i));

  std::vector<int> observable_set;
  for (const auto& label : observable) {
    const auto it = index.find(label);
    if (it == index.end())
      throw ParseError("model file: observable references unknown state '" + label + "'");
    observable_set.push_back(it->second);
  }
  return validate_generator(w, observable_set, states);
}

ModelFile ModelFile::from_model(const RateModel& model) {
  ModelFile f;
  f.states = model.labels();
  for (int from = 0; from < model.n(); ++from)
    for (int to = 0; to < model.n(); ++to)
      if (from != to && model.rate(from, to) > 0.0)
        f.rates.push_back({f.states[from], f.states[to], model.rate(from, to)});
  for (int s : model.observable_set()) f.observable.push_back(f.states[s]);
  return f;
}

RateModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model file '" + path + "': " + e.what());
  }
  return ModelFile::from_json(j).to_model();
}

void save_model_file(const std::string& path, const ModelFile& file) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write model file '" + path + "'");
  out << file.to_json().dump(2) << "\n";
}

}  // namespace ctmp
