#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ctmp/rate_model.hpp"

namespace ctmp {

/// On-disk model description: labeled states, positive from/to rates and the
/// observable subset. The generator diagonal is always derived.
struct ModelFile {
  struct RateEntry {
    std::string from;
    std::string to;
    double rate = 0.0;
  };

  int schema_version = 1;
  std::vector<std::string> states;
  std::vector<RateEntry> rates;
  std::vector<std::string> observable;

  static ModelFile from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  RateModel to_model() const;
  static ModelFile from_model(const RateModel& model);
};

RateModel load_model_file(const std::string& path);
void save_model_file(const std::string& path, const ModelFile& file);

}  // namespace ctmp
