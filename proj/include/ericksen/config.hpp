#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ericksen/presets.hpp"

namespace ericksen {

struct OutputSpec {
  std::string dir = "out";
  int vtk_every = 0;  // 0: final state only
};

struct RunConfig {
  ExperimentSpec experiment;
  OutputSpec output;
};

/// Full effective configuration; every key is always present so overrides can be checked.
nlohmann::json to_json(const RunConfig& config);

/// Strict inverse of to_json: unknown keys and wrong types throw ParseError naming the key.
RunConfig run_config_from_json(const nlohmann::json& j);

/// A config document holds either "preset" (plus optional "output") or the explicit
/// sections mesh/model/init/flow (plus optional "name", "output"). Explicit sections are
/// merged over the defaults, so only the keys that differ need to be given.
nlohmann::json expand_config(const nlohmann::json& doc);

/// Applies "section.key=value". The value is read as JSON, falling back to a plain string.
/// "flow.tol" sets tol_inner and tol_outer together.
void apply_override(nlohmann::json& effective, const std::string& assignment);

/// Loads --config (JSON file) or --preset, then applies overrides in order and validates.
/// Exactly one of `config_path` and `preset_name` must be non-empty.
RunConfig load_run_config(const std::string& config_path, const std::string& preset_name,
                          const std::vector<std::string>& overrides, nlohmann::json* effective = nullptr);

/// "key=value" lines for every leaf of the effective config, in key order. Values are
/// JSON, so each line is a valid override that reproduces the value.
std::vector<std::string> config_banner(const nlohmann::json& effective);

}  // namespace ericksen
