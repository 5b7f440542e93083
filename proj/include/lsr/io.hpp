#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lsr/coeffs.hpp"
#include "lsr/energy.hpp"
#include "lsr/solver.hpp"

namespace lsr {

using Json = nlohmann::ordered_json;

struct OutputSpec {
  std::string path;  // empty: standard output
  std::string format = "json";
};

struct RunConfig {
  ProblemParams params{};
  QuadratureSpec quad{};
  McSpec mc{};
  WeightedNormSpec norm{};
  std::vector<int> k_list;
  OutputSpec output{};
};

// Throws ConfigError on malformed JSON, wrong types or unknown keys, and
// propagates parameter validation errors.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

Json to_json(const RunConfig& cfg);
Json to_json(const ProblemParams& p);
Json to_json(const ExpansionConstants& c);
Json to_json(const BoxDj& b);
Json to_json(const ExpansionCheck& e);
Json to_json(const DecayFit& d);
Json to_json(const ExistenceReport& r);

// Deterministic text: keys in insertion order, doubles with 17 significant digits.
std::string dump_json(const Json& j, int indent = 2);
std::string format_double(double v);

// FNV-1a 64 of the canonical config dump, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);
std::string utc_timestamp();

struct Table {
  std::vector<std::string> meta;  // written as "# " lines
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> footer;  // written as "# " lines after the data
};

std::string to_csv(const Table& t);

}  // namespace lsr
