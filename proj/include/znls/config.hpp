#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace znls {

struct ParamDef {
  enum class Kind { integer, real, text, int_list, real_list };
  Kind kind = Kind::integer;
  std::string preset;  // textual default
  double lo = 0.0;
  double hi = 0.0;  // inclusive range for numeric kinds (and list items)
  std::vector<std::string> choices;  // nonempty -> value must be one of these
};

// ordered: iteration order is the documented column/validation order
using Schema = std::map<std::string, ParamDef>;

class ExperimentConfig {
 public:
  std::string experiment;
  std::uint64_t seed = 0;
  std::string out_path;

  long long get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  std::string get_text(const std::string& key) const;
  std::vector<long long> get_int_list(const std::string& key) const;  // sorted ascending
  std::vector<double> get_real_list(const std::string& key) const;    // sorted ascending

  std::map<std::string, std::string> values;  // validated raw strings
};

// Parses `key = value` lines ('#' comments, blank lines ignored) against the
// schema of the named experiment; every violation carries its line number.
// Unknown keys are rejected.  Numeric entries are range-checked here, before
// any computation starts.
ExperimentConfig parse_config(const std::string& text, const std::string& experiment);

const std::map<std::string, Schema>& experiment_schemas();
std::vector<std::string> experiment_names();

}  // namespace znls
