#include "znls/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "znls/errors.hpp"

namespace znls {

namespace {

constexpr double kBig = 1e300;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_ll(const std::string& s, long long& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc{} && res.ptr == e;
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(trim(item));
  return items;
}

void check_value(const std::string& experiment, const std::string& key, const ParamDef& def,
                 const std::string& value, int line) {
  auto fail = [&](const std::string& why) {
    std::string where = line > 0 ? " (line " + std::to_string(line) + ")" : "";
    throw ConfigError(experiment + ": parameter '" + key + "' " + why + where);
  };
  auto check_range = [&](double v) {
    if (v < def.lo || v > def.hi) {
      fail("out of range [" + std::to_string(def.lo) + ", " + std::to_string(def.hi) +
           "]: " + value);
    }
  };
  switch (def.kind) {
    case ParamDef::Kind::integer: {
      long long v;
      if (!parse_ll(value, v)) fail("is not an integer: " + value);
      check_range(static_cast<double>(v));
      break;
    }
    case ParamDef::Kind::real: {
      double v;
      if (!parse_double(value, v) || !std::isfinite(v)) fail("is not a real number: " + value);
      check_range(v);
      break;
    }
    case ParamDef::Kind::text: {
      if (!def.choices.empty() &&
          std::find(def.choices.begin(), def.choices.end(), value) == def.choices.end()) {
        fail("must be one of the documented choices, got: " + value);
      }
      break;
    }
    case ParamDef::Kind::int_list: {
      auto items = split_list(value);
      if (items.empty()) fail("is an empty list");
      for (const auto& it : items) {
        long long v;
        if (!parse_ll(it, v)) fail("has a non-integer item: " + it);
        check_range(static_cast<double>(v));
      }
      break;
    }
    case ParamDef::Kind::real_list: {
      auto items = split_list(value);
      if (items.empty()) fail("is an empty list");
      for (const auto& it : items) {
        double v;
        if (!parse_double(it, v) || !std::isfinite(v)) fail("has a non-real item: " + it);
        check_range(v);
      }
      break;
    }
  }
}

}  // namespace

long long ExperimentConfig::get_int(const std::string& key) const {
  long long v = 0;
  parse_ll(values.at(key), v);
  return v;
}

double ExperimentConfig::get_real(const std::string& key) const {
  double v = 0;
  parse_double(values.at(key), v);
  return v;
}

std::string ExperimentConfig::get_text(const std::string& key) const { return values.at(key); }

std::vector<long long> ExperimentConfig::get_int_list(const std::string& key) const {
  std::vector<long long> out;
  for (const auto& it : split_list(values.at(key))) {
    long long v = 0;
    parse_ll(it, v);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> ExperimentConfig::get_real_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& it : split_list(values.at(key))) {
    double v = 0;
    parse_double(it, v);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExperimentConfig parse_config(const std::string& text, const std::string& experiment) {
  const auto& schemas = experiment_schemas();
  auto sit = schemas.find(experiment);
  if (sit == schemas.end()) {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  const Schema& schema = sit->second;

  ExperimentConfig cfg;
  cfg.experiment = experiment;
  for (const auto& [key, def] : schema) cfg.values[key] = def.preset;

  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    std::string s = raw;
    std::size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(experiment + ": malformed line " + std::to_string(line) +
                        " (expected key = value): " + trim(raw));
    }
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(experiment + ": malformed line " + std::to_string(line) +
                        " (empty key or value)");
    }
    if (key == "seed") {
      long long v;
      if (!parse_ll(value, v) || v < 0) {
        throw ConfigError(experiment + ": bad seed on line " + std::to_string(line));
      }
      cfg.seed = static_cast<std::uint64_t>(v);
      continue;
    }
    if (key == "out") {
      cfg.out_path = value;
      continue;
    }
    auto pit = schema.find(key);
    if (pit == schema.end()) {
      throw ConfigError(experiment + ": unknown key '" + key + "' on line " +
                        std::to_string(line));
    }
    check_value(experiment, key, pit->second, value, line);
    cfg.values[key] = value;
  }
  // defaults are validated too, so a bad preset cannot slip through
  for (const auto& [key, def] : schema) check_value(experiment, key, def, cfg.values[key], 0);
  if (cfg.out_path.empty()) cfg.out_path = experiment + ".csv";
  return cfg;
}

namespace {

Schema simulate_schema() {
  Schema s;
  s["K"] = {ParamDef::Kind::integer, "64", 1, 8192, {}};
  s["M"] = {ParamDef::Kind::integer, "0", 0, 200000, {}};  // 0 = smallest smooth >= 3K
  s["dt"] = {ParamDef::Kind::real, "1e-5", 1e-12, 1.0, {}};
  s["rho"] = {ParamDef::Kind::integer, "-1", -1, 1, {}};
  s["T"] = {ParamDef::Kind::real, "1", 1e-9, 1000.0, {}};
  s["stride"] = {ParamDef::Kind::integer, "0", 0, 1000000000, {}};  // 0 = about 100 rows
  s["u0"] = {ParamDef::Kind::text, "smooth-random", 0, 0,
             {"constant", "mode", "smooth-random", "profile"}};
  s["amplitude"] = {ParamDef::Kind::real, "1", 0.0, kBig, {}};
  s["mode"] = {ParamDef::Kind::integer, "1", 1, 8192, {}};
  s["data_modes"] = {ParamDef::Kind::integer, "16", 1, 8192, {}};
  s["N"] = {ParamDef::Kind::integer, "16", 1, 4096, {}};
  s["znorm"] = {ParamDef::Kind::integer, "0", 0, 1, {}};
  return s;
}

Schema extinction_schema() {
  Schema s;
  s["N"] = {ParamDef::Kind::integer, "256", 4, 4096, {}};
  s["T_list"] = {ParamDef::Kind::int_list, "4,16,64", 2, 1000000, {}};
  s["mesh"] = {ParamDef::Kind::integer, "192", 2, 100000, {}};
  s["grid_factor"] = {ParamDef::Kind::integer, "16", 16, 64, {}};
  return s;
}

Schema weyl_schema() {
  Schema s;
  s["N_list"] = {ParamDef::Kind::int_list, "64,128,256,512", 1, 100000, {}};
  s["samples"] = {ParamDef::Kind::integer, "10000", 1, 100000000, {}};
  s["resonant_qmax"] = {ParamDef::Kind::integer, "32", 0, 4096, {}};
  s["sigma"] = {ParamDef::Kind::integer, "0", 0, 1, {}};
  return s;
}

Schema strichartz_schema() {
  Schema s;
  s["p"] = {ParamDef::Kind::real, "100", 4.0000001, 10000.0, {}};
  s["N_list"] = {ParamDef::Kind::int_list, "8,16,32,64,128,256", 1, 4096, {}};
  s["ensemble"] = {ParamDef::Kind::integer, "6", 1, 10000, {}};
  s["t0"] = {ParamDef::Kind::real, "-1", -1000.0, 1000.0, {}};
  s["t1"] = {ParamDef::Kind::real, "1", -1000.0, 1000.0, {}};
  return s;
}

Schema sogge_schema() {
  Schema s;
  s["q_list"] = {ParamDef::Kind::int_list, "8,16,32,64,128,256,512", 1, 8192, {}};
  return s;
}

Schema concentration_schema() {
  Schema s;
  s["N_list"] = {ParamDef::Kind::int_list, "8,16,32", 1, 100000, {}};
  s["q_factors"] = {ParamDef::Kind::int_list, "8,16,32", 1, 100000, {}};
  return s;
}

Schema trilinear_schema() {
  Schema s;
  s["n1_list"] = {ParamDef::Kind::int_list, "32,64,128,256", 1, 4096, {}};
  s["n2"] = {ParamDef::Kind::integer, "8", 1, 4096, {}};
  s["n3"] = {ParamDef::Kind::integer, "8", 1, 4096, {}};
  s["ensemble"] = {ParamDef::Kind::integer, "4", 1, 10000, {}};
  s["t0"] = {ParamDef::Kind::real, "0", -1000.0, 1000.0, {}};
  s["t1"] = {ParamDef::Kind::real, "1", -1000.0, 1000.0, {}};
  return s;
}

Schema hflfi_schema() {
  Schema s;
  s["p_list"] = {ParamDef::Kind::int_list, "16,32,64,128,256,512", 1, 100000, {}};
  s["N_list"] = {ParamDef::Kind::int_list, "8,16,32,64", 2, 100000, {}};
  return s;
}

Schema projector_schema() {
  Schema s;
  s["kmax"] = {ParamDef::Kind::integer, "32", 1, 256, {}};
  s["Mq"] = {ParamDef::Kind::integer, "2048", 64, 16384, {}};
  s["fields"] = {ParamDef::Kind::integer, "20", 1, 10000, {}};
  s["K"] = {ParamDef::Kind::integer, "32", 1, 4096, {}};
  s["M"] = {ParamDef::Kind::integer, "64", 4, 100000, {}};
  return s;
}

Schema profile_compare_schema() {
  Schema s;
  s["N_list"] = {ParamDef::Kind::int_list, "64,256", 1, 4096, {}};
  s["R"] = {ParamDef::Kind::real, "4", 0.5, 100.0, {}};
  s["R_dom"] = {ParamDef::Kind::real, "80", 1.0, 10000.0, {}};
  s["T0"] = {ParamDef::Kind::real, "4", 0.01, 1000.0, {}};
  s["rho"] = {ParamDef::Kind::integer, "-1", -1, 1, {}};
  s["K_e"] = {ParamDef::Kind::integer, "960", 8, 100000, {}};
  s["grid_factor"] = {ParamDef::Kind::integer, "16", 16, 64, {}};
  s["snapshots"] = {ParamDef::Kind::integer, "16", 2, 10000, {}};
  return s;
}

Schema ball_schema() {
  Schema s;
  s["K"] = {ParamDef::Kind::integer, "64", 1, 8192, {}};
  s["dt"] = {ParamDef::Kind::real, "5e-5", 1e-12, 1.0, {}};
  s["rho"] = {ParamDef::Kind::integer, "-1", -1, 1, {}};
  s["T"] = {ParamDef::Kind::real, "1", 1e-9, 1000.0, {}};
  s["stride"] = {ParamDef::Kind::integer, "0", 0, 1000000000, {}};
  s["data_modes"] = {ParamDef::Kind::integer, "8", 1, 8192, {}};
  s["amplitude"] = {ParamDef::Kind::real, "1", 0.0, kBig, {}};
  return s;
}

Schema ball_verify_schema() {
  Schema s;
  s["modes"] = {ParamDef::Kind::integer, "32", 1, 4096, {}};
  s["count"] = {ParamDef::Kind::integer, "100", 1, 100000, {}};
  s["t_list"] = {ParamDef::Kind::real_list, "0.1,0.37,1.0", -1000.0, 1000.0, {}};
  s["M"] = {ParamDef::Kind::integer, "128", 4, 100000, {}};
  return s;
}

}  // namespace

const std::map<std::string, Schema>& experiment_schemas() {
  static const std::map<std::string, Schema> schemas = [] {
    std::map<std::string, Schema> m;
    m["simulate"] = simulate_schema();
    m["extinction"] = extinction_schema();
    m["weyl"] = weyl_schema();
    m["strichartz"] = strichartz_schema();
    m["sogge"] = sogge_schema();
    m["concentration"] = concentration_schema();
    m["trilinear"] = trilinear_schema();
    m["hflfi"] = hflfi_schema();
    m["projector-check"] = projector_schema();
    m["profile-compare"] = profile_compare_schema();
    m["ball"] = ball_schema();
    m["ball-verify"] = ball_verify_schema();
    return m;
  }();
  return schemas;
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const auto& [name, schema] : experiment_schemas()) names.push_back(name);
  return names;
}

}  // namespace znls
