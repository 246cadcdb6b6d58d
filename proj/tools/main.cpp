// Experiment driver: one subcommand per experiment, deterministic CSV out.
//
//   znls <experiment> [--config file] [--out path] [--seed n]
//
// Exit codes: 0 success, 1 configuration error, 2 numerical-precondition
// error, 3 blow-up signal.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "znls/errors.hpp"
#include "znls/experiments.hpp"

namespace {

struct SubcommandState {
  std::string config_path;
  std::string out_path;
  std::string seed_text;
};

int run_one(const std::string& name, const SubcommandState& state) {
  std::string text;
  if (!state.config_path.empty()) {
    std::ifstream in(state.config_path, std::ios::binary);
    if (!in) {
      throw znls::ConfigError("cannot open config file '" + state.config_path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  znls::ExperimentConfig cfg = znls::parse_config(text, name);
  if (!state.seed_text.empty()) {
    cfg = znls::parse_config(text + "\nseed = " + state.seed_text + "\n", name);
  }
  if (!state.out_path.empty()) cfg.out_path = state.out_path;

  znls::ExperimentResult result = znls::run_experiment(cfg);
  znls::write_csv(result.table, cfg.out_path);
  std::printf("%s: %zu rows -> %s\n", name.c_str(), result.table.row_count(),
              cfg.out_path.c_str());
  if (!result.note.empty()) std::printf("%s\n", result.note.c_str());
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zonal spectral laboratory for the quintic NLS on the 3-sphere"};
  app.require_subcommand(1);

  std::map<std::string, SubcommandState> states;
  std::string chosen;
  for (const auto& name : znls::experiment_names()) {
    auto* sub = app.add_subcommand(name, "run the '" + name + "' experiment");
    auto& st = states[name];
    sub->add_option("--config", st.config_path, "key = value config file");
    sub->add_option("--out", st.out_path, "output CSV path");
    sub->add_option("--seed", st.seed_text, "master seed (overrides config)");
    sub->callback([&chosen, name] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run_one(chosen, states[chosen]);
  } catch (const znls::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const znls::PreconditionError& e) {
    std::fprintf(stderr, "precondition error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
