#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "eurw/runner.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void parse_grid(const std::string& spec, eurw::RunConfig& config) {
  double lo, hi, step;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3) {
    throw CLI::ValidationError("--grid expects lo:hi:step");
  }
  config.grid_lo = lo;
  config.grid_hi = hi;
  config.grid_step = step;
}

/// Config file first, command-line flags override.
void load_config_file(const std::string& path, eurw::RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError("cannot read config file " + path);
  nlohmann::json j;
  in >> j;
  if (j.contains("scenario")) config.scenario = j["scenario"];
  if (j.contains("bound")) config.bound_kind = j["bound"];
  if (j.contains("bases")) config.bases = j["bases"].get<std::vector<std::string>>();
  if (j.contains("ref_policy")) config.ref_policy = j["ref_policy"];
  if (j.contains("mode")) config.mode = j["mode"];
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (g.is_string()) {
      parse_grid(g.get<std::string>(), config);
    } else {
      if (g.contains("lo")) config.grid_lo = g["lo"];
      if (g.contains("hi")) config.grid_hi = g["hi"];
      if (g.contains("step")) config.grid_step = g["step"];
    }
  }
  if (j.contains("p")) config.p = j["p"];
  if (j.contains("parties")) config.parties = j["parties"];
  if (j.contains("hubbard")) {
    const auto& h = j["hubbard"];
    if (h.contains("sites")) config.hubbard_sites = h["sites"];
    if (h.contains("hopping")) config.hubbard_hopping = h["hopping"];
    if (h.contains("interaction")) config.hubbard_interaction = h["interaction"];
    if (h.contains("t_scale")) config.t_scale = h["t_scale"];
  }
  if (j.contains("shots")) config.shots = j["shots"];
  if (j.contains("resamples")) config.resamples = j["resamples"];
  if (j.contains("miller_madow")) config.miller_madow = j["miller_madow"];
  if (j.contains("seed")) config.seed = j["seed"];
  if (j.contains("jobs")) config.jobs = j["jobs"];
  if (j.contains("output")) config.output = j["output"];
  if (j.contains("trials")) config.verify_trials = j["trials"];
}

}  // namespace

int main(int argc, char** argv) {
  eurw::RunConfig config;

  // pre-scan so file values become defaults the flags can override
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        load_config_file(argv[i + 1], config);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      }
    }
  }

  CLI::App app{"entropic-uncertainty entanglement witness toolkit"};
  app.require_subcommand(1);
  std::string config_path, bases_csv, grid_spec;
  app.add_option("--config", config_path, "JSON config file (flags override)");

  auto add_common = [&](CLI::App* cmd, bool with_grid) {
    cmd->add_option("--bases", bases_csv,
                    "comma-separated basis names (qubit: x,y,z,r; hubbard: "
                    "site,tilted,tilted-fixed)");
    cmd->add_option("--ref", config.ref_policy,
                    "referenced-basis policy: last | maximize | <index>");
    cmd->add_option("--mode", config.mode, "exact | experimental | shots");
    cmd->add_option("--seed", config.seed, "random seed");
    cmd->add_option("--output,-o", config.output, "CSV output path");
    cmd->add_option("--jobs", config.jobs, "worker threads (env EUR_WITNESS_JOBS)");
    cmd->add_option("--shots", config.shots, "shots per measurement setting");
    cmd->add_option("--resamples", config.resamples, "bootstrap resamples");
    cmd->add_flag("--miller-madow", config.miller_madow,
                  "bias-corrected entropy estimates");
    cmd->add_option("--L", config.hubbard_sites, "hubbard: lattice sites");
    cmd->add_option("--J", config.hubbard_hopping, "hubbard: hopping strength");
    cmd->add_option("--U", config.hubbard_interaction, "hubbard: interaction strength");
    cmd->add_option("--t-scale", config.t_scale,
                    "hubbard: sweep time scale (default 0.38*L)");
    if (with_grid) cmd->add_option("--grid", grid_spec, "sweep grid lo:hi:step");
  };

  auto* scenario = app.add_subcommand("scenario", "sweep a scenario and emit CSV");
  scenario->add_option("name", config.scenario, "hubbard | ghz-werner | w-werner")
      ->required();
  add_common(scenario, true);

  auto* bound = app.add_subcommand("bound", "evaluate one witness bound");
  bound->add_option("kind", config.bound_kind, "bipartite | tripartite | gme | mpartite")
      ->required();
  bound->add_option("--family", config.scenario,
                    "state family: ghz | w | ghz-werner | w-werner | hubbard");
  bound->add_option("--p", config.p, "family mixing weight");
  bound->add_option("--parties", config.parties, "party count for mpartite ghz");
  bound->add_option("--t", config.sweep_time, "hubbard: tilted-basis time");
  add_common(bound, false);

  auto* verify = app.add_subcommand("verify", "run the random property suite");
  verify->add_option("--trials", config.verify_trials, "number of random trials");
  verify->add_option("--seed", config.seed, "random seed");

  auto* shots = app.add_subcommand("shots", "finite-statistics estimate of a bound");
  shots->add_option("--family", config.scenario, "ghz-werner | w-werner | ghz | w");
  shots->add_option("--p", config.p, "family mixing weight");
  add_common(shots, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (scenario->parsed()) config.command = "scenario";
  if (bound->parsed()) config.command = "bound";
  if (verify->parsed()) config.command = "verify";
  if (shots->parsed()) config.command = "shots";
  if (!bases_csv.empty()) config.bases = split_commas(bases_csv);
  if (!grid_spec.empty()) {
    try {
      parse_grid(grid_spec, config);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
  }

  return eurw::run(config);
}
