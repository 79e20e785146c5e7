#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eurw {

/// Everything a CLI invocation needs. Flags override config-file values;
/// see the README for the JSON schema (same field names).
struct RunConfig {
  std::string command = "scenario";  // scenario | bound | verify | shots
  std::string scenario = "ghz-werner";  // ghz-werner | w-werner | hubbard
  std::string bound_kind = "tripartite";  // bipartite | tripartite | gme | mpartite

  std::vector<std::string> bases = {"x", "z"};
  std::string ref_policy = "last";  // last | maximize | <index>
  std::string mode = "experimental";  // exact | experimental | shots

  double grid_lo = 0.0;
  double grid_hi = 1.0;
  double grid_step = 0.001;

  double p = 0.9;   // family weight for single-point commands
  int parties = 3;  // for mpartite on pure GHZ_m

  int hubbard_sites = 2;
  double hubbard_hopping = 1.0;
  double hubbard_interaction = -100.0;
  double t_scale = -1.0;  // sweep time scale; < 0 means 0.38 * sites
  double sweep_time = -1.0;  // fixed tilted time for single-point commands

  std::int64_t shots = 1000000;
  int resamples = 200;
  bool miller_madow = false;

  std::uint64_t seed = 0;
  int jobs = 0;  // 0: EUR_WITNESS_JOBS env var, else 1
  std::string output;  // CSV path; scenario default: "<scenario>.csv"

  int verify_trials = 500;
};

/// Executes the configured command. Writes the CSV and its JSON manifest
/// (path + ".manifest.json"), reports errors on stderr.
/// Returns 0 on success, 2 on configuration errors, 3 on numerical failure.
int run(const RunConfig& config);

/// Random-instance property sweep behind `eur-witness verify`.
struct VerifyOptions {
  int trials = 500;
  std::uint64_t seed = 7;
};

struct VerifyReport {
  int trials = 0;
  long long checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

VerifyReport run_property_suite(const VerifyOptions& options);

}  // namespace eurw
