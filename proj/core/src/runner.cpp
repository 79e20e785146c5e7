#include "eurw/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "eurw/scenarios.hpp"
#include "eurw/shots.hpp"

namespace eurw {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kCsvHeader =
    "parameter,bound_state_dependent,bound_state_independent,q_m,best_order,lhs,stderr,"
    "detected\n";

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Row {
  double parameter = 0.0;
  double sd = 0.0;  // state-dependent witness
  double si = 0.0;  // state-independent baseline witness
  double q_m = 0.0;
  std::string best_order;
  double lhs = 0.0;
  double stderr_ = 0.0;
  bool detected = false;

  std::string csv() const {
    return fmt(parameter) + "," + fmt(sd) + "," + fmt(si) + "," + fmt(q_m) + "," +
           best_order + "," + fmt(lhs) + "," + fmt(stderr_) + "," +
           (detected ? "1" : "0") + "\n";
  }
};

int resolve_jobs(const RunConfig& config) {
  if (config.jobs > 0) return config.jobs;
  if (const char* env = std::getenv("EUR_WITNESS_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

std::vector<double> make_grid(const RunConfig& config) {
  if (!(config.grid_hi >= config.grid_lo) || !(config.grid_step > 0.0)) {
    throw ConfigError("grid: need lo <= hi and step > 0");
  }
  std::vector<double> grid;
  const long long n =
      static_cast<long long>(std::floor((config.grid_hi - config.grid_lo) /
                                        config.grid_step + 0.5)) + 1;
  for (long long i = 0; i < n; ++i) {
    grid.push_back(config.grid_lo + config.grid_step * static_cast<double>(i));
  }
  if (grid.back() > config.grid_hi + config.grid_step * 0.5) grid.pop_back();
  return grid;
}

ProjectiveBasis qubit_basis_by_token(const std::string& token) {
  if (token == "x" || token == "y" || token == "z") return pauli_basis(token[0]);
  if (token == "r") return ProjectiveBasis("r", rotated_basis(M_PI / 8.0).vectors());
  throw ConfigError("unknown qubit basis token '" + token + "' (use x, y, z, r)");
}

std::vector<PartyBases> qubit_setups(const std::vector<std::string>& tokens,
                                     int num_parties, int ref_index) {
  if (tokens.size() < 2) throw ConfigError("need at least two bases");
  PartyBases one;
  for (const auto& t : tokens) one.bases.push_back(qubit_basis_by_token(t));
  one.referenced_index = ref_index;
  return std::vector<PartyBases>(static_cast<std::size_t>(num_parties), one);
}

std::vector<PartyBases> hubbard_setups(const std::vector<std::string>& tokens, int sites,
                                       double t, double t_fixed, int ref_index) {
  if (tokens.size() < 2) throw ConfigError("need at least two bases");
  PartyBases one;
  for (const auto& token : tokens) {
    if (token == "site") {
      one.bases.push_back(site_basis(sites));
    } else if (token == "tilted") {
      one.bases.emplace_back("tilted", tilted_basis(sites, t).vectors());
    } else if (token == "tilted-fixed") {
      one.bases.emplace_back("tilted-fixed", tilted_basis(sites, t_fixed).vectors());
    } else {
      throw ConfigError("unknown hubbard basis token '" + token +
                        "' (use site, tilted, tilted-fixed)");
    }
  }
  one.referenced_index = ref_index;
  return {one, one};  // particle B mirrors particle A
}

/// referenced-basis choices to evaluate under the configured policy
std::vector<int> ref_choices(const RunConfig& config) {
  if (config.ref_policy == "last") return {-1};
  if (config.ref_policy == "maximize") {
    std::vector<int> all(config.bases.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return all;
  }
  try {
    const int fixed = std::stoi(config.ref_policy);
    return {fixed};
  } catch (const std::exception&) {
    throw ConfigError("ref policy must be 'last', 'maximize', or a basis index");
  }
}

Row werner_point(const RunConfig& config, WernerFamily family, double p,
                 std::uint64_t point_seed) {
  const DensityState rho = werner_state({family, p});
  Row best_row;
  double best_sd = -std::numeric_limits<double>::infinity();
  for (int choice : ref_choices(config)) {
    const auto setups = qubit_setups(config.bases, 3, choice);
    Row row;
    row.parameter = p;
    if (config.mode == "shots") {
      const ShotTables tables = sample_tables(rho, setups, config.shots, point_seed);
      EstimationOptions opts;
      opts.resamples = config.resamples;
      opts.seed = point_seed + 1;
      opts.miller_madow = config.miller_madow;
      const EstimatedBound est =
          estimated_tripartite_bound(tables, rho.dims(), rho.labels(), setups, opts);
      row.sd = est.value;
      row.stderr_ = est.standard_error;
      const auto provider = [&tables](const BasisAssignment& a) {
        SettingKey key;
        for (const auto& [party, basis] : a) {
          (void)party;
          key.push_back(basis.name());
        }
        const auto it = tables.find(key);
        if (it == tables.end()) throw MissingTable("missing setting table");
        return it->second.empirical();
      };
      row.si = tripartite_ef3_baseline_from(provider, rho.dims(), setups);
      const BracketTerms terms = coherent_bracket(nullptr, provider, rho.dims(), 0,
                                                  setups, WitnessMode::experimental);
      row.q_m = terms.q_m;
      row.best_order = order_to_string(terms.best_order);
      row.lhs = terms.lhs();
    } else {
      const WitnessMode mode =
          config.mode == "exact" ? WitnessMode::exact : WitnessMode::experimental;
      row.sd = tripartite_ef3_bound(rho, setups, mode).bound_value;
      row.si = tripartite_ef3_baseline(rho, setups, mode);
      const auto provider = state_provider(rho);
      const BracketTerms terms =
          coherent_bracket(&rho, provider, rho.dims(), 0, setups, mode);
      row.q_m = terms.q_m;
      row.best_order = order_to_string(terms.best_order);
      row.lhs = terms.lhs();
    }
    row.detected = row.sd > 0.0;
    if (row.sd > best_sd) {
      best_sd = row.sd;
      best_row = row;
    }
  }
  return best_row;
}

Row hubbard_point(const RunConfig& config, const DensityState& rho, double s,
                  double t_scale, std::uint64_t point_seed) {
  const double t = s * t_scale;
  const double t_fixed = 0.38 * config.hubbard_sites;
  Row best_row;
  double best_sd = -std::numeric_limits<double>::infinity();
  for (int choice : ref_choices(config)) {
    const auto setups =
        hubbard_setups(config.bases, config.hubbard_sites, t, t_fixed, choice);
    Row row;
    row.parameter = s;
    if (config.mode == "shots") {
      const ShotTables tables = sample_tables(rho, setups, config.shots, point_seed);
      EstimationOptions opts;
      opts.resamples = config.resamples;
      opts.seed = point_seed + 1;
      opts.miller_madow = config.miller_madow;
      const EstimatedBound est = estimated_bipartite_bound(tables, rho.dims(),
                                                           rho.labels(), 0, setups, opts);
      row.sd = est.value;
      row.stderr_ = est.standard_error;
      const auto provider = [&tables](const BasisAssignment& a) {
        SettingKey key;
        for (const auto& [party, basis] : a) {
          (void)party;
          key.push_back(basis.name());
        }
        const auto it = tables.find(key);
        if (it == tables.end()) throw MissingTable("missing setting table");
        return it->second.empirical();
      };
      const BracketTerms terms = coherent_bracket(nullptr, provider, rho.dims(), 0,
                                                  setups, WitnessMode::experimental);
      row.si = 0.0;
      {
        // baseline from the same tables
        double total = state_independent_b_best(setups[0].bases);
        for (const auto& b : setups[0].bases) {
          BasisAssignment assign;
          assign.emplace(0, b);
          assign.emplace(1, b);
          total -= table_conditional_entropy(
              grouped_table(provider(assign), 0, {1}));
        }
        row.si = total / static_cast<double>(setups[0].bases.size() - 1);
      }
      row.q_m = terms.q_m;
      row.best_order = order_to_string(terms.best_order);
      row.lhs = terms.lhs();
    } else {
      const WitnessMode mode =
          config.mode == "exact" ? WitnessMode::exact : WitnessMode::experimental;
      const auto provider = state_provider(rho);
      const BracketTerms terms =
          coherent_bracket(&rho, provider, rho.dims(), 0, setups, mode);
      row.sd = terms.value;
      row.si = coherent_info_baseline(rho, 0, setups, mode);
      row.q_m = terms.q_m;
      row.best_order = order_to_string(terms.best_order);
      row.lhs = terms.lhs();
    }
    row.detected = row.sd > 0.0;
    if (row.sd > best_sd) {
      best_sd = row.sd;
      best_row = row;
    }
  }
  return best_row;
}

void write_manifest(const RunConfig& config, const std::string& csv_path,
                    double wall_seconds) {
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = config.command;
  j["config"] = {{"scenario", config.scenario},
                 {"bound", config.bound_kind},
                 {"bases", config.bases},
                 {"ref_policy", config.ref_policy},
                 {"mode", config.mode},
                 {"grid", {{"lo", config.grid_lo}, {"hi", config.grid_hi}, {"step", config.grid_step}}},
                 {"p", config.p},
                 {"parties", config.parties},
                 {"hubbard",
                  {{"sites", config.hubbard_sites},
                   {"hopping", config.hubbard_hopping},
                   {"interaction", config.hubbard_interaction},
                   {"t_scale", config.t_scale}}},
                 {"shots", config.shots},
                 {"resamples", config.resamples},
                 {"miller_madow", config.miller_madow},
                 {"jobs", resolve_jobs(config)}};
  j["seed"] = config.seed;
  j["versions"] = {{"eurw", kVersion},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}};
  j["wall_time_s"] = wall_seconds;
  std::ofstream out(csv_path + ".manifest.json");
  if (!out) throw ConfigError("cannot write manifest next to " + csv_path);
  out << j.dump(2) << "\n";
}

int run_scenario(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const std::vector<double> grid = make_grid(config);
  std::vector<Row> rows(grid.size());

  std::function<Row(std::size_t)> eval_point;
  DensityState hubbard_ground = ghz_state(2);  // placeholder; replaced below for hubbard
  if (config.scenario == "ghz-werner" || config.scenario == "w-werner") {
    const WernerFamily family =
        config.scenario == "ghz-werner" ? WernerFamily::ghz : WernerFamily::w;
    eval_point = [&, family](std::size_t i) {
      return werner_point(config, family, grid[i],
                          config.seed + 1000003ULL * static_cast<std::uint64_t>(i));
    };
  } else if (config.scenario == "hubbard") {
    const HubbardSpec spec{config.hubbard_sites, config.hubbard_hopping,
                           config.hubbard_interaction};
    const GroundState gs = ground_state(hubbard_hamiltonian(spec),
                                        {spec.sites, spec.sites});
    hubbard_ground = gs.state;
    const double t_scale =
        config.t_scale > 0 ? config.t_scale : 0.38 * config.hubbard_sites;
    eval_point = [&, t_scale](std::size_t i) {
      return hubbard_point(config, hubbard_ground, grid[i], t_scale,
                           config.seed + 1000003ULL * static_cast<std::uint64_t>(i));
    };
  } else {
    throw ConfigError("unknown scenario '" + config.scenario + "'");
  }

  const int jobs = resolve_jobs(config);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size() || failed.load()) return;
      try {
        rows[i] = eval_point(i);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        failure = e.what();
        return;
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw Error(failure);

  const std::string path =
      config.output.empty() ? config.scenario + ".csv" : config.output;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path);
  out << kCsvHeader;
  for (const auto& row : rows) out << row.csv();
  out.close();

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_manifest(config, path, wall);
  std::cout << path << ": " << rows.size() << " rows\n";
  return 0;
}

DensityState bound_state(const RunConfig& config) {
  if (config.scenario == "ghz-werner") return werner_state({WernerFamily::ghz, config.p});
  if (config.scenario == "w-werner") return werner_state({WernerFamily::w, config.p});
  if (config.scenario == "ghz") return ghz_state(config.parties);
  if (config.scenario == "w") return w_state();
  if (config.scenario == "hubbard") {
    const HubbardSpec spec{config.hubbard_sites, config.hubbard_hopping,
                           config.hubbard_interaction};
    return ground_state(hubbard_hamiltonian(spec), {spec.sites, spec.sites}).state;
  }
  throw ConfigError("unknown state family '" + config.scenario + "'");
}

int run_bound(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const DensityState rho = bound_state(config);
  const WitnessMode mode =
      config.mode == "exact" ? WitnessMode::exact : WitnessMode::experimental;

  std::vector<PartyBases> setups;
  double t_for_bases = config.sweep_time;
  if (config.scenario == "hubbard") {
    if (t_for_bases < 0) t_for_bases = 0.38 * config.hubbard_sites;
    setups = hubbard_setups(config.bases, config.hubbard_sites, t_for_bases,
                            0.38 * config.hubbard_sites, ref_choices(config).front());
  } else {
    setups = qubit_setups(config.bases, rho.num_parties(), ref_choices(config).front());
  }

  Row row;
  row.parameter = config.p;
  if (config.bound_kind == "bipartite") {
    // measured party 0, every other party is memory
    const BracketTerms terms =
        coherent_bracket(&rho, state_provider(rho), rho.dims(), 0, setups, mode);
    row.sd = terms.value;
    row.q_m = terms.q_m;
    row.best_order = order_to_string(terms.best_order);
    row.lhs = terms.lhs();
    row.si = coherent_info_baseline(rho, 0, setups, mode);
  } else if (config.bound_kind == "tripartite") {
    const WitnessResult res = tripartite_ef3_bound(rho, setups, mode);
    row.sd = res.bound_value;
    row.si = tripartite_ef3_baseline(rho, setups, mode);
    const BracketTerms terms =
        coherent_bracket(&rho, state_provider(rho), rho.dims(), 0, setups, mode);
    row.q_m = terms.q_m;
    row.best_order = order_to_string(terms.best_order);
    row.lhs = terms.lhs();
  } else if (config.bound_kind == "gme") {
    row.sd = gme_bound_estimated(rho, setups, mode).bound_value;
    row.si = gme_bound(rho);  // exact value for reference
    const BracketTerms terms =
        coherent_bracket(&rho, state_provider(rho), rho.dims(), 0, setups, mode);
    row.q_m = terms.q_m;
    row.best_order = order_to_string(terms.best_order);
    row.lhs = terms.lhs();
  } else if (config.bound_kind == "mpartite") {
    row.sd = mpartite_bound_estimated(rho, setups, mode).bound_value;
    row.si = mpartite_bound(rho);  // exact value for reference
    const BracketTerms terms =
        coherent_bracket(&rho, state_provider(rho), rho.dims(), 0, setups, mode);
    row.q_m = terms.q_m;
    row.best_order = order_to_string(terms.best_order);
    row.lhs = terms.lhs();
  } else {
    throw ConfigError("unknown bound kind '" + config.bound_kind + "'");
  }
  row.detected = row.sd > 0.0;

  std::cout << "bound=" << fmt(row.sd) << "\nbaseline=" << fmt(row.si)
            << "\nq_m=" << fmt(row.q_m) << "\nbest_order=" << row.best_order
            << "\nlhs=" << fmt(row.lhs) << "\ndetected=" << (row.detected ? "1" : "0")
            << "\n";
  if (!config.output.empty()) {
    std::ofstream out(config.output);
    if (!out) throw ConfigError("cannot open output file " + config.output);
    out << kCsvHeader << row.csv();
    out.close();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_manifest(config, config.output, wall);
  }
  return 0;
}

int run_shots(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const DensityState rho = bound_state(config);
  const auto setups = qubit_setups(config.bases, rho.num_parties(),
                                   ref_choices(config).front());
  const ShotTables tables = sample_tables(rho, setups, config.shots, config.seed);
  EstimationOptions opts;
  opts.resamples = config.resamples;
  opts.seed = config.seed + 1;
  opts.miller_madow = config.miller_madow;

  EstimatedBound est;
  if (rho.num_parties() == 3) {
    est = estimated_tripartite_bound(tables, rho.dims(), rho.labels(), setups, opts);
  } else {
    est = estimated_bipartite_bound(tables, rho.dims(), rho.labels(), 0, setups, opts);
  }
  std::cout << "estimate=" << fmt(est.value) << "\nstderr=" << fmt(est.standard_error)
            << "\nshots=" << est.shots << "\nresamples=" << est.resamples << "\n";
  if (!config.output.empty()) {
    Row row;
    row.parameter = config.p;
    row.sd = est.value;
    row.stderr_ = est.standard_error;
    row.detected = est.value > 0.0;
    std::ofstream out(config.output);
    if (!out) throw ConfigError("cannot open output file " + config.output);
    out << kCsvHeader << row.csv();
    out.close();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_manifest(config, config.output, wall);
  }
  return 0;
}

int run_verify(const RunConfig& config) {
  VerifyOptions options;
  options.trials = config.verify_trials;
  options.seed = config.seed == 0 ? 7 : config.seed;
  const VerifyReport report = run_property_suite(options);
  std::cout << "trials=" << report.trials << " checks=" << report.checks
            << " failures=" << report.failures.size() << "\n";
  for (const auto& f : report.failures) std::cerr << "FAIL " << f << "\n";
  return report.ok() ? 0 : 3;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    if (config.command == "scenario") return run_scenario(config);
    if (config.command == "bound") return run_bound(config);
    if (config.command == "shots") return run_shots(config);
    if (config.command == "verify") return run_verify(config);
    throw ConfigError("unknown command '" + config.command + "'");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace eurw
