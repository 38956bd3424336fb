// gatetrim command-line front end.
//
// Subcommands: decompose, reduce, evaluate, experiment, heatmap,
// random-target.  File formats: matrix CSV ("rows,cols" header then
// row-major "re,im" lines), circuit JSON, trace CSV, report CSV.
//
// Exit codes: 0 success, 2 input error (parse/shape), 3 precondition
// error (domain/config), 4 numerical failure inside the optimizer.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gatetrim/decompose.hpp"
#include "gatetrim/evaluate.hpp"
#include "gatetrim/io.hpp"
#include "gatetrim/optimizer.hpp"

namespace {

using namespace gatetrim;

constexpr std::uint64_t kTargetStream = 0x74617267;  // experiment targets

std::string g15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

// A state is stored as a matrix CSV with a single column.
StateVector read_state_csv(const std::string& path) {
  const ComplexMatrix m = read_matrix_csv(path);
  if (m.cols() != 1 || !is_power_of_two(m.rows()) || m.rows() < 2) {
    throw ShapeError("state CSV must be a 2^n x 1 column, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  StateVector s;
  s.n_qubits = qubit_count(m.rows());
  s.amplitudes.resize(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) s.amplitudes[r] = m(r, 0);
  return s;
}

std::string basis_label(std::size_t index, std::size_t n_qubits) {
  std::string label(n_qubits, '0');
  for (std::size_t b = 0; b < n_qubits; ++b)
    if (index & (std::size_t{1} << (n_qubits - 1 - b))) label[b] = '1';
  return label;
}

void print_state(const char* name, const StateVector& s) {
  std::printf("%s amplitudes:\n", name);
  for (std::size_t k = 0; k < s.amplitudes.size(); ++k) {
    const double im = s.amplitudes[k].imag();
    std::printf("  |%s>  %s %s%si\n", basis_label(k, s.n_qubits).c_str(),
                g15(s.amplitudes[k].real()).c_str(), im < 0.0 ? "-" : "+",
                g15(std::abs(im)).c_str());
  }
  std::printf("norm(%s) = %s\n", name, g15(state_norm(s)).c_str());
}

// Y arrives either as circuit JSON or as a matrix CSV; JSON documents
// start with '{' after whitespace.
ComplexMatrix read_operator(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return circuit_matrix(circuit_from_json(text));
  }
  return matrix_from_csv(text);
}

std::string default_trace_path(const std::string& output) {
  const auto dot = output.rfind('.');
  const std::string stem =
      (dot == std::string::npos) ? output : output.substr(0, dot);
  return stem + ".trace.csv";
}

std::size_t thread_cap() {
  std::size_t cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  if (const char* env = std::getenv("GATETRIM_THREADS")) {
    const std::uint64_t v = parse_u64(env);
    if (v < 1) throw ConfigError("GATETRIM_THREADS must be at least 1");
    cap = static_cast<std::size_t>(v);
  }
  return cap;
}

// ---------------------------------------------------------------------
// decompose

int cmd_decompose(const std::string& input, const std::string& output,
                  double tol) {
  const ComplexMatrix u = read_matrix_csv(input);
  const Circuit c = two_level_decompose(u, tol);
  write_circuit_json(output, c);
  const double err = frobenius_norm(sub(circuit_matrix(c), u));
  std::printf("gates: %zu\n", c.gates.size());
  std::printf("reconstruction_error: %s\n", g15(err).c_str());
  return 0;
}

// ---------------------------------------------------------------------
// reduce

int cmd_reduce(const std::string& input, const std::string& output,
               const std::string& trace_path, const OptimizerConfig& cfg) {
  const ComplexMatrix u = read_matrix_csv(input);
  const RunResult res = run(u, cfg);
  write_circuit_json(output, res.circuit);
  write_trace_csv(trace_path.empty() ? default_trace_path(output) : trace_path,
                  res.trace);

  const ComplexMatrix y = circuit_matrix(res.circuit);
  std::printf("final_loss: %s\n", g15(res.final_loss).c_str());
  std::printf("unitarity_error: %s\n", g15(unitarity_error(y)).c_str());
  std::printf("sweeps: %zu\n", res.sweeps);
  std::printf("converged: %s\n", res.converged ? "true" : "false");
  std::printf("gates:\n");
  for (std::size_t k = 0; k < res.circuit.gates.size(); ++k) {
    const TwoLevelGate& g = res.circuit.gates[k];
    try {
      const Block2 basis = (unitarity_error(g.block) <= 1e-8)
                               ? g.block
                               : nearest_unitary_2x2(g.block);
      const EulerAngles e = euler_decompose(basis, 1e-8);
      std::printf(
          "  gate %zu: position (%zu,%zu) alpha=%s theta=%s phi=%s lambda=%s\n",
          k + 1, g.i + 1, g.j + 1, g15(e.alpha).c_str(), g15(e.theta).c_str(),
          g15(e.phi).c_str(), g15(e.lambda).c_str());
    } catch (const DomainError&) {
      std::printf("  gate %zu: position (%zu,%zu) angles undefined "
                  "(singular block)\n",
                  k + 1, g.i + 1, g.j + 1);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------
// evaluate

int cmd_evaluate(const std::string& input, const std::string& reference,
                 const std::string& state_arg) {
  const ComplexMatrix y = read_operator(input);
  const ComplexMatrix u = read_matrix_csv(reference);
  if (!y.same_shape(u)) {
    throw ShapeError("operator is " + std::to_string(y.rows()) + "x" +
                     std::to_string(y.cols()) + " but reference is " +
                     std::to_string(u.rows()) + "x" +
                     std::to_string(u.cols()));
  }

  StateVector s;
  if (state_arg == "w3") {
    s = w_state(3);
  } else {
    s = read_state_csv(state_arg);
  }
  if (s.amplitudes.size() != y.rows()) {
    throw ShapeError("state dimension " + std::to_string(s.amplitudes.size()) +
                     " does not match operator dimension " +
                     std::to_string(y.rows()));
  }

  const StateVector ys = apply(y, s);
  const StateVector us = apply(u, s);
  print_state("Y|s>", ys);
  print_state("U|s>", us);
  const double f = fidelity(normalize(ys).first, normalize(us).first);
  std::printf("fidelity: %s\n", g15(f).c_str());
  return 0;
}

// ---------------------------------------------------------------------
// experiment

struct TrialRow {
  std::size_t m = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double converged_loss = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
  std::size_t updates = 0;
  double wall_seconds = 0.0;
};

struct ExperimentSpec {
  std::size_t n_qubits = 3;
  std::vector<std::size_t> budgets;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  OptimizerConfig optimizer;
};

ExperimentSpec load_experiment_spec(const std::string& path) {
  ExperimentSpec spec;
  bool have_budgets = false;
  for (const auto& [key, value] : parse_kv_file(path)) {
    if (key == "n_qubits") {
      spec.n_qubits = static_cast<std::size_t>(parse_u64(value));
    } else if (key == "budgets") {
      spec.budgets = parse_size_list(value);
      have_budgets = true;
    } else if (key == "trials") {
      spec.trials = static_cast<std::size_t>(parse_u64(value));
    } else if (key == "seed") {
      spec.base_seed = parse_u64(value);
    } else if (!apply_optimizer_key(spec.optimizer, key, value)) {
      throw ParseError("experiment spec: unknown key \"" + key + "\"");
    }
  }
  if (!have_budgets) throw ParseError("experiment spec: budgets is required");
  return spec;
}

void validate_experiment_spec(const ExperimentSpec& spec) {
  if (spec.n_qubits < 1 || spec.n_qubits > 16) {
    throw ConfigError("n_qubits must lie in [1, 16]");
  }
  if (spec.trials < 1) throw ConfigError("trials must be at least 1");
  if (spec.budgets.empty()) throw ConfigError("budgets must be nonempty");
  const std::size_t d = std::size_t{1} << spec.n_qubits;
  const std::size_t max_m = d * (d - 1) / 2;
  for (std::size_t m : spec.budgets) {
    if (m < 1 || m > max_m) {
      throw ConfigError("budget " + std::to_string(m) + " outside [1, " +
                        std::to_string(max_m) + "] for n_qubits " +
                        std::to_string(spec.n_qubits));
    }
  }
}

int cmd_experiment(const std::string& spec_path, const std::string& output,
                   const std::vector<std::size_t>& budgets_override,
                   std::size_t trials_override, bool have_trials,
                   std::uint64_t seed_override, bool have_seed) {
  ExperimentSpec spec = load_experiment_spec(spec_path);
  if (!budgets_override.empty()) spec.budgets = budgets_override;
  if (have_trials) spec.trials = trials_override;
  if (have_seed) spec.base_seed = seed_override;
  validate_experiment_spec(spec);

  const std::size_t d = std::size_t{1} << spec.n_qubits;
  struct Job {
    std::size_t m;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t m : spec.budgets)
    for (std::size_t t = 0; t < spec.trials; ++t) jobs.push_back({m, t});
  std::vector<TrialRow> rows(jobs.size());

  // Targets are paired across budgets (seeded by trial only) so that the
  // per-budget means are comparable; optimizer seeds depend on (M, trial).
  auto run_job = [&](std::size_t idx) {
    const Job& job = jobs[idx];
    Rng target_rng(derive_seed(spec.base_seed, kTargetStream, job.trial));
    const ComplexMatrix u = random_unitary(d, target_rng);

    OptimizerConfig cfg = spec.optimizer;
    cfg.m_gates = job.m;
    cfg.seed = derive_seed(spec.base_seed, job.m, job.trial);

    const auto start = std::chrono::steady_clock::now();
    const RunResult res = run(u, cfg);
    const auto stop = std::chrono::steady_clock::now();

    TrialRow& row = rows[idx];
    row.m = job.m;
    row.trial = job.trial;
    row.seed = cfg.seed;
    row.converged_loss = res.final_loss;
    row.sweeps = res.sweeps;
    row.converged = res.converged;
    row.updates = res.trace.size();
    row.wall_seconds = std::chrono::duration<double>(stop - start).count();
  };

  const std::size_t workers =
      std::min(thread_cap(), std::max<std::size_t>(jobs.size(), 1));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= jobs.size()) return;
        run_job(idx);
      }
    });
  }
  for (std::thread& t : pool) t.join();

  std::string csv =
      "kind,m,trial,seed,converged_loss,sweeps_to_converge,converged,updates,"
      "wall_time_seconds,mean_update_seconds\n";
  for (const TrialRow& r : rows) {
    csv += "trial," + std::to_string(r.m) + "," + std::to_string(r.trial) +
           "," + std::to_string(r.seed) + "," + g15(r.converged_loss) + "," +
           std::to_string(r.sweeps) + "," + (r.converged ? "true" : "false") +
           "," + std::to_string(r.updates) + "," + g15(r.wall_seconds) + "," +
           g15(r.updates ? r.wall_seconds / static_cast<double>(r.updates)
                         : 0.0) +
           "\n";
  }
  for (std::size_t m : spec.budgets) {
    double loss_sum = 0.0, sweep_sum = 0.0, wall_sum = 0.0;
    double update_sum = 0.0, converged_sum = 0.0;
    for (const TrialRow& r : rows) {
      if (r.m != m) continue;
      loss_sum += r.converged_loss;
      sweep_sum += static_cast<double>(r.sweeps);
      wall_sum += r.wall_seconds;
      update_sum += static_cast<double>(r.updates);
      converged_sum += r.converged ? 1.0 : 0.0;
    }
    const double n = static_cast<double>(spec.trials);
    csv += "mean," + std::to_string(m) + ",,," + g15(loss_sum / n) + "," +
           g15(sweep_sum / n) + "," + g15(converged_sum / n) + "," +
           g15(update_sum / n) + "," + g15(wall_sum / n) + "," +
           g15(update_sum > 0.0 ? wall_sum / update_sum : 0.0) + "\n";
  }
  write_text_file(output, csv);
  std::printf("wrote %zu trial rows and %zu mean rows to %s\n", rows.size(),
              spec.budgets.size(), output.c_str());
  return 0;
}

// ---------------------------------------------------------------------
// heatmap

int cmd_heatmap(const std::string& input, const std::string& output) {
  write_heatmap_csv(output, read_matrix_csv(input));
  return 0;
}

// ---------------------------------------------------------------------
// random-target

int cmd_random_target(std::size_t n_qubits, std::size_t n_factors,
                      std::uint64_t seed, const std::string& output,
                      const std::string& circuit_out) {
  const auto [u, gen] = random_target(n_qubits, n_factors, seed);
  write_matrix_csv(output, u);
  if (!circuit_out.empty()) write_circuit_json(circuit_out, gen);
  std::printf("wrote %zux%zu target built from %zu gates to %s\n", u.rows(),
              u.cols(), gen.gates.size(), output.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gatetrim: approximate a unitary with a fixed budget of two-level "
      "gates"};
  app.require_subcommand(1);

  // decompose
  auto* dec = app.add_subcommand(
      "decompose", "Exact two-level decomposition of a unitary matrix");
  std::string dec_input, dec_output;
  double dec_tol = 1e-8;
  dec->add_option("--input", dec_input, "Target matrix CSV")->required();
  dec->add_option("--output", dec_output, "Circuit JSON path")->required();
  dec->add_option("--tol", dec_tol, "Accepted unitarity residual");

  // reduce
  auto* red = app.add_subcommand(
      "reduce", "Approximate a unitary with at most M two-level gates");
  std::string red_input, red_output, red_trace, red_config;
  std::string red_selection, red_init, red_unitarize;
  OptimizerConfig red_cfg;
  red->add_option("--input", red_input, "Target matrix CSV")->required();
  red->add_option("--output", red_output, "Circuit JSON path")->required();
  red->add_option("--trace", red_trace,
                  "Trace CSV path (default: output stem + .trace.csv)");
  red->add_option("--config", red_config,
                  "key=value file with optimizer settings");
  red->add_option("--gates", red_cfg.m_gates, "Gate budget M");
  red->add_option("--seed", red_cfg.seed, "Optimizer seed");
  red->add_option("--lambda0", red_cfg.lambda0, "Initial unitarity penalty");
  red->add_option("--mu0", red_cfg.mu0, "Initial companion multiplier");
  red->add_option("--s1", red_cfg.s1, "Penalty shrink factor in (0,1)");
  red->add_option("--s2", red_cfg.s2, "Penalty growth factor in (1,2)");
  red->add_option("--grad-threshold", red_cfg.grad_threshold,
                  "Gradient threshold separating shrink and grow");
  red->add_option("--selection", red_selection,
                  "Working-gate selection: cyclic|random");
  red->add_option("--init", red_init,
                  "Initialization: random_subset|prefix|identity");
  red->add_option("--unitarize", red_unitarize,
                  "penalty_only|project_each_update|project_at_end");
  red->add_option("--tol", red_cfg.tol_rel, "Relative per-sweep loss change");
  red->add_option("--max-sweeps", red_cfg.max_sweeps, "Sweep limit");
  red->add_option("--unitary-tol", red_cfg.unitary_tol,
                  "Accepted target unitarity residual");

  // evaluate
  auto* eva = app.add_subcommand(
      "evaluate", "Apply an operator and a reference to a state and compare");
  std::string eva_input, eva_reference, eva_state = "w3";
  eva->add_option("--input", eva_input, "Circuit JSON or matrix CSV")
      ->required();
  eva->add_option("--reference", eva_reference, "Reference matrix CSV")
      ->required();
  eva->add_option("--state", eva_state,
                  "Input state: w3 or a 2^n x 1 matrix CSV path");

  // experiment
  auto* exp = app.add_subcommand(
      "experiment", "Budget sweeps over seeded random targets");
  std::string exp_spec, exp_output;
  std::string exp_budgets;
  std::size_t exp_trials = 0;
  std::uint64_t exp_seed = 0;
  exp->add_option("--input", exp_spec, "Experiment spec (key=value file)")
      ->required();
  exp->add_option("--output", exp_output, "Report CSV path")->required();
  exp->add_option("--budgets", exp_budgets,
                  "Override budgets, e.g. 5,10,15");
  exp->add_option("--trials", exp_trials, "Override trial count");
  exp->add_option("--seed", exp_seed, "Override base seed");

  // heatmap
  auto* hea = app.add_subcommand(
      "heatmap", "Write entry magnitudes of a matrix as CSV");
  std::string hea_input, hea_output;
  hea->add_option("--input", hea_input, "Matrix CSV")->required();
  hea->add_option("--output", hea_output, "Magnitude CSV path")->required();

  // random-target
  auto* rnd = app.add_subcommand(
      "random-target", "Generate a product of random two-level gates");
  std::size_t rnd_qubits = 3, rnd_factors = 28;
  std::uint64_t rnd_seed = 0;
  std::string rnd_output, rnd_circuit;
  rnd->add_option("--qubits", rnd_qubits, "Number of qubits");
  rnd->add_option("--factors", rnd_factors, "Number of generating gates");
  rnd->add_option("--seed", rnd_seed, "Generator seed");
  rnd->add_option("--output", rnd_output, "Target matrix CSV path")
      ->required();
  rnd->add_option("--circuit", rnd_circuit,
                  "Also write the generating circuit JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(dec)) {
      return cmd_decompose(dec_input, dec_output, dec_tol);
    }
    if (app.got_subcommand(red)) {
      // Flags take precedence over the config file, so apply the file
      // first and then re-apply the parsed flags on top.
      if (!red_config.empty()) {
        OptimizerConfig file_cfg;
        for (const auto& [key, value] : parse_kv_file(red_config)) {
          if (!apply_optimizer_key(file_cfg, key, value)) {
            throw ParseError("reduce config: unknown key \"" + key + "\"");
          }
        }
        OptimizerConfig merged = file_cfg;
        if (red->count("--gates")) merged.m_gates = red_cfg.m_gates;
        if (red->count("--seed")) merged.seed = red_cfg.seed;
        if (red->count("--lambda0")) merged.lambda0 = red_cfg.lambda0;
        if (red->count("--mu0")) merged.mu0 = red_cfg.mu0;
        if (red->count("--s1")) merged.s1 = red_cfg.s1;
        if (red->count("--s2")) merged.s2 = red_cfg.s2;
        if (red->count("--grad-threshold"))
          merged.grad_threshold = red_cfg.grad_threshold;
        if (red->count("--tol")) merged.tol_rel = red_cfg.tol_rel;
        if (red->count("--max-sweeps")) merged.max_sweeps = red_cfg.max_sweeps;
        if (red->count("--unitary-tol"))
          merged.unitary_tol = red_cfg.unitary_tol;
        red_cfg = merged;
      }
      if (!red_selection.empty() &&
          !apply_optimizer_key(red_cfg, "selection", red_selection)) {
        throw ParseError("unreachable");
      }
      if (!red_init.empty() &&
          !apply_optimizer_key(red_cfg, "init", red_init)) {
        throw ParseError("unreachable");
      }
      if (!red_unitarize.empty() &&
          !apply_optimizer_key(red_cfg, "unitarize", red_unitarize)) {
        throw ParseError("unreachable");
      }
      return cmd_reduce(red_input, red_output, red_trace, red_cfg);
    }
    if (app.got_subcommand(eva)) {
      return cmd_evaluate(eva_input, eva_reference, eva_state);
    }
    if (app.got_subcommand(exp)) {
      const std::vector<std::size_t> budgets =
          exp_budgets.empty() ? std::vector<std::size_t>{}
                              : parse_size_list(exp_budgets);
      return cmd_experiment(exp_spec, exp_output, budgets, exp_trials,
                            exp->count("--trials") > 0, exp_seed,
                            exp->count("--seed") > 0);
    }
    if (app.got_subcommand(hea)) {
      return cmd_heatmap(hea_input, hea_output);
    }
    if (app.got_subcommand(rnd)) {
      return cmd_random_target(rnd_qubits, rnd_factors, rnd_seed, rnd_output,
                               rnd_circuit);
    }
    std::fprintf(stderr, "error: no subcommand\n");
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ShapeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const SingularSystemError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
