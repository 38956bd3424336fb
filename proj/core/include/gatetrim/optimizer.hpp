#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gatetrim/decompose.hpp"
#include "gatetrim/gates.hpp"
#include "gatetrim/numerics.hpp"
#include "gatetrim/rng.hpp"

namespace gatetrim {

enum class Selection { cyclic, random };
enum class InitStrategy { random_subset, prefix, identity };
enum class UnitarizeMode { penalty_only, project_each_update, project_at_end };

// Knobs of the block-descent optimizer.  Defaults are the documented
// stable-descent settings; everything is overridable from the CLI and
// from key=value config files.
struct OptimizerConfig {
  std::size_t m_gates = 1;           // gate budget M
  double lambda0 = 0.1;              // initial unitarity penalty weight
  double mu0 = 0.1;                  // companion multiplier, tracked only
  double s1 = 0.5;                   // shrink factor, must be in (0, 1)
  double s2 = 1.5;                   // growth factor, must be in (1, 2)
  double grad_threshold = 1e-3;      // tau separating large/small gradients
  double lambda_min = 1e-6;
  double lambda_max = 1e3;
  Selection selection = Selection::cyclic;
  InitStrategy init = InitStrategy::random_subset;
  UnitarizeMode unitarize = UnitarizeMode::penalty_only;
  double tol_rel = 1e-8;             // per-sweep relative loss change
  std::size_t max_sweeps = 500;
  std::uint64_t seed = 0;
  double unitary_tol = 1e-8;         // accepted target unitarity residual
};

// One row of the optimization trace.  penalized_objective is the optimum
// of the selected subproblem (before any projection); grad_norm and
// unitarity_residual_of_gate describe the block actually stored.
struct TraceRecord {
  std::size_t iteration = 0;       // 1-based count of completed updates
  std::size_t working_index = 0;   // 1-based index of the updated gate
  std::size_t i = 0;               // chosen position, 0-based
  std::size_t j = 0;
  double loss = 0.0;               // 0.5 * ||matrix(circuit) - U||_F^2
  double penalized_objective = 0.0;
  double grad_norm = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double unitarity_residual_of_gate = 0.0;
};

// Solution of one positioned subproblem.
struct SubproblemResult {
  std::size_t i = 0;  // 0-based
  std::size_t j = 0;
  Block2 block;
  double objective = 0.0;
  // Norm of the equality-constraint multiplier.  The reduced solve
  // eliminates the constraint, so this is 0 except when produced by the
  // full-system test oracle.
  double kkt_multiplier_norm = 0.0;
};

struct OptimizerState {
  ComplexMatrix target;
  Circuit circuit;
  double lambda = 0.0;
  double mu = 0.0;
  std::size_t sweep = 0;           // completed sweeps
  std::size_t iteration = 0;       // completed gate updates
  std::size_t singular_skips = 0;  // degenerate candidates skipped
  std::vector<TraceRecord> trace;
  Rng select_rng{0};

  OptimizerState(ComplexMatrix target_, Circuit circuit_,
                 const OptimizerConfig& cfg);
};

struct RunResult {
  Circuit circuit;
  std::vector<TraceRecord> trace;
  double final_loss = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
  std::size_t singular_skips = 0;
};

// 0.5 * ||y - u||_F^2.
double loss(const ComplexMatrix& y, const ComplexMatrix& u);

// Throws ConfigError when cfg violates its invariants for dimension d.
void validate_config(const OptimizerConfig& cfg, std::size_t dim);

// Starting circuit of exactly M distinct-position gates.
//   random_subset / prefix: gates taken from two_level_decompose(u);
//     when the exact decomposition has fewer than M gates, identity
//     gates at the lexicographically first unused positions pad it.
//   identity: identity blocks at the M lexicographically first positions.
Circuit init_circuit(const ComplexMatrix& u, const OptimizerConfig& cfg);

// 0-based index of the next working gate.  Cyclic selection visits
// iteration mod M; random selection draws uniformly from the
// config-seeded stream in state.select_rng.
std::size_t select_working_gate(OptimizerState& state,
                                const OptimizerConfig& cfg);

// Frozen prefix A = embed(x_0)...embed(x_{w-1}) and suffix
// B = embed(x_{w+1})...embed(x_{M-1}); empty products are identity.
// Built by two-level column updates, O(M d) work.
std::pair<ComplexMatrix, ComplexMatrix> compute_context(
    const OptimizerState& state, std::size_t w);

// All (i, j), i < j, except positions occupied by gates other than w;
// gate w's own position is included.  Lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> candidate_positions(
    const OptimizerState& state, std::size_t w);

// Per-update precomputation making each positioned subproblem O(1):
// with F = A B - U, the residual of X = I - P + E(x) is affine in the
// four free block entries, and only Gram data of A columns and B rows
// enters the normal equations.
struct BlockQpWorkspace {
  ComplexMatrix ga;       // A^dagger A
  ComplexMatrix hb;       // B B^dagger
  ComplexMatrix w;        // A^dagger (A B - U) B^dagger
  double f_norm2 = 0.0;   // ||A B - U||_F^2
};

BlockQpWorkspace make_qp_workspace(const ComplexMatrix& a,
                                   const ComplexMatrix& b,
                                   const ComplexMatrix& u);

// Minimizer of 0.5 * ||A X B - U||_F^2 + lambda * ||x_free||^2 over
// matrices X equal to the identity outside the 2x2 block at (i, j),
// where x_free = (alpha, beta, gamma, delta).  Solved by the reduced
// 4x4 normal equations (G + 2 lambda I) x = -c0 with conjugate-linear
// (Wirtinger) stationarity.  mu does not enter the reduced solve; the
// parameter is kept so call sites mirror the adaptation schedule.
SubproblemResult solve_block_qp_ws(const BlockQpWorkspace& ws, std::size_t i,
                                   std::size_t j, double lambda, double mu);

// Convenience form that builds the workspace first.
SubproblemResult solve_block_qp(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ComplexMatrix& u, std::size_t i,
                                std::size_t j, double lambda, double mu);

// Penalized objective at an arbitrary block x placed at (i, j).
double qp_objective(const BlockQpWorkspace& ws, std::size_t i, std::size_t j,
                    const Block2& x, double lambda);

// Euclidean norm of the objective gradient with respect to the four free
// entries (as 8 real coordinates), evaluated at block x.  Equals
// ||G x + c0 + 2 lambda x||_2 and vanishes at the subproblem solution.
double qp_grad_norm(const BlockQpWorkspace& ws, std::size_t i, std::size_t j,
                    const Block2& x, double lambda);

// Gradient norm for gate w of the current circuit at its stored block.
double grad_norm(const OptimizerState& state, std::size_t w);

// Solves the subproblem at every candidate position, installs the global
// best (ties within 1e-12 break to the lexicographically smallest
// position), optionally projects the block to the nearest unitary, and
// appends a TraceRecord.  Singular candidates are skipped unless every
// candidate fails.
TraceRecord update_gate(OptimizerState& state, std::size_t w,
                        const OptimizerConfig& cfg);

// Multiplicative penalty adaptation: gradients above tau shrink both
// factors by s1, gradients at or below tau grow them by s2; lambda is
// clamped into [lambda_min, lambda_max], mu is left unclamped.
std::pair<double, double> adapt_penalties(double lambda, double mu,
                                          double grad_value,
                                          const OptimizerConfig& cfg);

// Full optimization loop: select, contextualize, update, adapt, sweep by
// sweep until the loss change over a sweep falls below
// tol_rel * max(1, previous loss) or max_sweeps is reached.  In
// project_at_end mode every block is polar-projected once after the
// loop.  Deterministic per (u, cfg).
RunResult run(const ComplexMatrix& u, const OptimizerConfig& cfg);

}  // namespace gatetrim
