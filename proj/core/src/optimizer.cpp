#include "gatetrim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

namespace gatetrim {

namespace {

// Stream tags keep the init-subset draw and the working-gate selection
// draw independent of each other for the same user seed.
constexpr std::uint64_t kInitStream = 0x696e6974ULL;
constexpr std::uint64_t kSelectStream = 0x73656c65ULL;

std::string show(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Ties between candidate objectives within this margin resolve to the
// lexicographically smaller position.
constexpr double kTieTolerance = 1e-12;

// Reduced data of one positioned subproblem in the free coordinates
// x = (alpha, beta, gamma, delta) laid out as (i,i), (i,j), (j,i), (j,j):
//   f(x) = 0.5 * (const_term + 2 Re(x^H c0) + x^H G x) + lambda ||x||^2
// where G is the Gram matrix of the rank-one residual directions and c0
// their overlap with the fixed residual part.
struct ReducedSystem {
  cxd g[4][4];
  cxd c0[4];
  double const_term;
};

ReducedSystem build_reduced(const BlockQpWorkspace& ws, std::size_t i,
                            std::size_t j) {
  const std::size_t rr[4] = {i, i, j, j};
  const std::size_t cc[4] = {i, j, i, j};
  ReducedSystem sys;
  for (int t = 0; t < 4; ++t) {
    for (int s = 0; s < 4; ++s) {
      // <a_r b_c^T, a_r' b_c'^T> factors into column and row Grams.
      sys.g[t][s] = ws.ga(rr[t], rr[s]) * ws.hb(cc[s], cc[t]);
    }
    sys.c0[t] = ws.w(rr[t], cc[t]) - ws.ga(rr[t], i) * ws.hb(i, cc[t]) -
                ws.ga(rr[t], j) * ws.hb(j, cc[t]);
  }
  sys.const_term =
      ws.f_norm2 - 2.0 * (ws.w(i, i) + ws.w(j, j)).real() +
      (ws.ga(i, i) * ws.hb(i, i)).real() + (ws.ga(j, j) * ws.hb(j, j)).real() +
      2.0 * (ws.ga(i, j) * ws.hb(j, i)).real();
  return sys;
}

void block_to_coords(const Block2& x, cxd out[4]) {
  out[0] = x.a;
  out[1] = x.b;
  out[2] = x.c;
  out[3] = x.d;
}

double objective_at(const ReducedSystem& sys, const cxd x[4], double lambda) {
  cxd lin(0.0, 0.0);
  cxd quad(0.0, 0.0);
  double nrm2 = 0.0;
  for (int t = 0; t < 4; ++t) {
    lin += std::conj(x[t]) * sys.c0[t];
    nrm2 += std::norm(x[t]);
    for (int s = 0; s < 4; ++s) quad += std::conj(x[t]) * sys.g[t][s] * x[s];
  }
  return 0.5 * (sys.const_term + 2.0 * lin.real() + quad.real()) +
         lambda * nrm2;
}

double grad_norm_at(const ReducedSystem& sys, const cxd x[4], double lambda) {
  // Norm of the 8 real partial derivatives; in complex form this is
  // ||G x + c0 + 2 lambda x||_2, zero exactly at the normal-equation
  // solution.
  double acc = 0.0;
  for (int t = 0; t < 4; ++t) {
    cxd g_t = sys.c0[t] + 2.0 * lambda * x[t];
    for (int s = 0; s < 4; ++s) g_t += sys.g[t][s] * x[s];
    acc += std::norm(g_t);
  }
  return std::sqrt(acc);
}

std::pair<std::size_t, std::size_t> first_free_position(
    const std::set<std::pair<std::size_t, std::size_t>>& used,
    std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      if (!used.count({i, j})) return {i, j};
    }
  }
  throw ConfigError("no free two-level position left");
}

}  // namespace

OptimizerState::OptimizerState(ComplexMatrix target_, Circuit circuit_,
                               const OptimizerConfig& cfg)
    : target(std::move(target_)),
      circuit(std::move(circuit_)),
      lambda(cfg.lambda0),
      mu(cfg.mu0),
      select_rng(derive_seed(cfg.seed, kSelectStream, 0)) {}

double loss(const ComplexMatrix& y, const ComplexMatrix& u) {
  if (!y.same_shape(u)) {
    throw ShapeError("loss: shapes differ");
  }
  const double nrm = frobenius_norm(sub(y, u));
  return 0.5 * nrm * nrm;
}

void validate_config(const OptimizerConfig& cfg, std::size_t dim) {
  const std::size_t max_positions = dim * (dim - 1) / 2;
  if (cfg.m_gates < 1 || cfg.m_gates > max_positions) {
    throw ConfigError("m_gates " + std::to_string(cfg.m_gates) +
                      " outside [1, " + std::to_string(max_positions) +
                      "] for dim " + std::to_string(dim));
  }
  if (!(cfg.s1 > 0.0 && cfg.s1 < 1.0)) {
    throw ConfigError("s1 must lie in (0, 1)");
  }
  if (!(cfg.s2 > 1.0 && cfg.s2 < 2.0)) {
    throw ConfigError("s2 must lie in (1, 2)");
  }
  if (!(cfg.lambda_min >= 0.0) || !(cfg.lambda_max >= cfg.lambda_min)) {
    throw ConfigError("lambda bounds must satisfy 0 <= lambda_min <= "
                      "lambda_max");
  }
  if (!(cfg.lambda0 >= cfg.lambda_min && cfg.lambda0 <= cfg.lambda_max)) {
    throw ConfigError("lambda0 must lie in [lambda_min, lambda_max]");
  }
  if (!(cfg.grad_threshold >= 0.0)) {
    throw ConfigError("grad_threshold must be nonnegative");
  }
  if (!(cfg.tol_rel >= 0.0)) {
    throw ConfigError("tol_rel must be nonnegative");
  }
  if (cfg.max_sweeps < 1) {
    throw ConfigError("max_sweeps must be at least 1");
  }
  if (!(cfg.unitary_tol > 0.0)) {
    throw ConfigError("unitary_tol must be positive");
  }
}

Circuit init_circuit(const ComplexMatrix& u, const OptimizerConfig& cfg) {
  const std::size_t d = u.rows();
  if (u.cols() != d || !is_power_of_two(d) || d < 2) {
    throw ShapeError("init_circuit: target is " + std::to_string(u.rows()) +
                     "x" + std::to_string(u.cols()) +
                     ", expected square power-of-two dimension");
  }
  validate_config(cfg, d);

  Circuit c;
  c.dim = d;
  if (cfg.init != InitStrategy::identity) {
    const Circuit base = two_level_decompose(u, cfg.unitary_tol);
    if (base.gates.size() >= cfg.m_gates) {
      const TruncateStrategy strat = (cfg.init == InitStrategy::prefix)
                                         ? TruncateStrategy::prefix
                                         : TruncateStrategy::random_subset;
      return truncate_circuit(base, cfg.m_gates, strat,
                              derive_seed(cfg.seed, kInitStream, 0));
    }
    c = base;
  }

  // Identity gates are invisible in the product, so padding up to M keeps
  // the represented matrix while establishing M distinct positions.
  std::set<std::pair<std::size_t, std::size_t>> used;
  for (const TwoLevelGate& g : c.gates) used.insert({g.i, g.j});
  while (c.gates.size() < cfg.m_gates) {
    const auto pos = first_free_position(used, d);
    used.insert(pos);
    c.gates.push_back(
        TwoLevelGate{d, pos.first, pos.second, Block2::identity()});
  }
  return c;
}

std::size_t select_working_gate(OptimizerState& state,
                                const OptimizerConfig& cfg) {
  const std::size_t m = state.circuit.gates.size();
  if (m == 0) throw ConfigError("select_working_gate: empty circuit");
  if (cfg.selection == Selection::cyclic) return state.iteration % m;
  return static_cast<std::size_t>(state.select_rng.uniform_index(m));
}

std::pair<ComplexMatrix, ComplexMatrix> compute_context(
    const OptimizerState& state, std::size_t w) {
  const std::size_t m = state.circuit.gates.size();
  if (w >= m) throw ConfigError("compute_context: gate index out of range");
  const std::size_t d = state.circuit.dim;
  ComplexMatrix a = ComplexMatrix::identity(d);
  for (std::size_t k = 0; k < w; ++k) apply_right(state.circuit.gates[k], a);
  ComplexMatrix b = ComplexMatrix::identity(d);
  for (std::size_t k = w + 1; k < m; ++k)
    apply_right(state.circuit.gates[k], b);
  return {std::move(a), std::move(b)};
}

std::vector<std::pair<std::size_t, std::size_t>> candidate_positions(
    const OptimizerState& state, std::size_t w) {
  const std::size_t d = state.circuit.dim;
  std::set<std::pair<std::size_t, std::size_t>> taken;
  for (std::size_t k = 0; k < state.circuit.gates.size(); ++k) {
    if (k == w) continue;
    taken.insert({state.circuit.gates[k].i, state.circuit.gates[k].j});
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (!taken.count({i, j})) out.push_back({i, j});
    }
  }
  return out;
}

BlockQpWorkspace make_qp_workspace(const ComplexMatrix& a,
                                   const ComplexMatrix& b,
                                   const ComplexMatrix& u) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || !a.same_shape(b) ||
      !a.same_shape(u)) {
    throw ShapeError("make_qp_workspace: A, B, U must be square and equal "
                     "in shape");
  }
  BlockQpWorkspace ws;
  const ComplexMatrix a_h = adjoint(a);
  const ComplexMatrix b_h = adjoint(b);
  ws.ga = matmul(a_h, a);
  ws.hb = matmul(b, b_h);
  const ComplexMatrix f = sub(matmul(a, b), u);
  ws.w = matmul(matmul(a_h, f), b_h);
  const double fn = frobenius_norm(f);
  ws.f_norm2 = fn * fn;
  return ws;
}

SubproblemResult solve_block_qp_ws(const BlockQpWorkspace& ws, std::size_t i,
                                   std::size_t j, double lambda,
                                   double /*mu*/) {
  if (!(i < j && j < ws.ga.rows())) {
    throw DomainError("solve_block_qp: invalid position");
  }
  const ReducedSystem sys = build_reduced(ws, i, j);
  ComplexMatrix lhs(4, 4);
  ComplexVector rhs(4);
  for (int t = 0; t < 4; ++t) {
    for (int s = 0; s < 4; ++s) lhs(t, s) = sys.g[t][s];
    lhs(t, t) += 2.0 * lambda;
    rhs[t] = -sys.c0[t];
  }
  const ComplexVector x = solve_linear(lhs, rhs);
  const cxd coords[4] = {x[0], x[1], x[2], x[3]};
  SubproblemResult res;
  res.i = i;
  res.j = j;
  res.block = Block2{x[0], x[1], x[2], x[3]};
  res.objective = objective_at(sys, coords, lambda);
  res.kkt_multiplier_norm = 0.0;
  return res;
}

SubproblemResult solve_block_qp(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ComplexMatrix& u, std::size_t i,
                                std::size_t j, double lambda, double mu) {
  return solve_block_qp_ws(make_qp_workspace(a, b, u), i, j, lambda, mu);
}

double qp_objective(const BlockQpWorkspace& ws, std::size_t i, std::size_t j,
                    const Block2& x, double lambda) {
  const ReducedSystem sys = build_reduced(ws, i, j);
  cxd coords[4];
  block_to_coords(x, coords);
  return objective_at(sys, coords, lambda);
}

double qp_grad_norm(const BlockQpWorkspace& ws, std::size_t i, std::size_t j,
                    const Block2& x, double lambda) {
  const ReducedSystem sys = build_reduced(ws, i, j);
  cxd coords[4];
  block_to_coords(x, coords);
  return grad_norm_at(sys, coords, lambda);
}

double grad_norm(const OptimizerState& state, std::size_t w) {
  const auto [a, b] = compute_context(state, w);
  const BlockQpWorkspace ws = make_qp_workspace(a, b, state.target);
  const TwoLevelGate& g = state.circuit.gates[w];
  return qp_grad_norm(ws, g.i, g.j, g.block, state.lambda);
}

TraceRecord update_gate(OptimizerState& state, std::size_t w,
                        const OptimizerConfig& cfg) {
  const std::size_t m = state.circuit.gates.size();
  if (w >= m) throw ConfigError("update_gate: gate index out of range");
  const auto [a, b] = compute_context(state, w);
  const BlockQpWorkspace ws = make_qp_workspace(a, b, state.target);

  SubproblemResult best;
  bool have = false;
  double last_pivot = 0.0;
  for (const auto& [i, j] : candidate_positions(state, w)) {
    SubproblemResult r;
    try {
      r = solve_block_qp_ws(ws, i, j, state.lambda, state.mu);
    } catch (const SingularSystemError& e) {
      ++state.singular_skips;
      last_pivot = e.pivot_magnitude();
      continue;
    }
    // Lexicographic iteration order makes "strictly better beyond the tie
    // margin" reproduce the smallest-position tie-break.
    if (!have || r.objective < best.objective - kTieTolerance) {
      best = r;
      have = true;
    }
  }
  if (!have) {
    throw SingularSystemError(
        "update_gate: every candidate subproblem was singular", last_pivot);
  }

  Block2 stored = best.block;
  if (cfg.unitarize == UnitarizeMode::project_each_update) {
    stored = nearest_unitary_2x2(stored);
  }
  state.circuit.gates[w] =
      TwoLevelGate{state.circuit.dim, best.i, best.j, stored};
  ++state.iteration;

  TraceRecord rec;
  rec.iteration = state.iteration;
  rec.working_index = w + 1;
  rec.i = best.i;
  rec.j = best.j;
  rec.loss = loss(circuit_matrix(state.circuit), state.target);
  rec.penalized_objective = best.objective;
  rec.grad_norm = qp_grad_norm(ws, best.i, best.j, stored, state.lambda);
  rec.lambda = state.lambda;
  rec.mu = state.mu;
  rec.unitarity_residual_of_gate = unitarity_error(stored);
  state.trace.push_back(rec);
  return rec;
}

std::pair<double, double> adapt_penalties(double lambda, double mu,
                                          double grad_value,
                                          const OptimizerConfig& cfg) {
  const double factor = (grad_value > cfg.grad_threshold) ? cfg.s1 : cfg.s2;
  double next_lambda =
      std::clamp(lambda * factor, cfg.lambda_min, cfg.lambda_max);
  return {next_lambda, mu * factor};
}

RunResult run(const ComplexMatrix& u, const OptimizerConfig& cfg) {
  const std::size_t d = u.rows();
  if (u.cols() != d || !is_power_of_two(d) || d < 2) {
    throw ShapeError("run: target is " + std::to_string(u.rows()) + "x" +
                     std::to_string(u.cols()) +
                     ", expected square power-of-two dimension");
  }
  validate_config(cfg, d);
  const double residual = unitarity_error(u);
  if (!(residual <= cfg.unitary_tol)) {
    throw DomainError("run: target unitarity residual " + show(residual) +
                      " exceeds tolerance " + show(cfg.unitary_tol));
  }

  OptimizerState state(u, init_circuit(u, cfg), cfg);
  double prev_loss = loss(circuit_matrix(state.circuit), u);
  bool converged = false;
  while (state.sweep < cfg.max_sweeps && !converged) {
    for (std::size_t k = 0; k < cfg.m_gates; ++k) {
      const std::size_t w = select_working_gate(state, cfg);
      const TraceRecord rec = update_gate(state, w, cfg);
      const auto [next_lambda, next_mu] =
          adapt_penalties(state.lambda, state.mu, rec.grad_norm, cfg);
      state.lambda = next_lambda;
      state.mu = next_mu;
    }
    ++state.sweep;
    const double now_loss = state.trace.back().loss;
    converged = std::abs(now_loss - prev_loss) <=
                cfg.tol_rel * std::max(1.0, std::abs(prev_loss));
    prev_loss = now_loss;
  }

  if (cfg.unitarize == UnitarizeMode::project_at_end) {
    for (TwoLevelGate& g : state.circuit.gates) {
      g.block = nearest_unitary_2x2(g.block);
    }
  }

  RunResult res;
  res.circuit = state.circuit;
  res.trace = std::move(state.trace);
  res.final_loss = loss(circuit_matrix(res.circuit), u);
  res.sweeps = state.sweep;
  res.converged = converged;
  res.singular_skips = state.singular_skips;
  return res;
}

}  // namespace gatetrim
