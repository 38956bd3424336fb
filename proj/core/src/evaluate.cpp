#include "gatetrim/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gatetrim {

StateVector w_state(std::size_t n_qubits) {
  if (n_qubits < 2) {
    throw DomainError("w_state: need at least 2 qubits");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(dim, cxd(0.0, 0.0));
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_qubits));
  for (std::size_t q = 0; q < n_qubits; ++q) {
    s.amplitudes[std::size_t{1} << q] = cxd(amp, 0.0);
  }
  return s;
}

double state_norm(const StateVector& s) {
  double acc = 0.0;
  for (const cxd& a : s.amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

bool is_normalized(const StateVector& s, double tol) {
  return std::abs(state_norm(s) - 1.0) < tol;
}

StateVector apply(const ComplexMatrix& y, const StateVector& s) {
  if (y.cols() != s.amplitudes.size() || y.rows() != y.cols()) {
    throw ShapeError("apply: matrix " + std::to_string(y.rows()) + "x" +
                     std::to_string(y.cols()) + " does not act on a state of " +
                     std::to_string(s.amplitudes.size()) + " amplitudes");
  }
  StateVector out;
  out.n_qubits = s.n_qubits;
  out.amplitudes.assign(s.amplitudes.size(), cxd(0.0, 0.0));
  for (std::size_t r = 0; r < y.rows(); ++r) {
    cxd acc(0.0, 0.0);
    const cxd* row = y.row(r);
    for (std::size_t c = 0; c < y.cols(); ++c) acc += row[c] * s.amplitudes[c];
    out.amplitudes[r] = acc;
  }
  return out;
}

StateVector apply(const Circuit& c, const StateVector& s) {
  if (c.dim != s.amplitudes.size()) {
    throw ShapeError("apply: circuit dimension " + std::to_string(c.dim) +
                     " does not match state of " +
                     std::to_string(s.amplitudes.size()) + " amplitudes");
  }
  StateVector out = s;
  // matrix(c) * s = embed(g_0) * ( ... * (embed(g_{M-1}) * s)), so the
  // list is walked back to front.
  for (std::size_t k = c.gates.size(); k-- > 0;) {
    const TwoLevelGate& g = c.gates[k];
    validate_gate(g);
    const cxd vi = out.amplitudes[g.i];
    const cxd vj = out.amplitudes[g.j];
    out.amplitudes[g.i] = g.block.a * vi + g.block.b * vj;
    out.amplitudes[g.j] = g.block.c * vi + g.block.d * vj;
  }
  return out;
}

std::pair<StateVector, double> normalize(const StateVector& s) {
  const double nrm = state_norm(s);
  if (!(nrm > 0.0)) {
    throw DomainError("normalize: zero state has no direction");
  }
  StateVector out = s;
  for (cxd& a : out.amplitudes) a /= nrm;
  return {out, nrm};
}

double fidelity(const StateVector& psi, const StateVector& phi) {
  if (psi.amplitudes.size() != phi.amplitudes.size()) {
    throw ShapeError("fidelity: state dimensions differ");
  }
  if (!is_normalized(psi, 1e-6) || !is_normalized(phi, 1e-6)) {
    throw DomainError("fidelity: states must be normalized first");
  }
  cxd inner(0.0, 0.0);
  for (std::size_t k = 0; k < psi.amplitudes.size(); ++k) {
    inner += std::conj(psi.amplitudes[k]) * phi.amplitudes[k];
  }
  return std::clamp(std::norm(inner), 0.0, 1.0);
}

}  // namespace gatetrim
