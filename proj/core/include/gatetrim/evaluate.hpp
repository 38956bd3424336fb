#pragma once

#include <cstddef>
#include <utility>

#include "gatetrim/gates.hpp"
#include "gatetrim/numerics.hpp"

namespace gatetrim {

// Pure state over n qubits.  Amplitudes are not forced to unit norm:
// applying a nearly-unitary approximation legitimately produces
// unnormalized states, and the fidelity pipeline renormalizes explicitly.
struct StateVector {
  std::size_t n_qubits = 0;
  ComplexVector amplitudes;  // length 2^n_qubits
};

// Equal superposition of the n one-hot basis states, amplitude 1/sqrt(n).
// n_qubits >= 2.
StateVector w_state(std::size_t n_qubits = 3);

double state_norm(const StateVector& s);

bool is_normalized(const StateVector& s, double tol = 1e-10);

// Dense matrix-vector application.
StateVector apply(const ComplexMatrix& y, const StateVector& s);

// Circuit application without forming the dense matrix: gates act right
// to left per the product convention, each touching two amplitudes.
StateVector apply(const Circuit& c, const StateVector& s);

// Unit-norm copy plus the original norm.  Zero states are rejected.
std::pair<StateVector, double> normalize(const StateVector& s);

// |<psi|phi>|^2 for normalized states, clipped into [0, 1].  Inputs whose
// norm deviates from 1 by more than 1e-6 are rejected so callers cannot
// silently skip the normalization step.
double fidelity(const StateVector& psi, const StateVector& phi);

}  // namespace gatetrim
