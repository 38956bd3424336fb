#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gatetrim/numerics.hpp"

namespace gatetrim {

// A d x d unitary equal to the identity except on the 2x2 block at
// rows/columns (i, j).  Indices are stored 0-based; every external
// surface (files, CLI, transition labels) is 1-based.
struct TwoLevelGate {
  std::size_t dim = 2;
  std::size_t i = 0;  // 0-based, i < j < dim
  std::size_t j = 1;
  Block2 block;
};

// ZYZ angles plus global phase:
//   compose = e^{i alpha} Rz(theta) Ry(phi) Rz(lambda)
//   Rz(t) = diag(e^{-it/2}, e^{it/2})
//   Ry(p) = [[cos(p/2), -sin(p/2)], [sin(p/2), cos(p/2)]]
// Canonical ranges: phi in [0, pi]; theta, lambda, alpha in (-pi, pi].
struct EulerAngles {
  double alpha = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
};

// Ordered gate list over a common dimension.  Product convention:
//   matrix(c) = embed(g_0) * embed(g_1) * ... * embed(g_{M-1})
// so the last gate in the list acts first on a state.
struct Circuit {
  std::size_t dim = 0;
  std::vector<TwoLevelGate> gates;
};

// Basis-state labels of the amplitude transition a gate at (i, j)
// couples: from |j-1> to |i-1> in 1-based position terms.
struct Transition {
  std::string from;
  std::string to;
};

// Throws DomainError unless dim is a power of two >= 2 and i < j < dim.
void validate_gate(const TwoLevelGate& g);

bool is_power_of_two(std::size_t n);
std::size_t qubit_count(std::size_t dim);  // log2(dim); dim must be 2^n

// Dense d x d form of the gate.
ComplexMatrix embed(const TwoLevelGate& g);

// m <- embed(g) * m, touching only rows i and j.  m.rows() must equal g.dim.
void apply_left(const TwoLevelGate& g, ComplexMatrix& m);

// m <- m * embed(g), touching only columns i and j.  m.cols() must equal g.dim.
void apply_right(const TwoLevelGate& g, ComplexMatrix& m);

// Dense matrix of the whole circuit under the product convention.
ComplexMatrix circuit_matrix(const Circuit& c);

Block2 euler_compose(const EulerAngles& a);

// Inverse of euler_compose for near-unitary blocks (residual <= tol).
// At gimbal lock (phi near 0 or pi) lambda is canonicalized to 0.
EulerAngles euler_decompose(const Block2& b, double tol = 1e-8);

// Appendix-style labeling: 1-based positions (i, j) with i < j <= 2^n map
// to the n-bit big-endian labels of basis states j-1 (from) and i-1 (to).
Transition position_to_transition(std::size_t i, std::size_t j,
                                  std::size_t n_qubits);

// Wraps an angle into (-pi, pi].
double wrap_angle(double x);

}  // namespace gatetrim
