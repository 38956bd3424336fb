#pragma once

#include <cstdint>
#include <utility>

#include "gatetrim/gates.hpp"
#include "gatetrim/numerics.hpp"

namespace gatetrim {

// Exact decomposition of a unitary into at most d(d-1)/2 two-level gates.
//
// Column-by-column elimination: for column c, two-level rotations acting on
// row planes (c, k), k = d-1 down to c+1, zero the below-diagonal entries
// and leave a nonnegative real diagonal.  What remains is a diagonal of
// phases; each phase is folded into the last emitted gate touching its
// index, or into a dedicated diagonal gate when no emitted gate does.
// The returned circuit reconstructs u to roughly d^2 * machine epsilon
// and uses pairwise-distinct positions.
//
// tol bounds the accepted input unitarity residual.  Non-power-of-two
// dimensions raise ShapeError; residuals beyond tol raise DomainError.
Circuit two_level_decompose(const ComplexMatrix& u, double tol = 1e-8);

// Product of n_factors Haar-random 2x2 blocks embedded at distinct random
// positions; returns the dense product and the generating circuit.
// Deterministic per seed.  n_factors must lie in [1, d(d-1)/2].
std::pair<ComplexMatrix, Circuit> random_target(std::size_t n_qubits,
                                                std::size_t n_factors,
                                                std::uint64_t seed);

enum class TruncateStrategy { random_subset, prefix };

// Sub-circuit of m gates preserving the original relative order.
// random_subset draws without replacement, deterministic per seed.
Circuit truncate_circuit(const Circuit& c, std::size_t m,
                         TruncateStrategy strategy, std::uint64_t seed);

}  // namespace gatetrim
