#pragma once

#include <cstdint>

#include "gatetrim/gates.hpp"
#include "gatetrim/numerics.hpp"
#include "gatetrim/rng.hpp"

namespace gatetrim::testing {

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols,
                                   Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = cxd(rng.gaussian(), rng.gaussian());
  return m;
}

inline double mat_dist(const ComplexMatrix& x, const ComplexMatrix& y) {
  return frobenius_norm(sub(x, y));
}

inline double vec_dist(const ComplexVector& x, const ComplexVector& y) {
  double acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) acc += std::norm(x[k] - y[k]);
  return std::sqrt(acc);
}

inline Block2 random_unitary_block(Rng& rng) {
  const ComplexMatrix q = random_unitary(2, rng);
  return Block2{q(0, 0), q(0, 1), q(1, 0), q(1, 1)};
}

inline double block_dist(const Block2& x, const Block2& y) {
  return std::sqrt(std::norm(x.a - y.a) + std::norm(x.b - y.b) +
                   std::norm(x.c - y.c) + std::norm(x.d - y.d));
}

// Reference d^3 product, deliberately naive so library matmul has an
// independent check.
inline ComplexMatrix matmul_naive(const ComplexMatrix& x,
                                  const ComplexMatrix& y) {
  ComplexMatrix out(x.rows(), y.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < y.cols(); ++c) {
      cxd acc(0.0, 0.0);
      for (std::size_t k = 0; k < x.cols(); ++k) acc += x(r, k) * y(k, c);
      out(r, c) = acc;
    }
  return out;
}

}  // namespace gatetrim::testing
