#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gatetrim/errors.hpp"
#include "gatetrim/rng.hpp"

namespace gatetrim {

using cxd = std::complex<double>;
using ComplexVector = std::vector<cxd>;

// Dense row-major complex matrix.  Sizes stay small (dim <= 32 for the
// workloads this library targets), so everything is plain O(n^3) dense
// arithmetic with no blocking or external BLAS.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cxd(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = cxd(1.0, 0.0);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cxd& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cxd& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  // Raw row access; two-level row/column updates touch entire rows.
  cxd* row(std::size_t r) { return data_.data() + r * cols_; }
  const cxd* row(std::size_t r) const { return data_.data() + r * cols_; }

  bool same_shape(const ComplexMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cxd> data_;
};

// 2x2 complex block [[a, b], [c, d]], the unit every two-level gate and
// every subproblem solution is expressed in.
struct Block2 {
  cxd a{1.0, 0.0};
  cxd b{0.0, 0.0};
  cxd c{0.0, 0.0};
  cxd d{1.0, 0.0};

  static Block2 identity() { return Block2{}; }
};

inline Block2 block_mul(const Block2& x, const Block2& y) {
  return Block2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline Block2 block_adjoint(const Block2& x) {
  return Block2{std::conj(x.a), std::conj(x.c), std::conj(x.b),
                std::conj(x.d)};
}

inline cxd block_det(const Block2& x) { return x.a * x.d - x.b * x.c; }

// Matrix product; shapes must chain.
ComplexMatrix matmul(const ComplexMatrix& x, const ComplexMatrix& y);

// Entrywise sum / difference; shapes must match.
ComplexMatrix add(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix sub(const ComplexMatrix& x, const ComplexMatrix& y);

// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);

// sqrt(sum |m_ij|^2).
double frobenius_norm(const ComplexMatrix& m);

// <x, y> = sum conj(x_ij) y_ij; shapes must match.
cxd frobenius_inner(const ComplexMatrix& x, const ComplexMatrix& y);

double max_abs_entry(const ComplexMatrix& m);

// ||m^dagger m - I||_F.  Square matrices only.
double unitarity_error(const ComplexMatrix& m);
double unitarity_error(const Block2& b);

// Kronecker product; (x kron y) has block structure x_ij * y.
ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);

// Row-stacking vectorization: vec(m)[r * cols + c] = m(r, c).  With this
// convention vec(A X B) = (A kron B^T) vec(X) holds exactly, which is the
// identity the full-size subproblem oracle relies on.
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix devectorize(const ComplexVector& v, std::size_t rows,
                          std::size_t cols);

// Gaussian elimination with partial pivoting.  A pivot of magnitude at or
// below 1e-13 * max_abs_entry(a) raises SingularSystemError carrying the
// pivot magnitude.  a must be square with a.rows() == b.size().
ComplexVector solve_linear(ComplexMatrix a, ComplexVector b);

// Unitary polar factor of an invertible 2x2 block, computed by Newton
// iteration W <- (W + (W^dagger)^{-1}) / 2 to residual < 1e-14.
// A singular block raises DomainError.
Block2 nearest_unitary_2x2(const Block2& blk);

// Haar-distributed unitary: complex Ginibre sample followed by two passes
// of modified Gram-Schmidt on columns.  MGS yields the QR factor with a
// real positive R diagonal, which is exactly the gauge fixing that makes
// Q Haar.  Deterministic per rng stream.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

}  // namespace gatetrim
