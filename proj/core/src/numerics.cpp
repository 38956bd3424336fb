#include "gatetrim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gatetrim {

namespace {

void require_same_shape(const ComplexMatrix& x, const ComplexMatrix& y,
                        const char* op) {
  if (!x.same_shape(y)) {
    throw ShapeError(std::string(op) + ": shape mismatch " +
                     std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                     " vs " + std::to_string(y.rows()) + "x" +
                     std::to_string(y.cols()));
  }
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.cols() != y.rows()) {
    throw ShapeError("matmul: inner dimensions " + std::to_string(x.cols()) +
                     " and " + std::to_string(y.rows()) + " differ");
  }
  ComplexMatrix out(x.rows(), y.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const cxd* xr = x.row(r);
    cxd* or_ = out.row(r);
    for (std::size_t k = 0; k < x.cols(); ++k) {
      const cxd xv = xr[k];
      if (xv == cxd(0.0, 0.0)) continue;
      const cxd* yk = y.row(k);
      for (std::size_t c = 0; c < y.cols(); ++c) or_[c] += xv * yk[c];
    }
  }
  return out;
}

ComplexMatrix add(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_shape(x, y, "add");
  ComplexMatrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = x(r, c) + y(r, c);
  return out;
}

ComplexMatrix sub(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_shape(x, y, "sub");
  ComplexMatrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = x(r, c) - y(r, c);
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
  return out;
}

double frobenius_norm(const ComplexMatrix& m) {
  double acc = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) acc += std::norm(m(r, c));
  return std::sqrt(acc);
}

cxd frobenius_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_shape(x, y, "frobenius_inner");
  cxd acc(0.0, 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c)
      acc += std::conj(x(r, c)) * y(r, c);
  return acc;
}

double max_abs_entry(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      best = std::max(best, std::abs(m(r, c)));
  return best;
}

double unitarity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ShapeError("unitarity_error: matrix is " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + ", expected square");
  }
  const ComplexMatrix gram = matmul(adjoint(m), m);
  double acc = 0.0;
  for (std::size_t r = 0; r < gram.rows(); ++r) {
    for (std::size_t c = 0; c < gram.cols(); ++c) {
      const cxd want = (r == c) ? cxd(1.0, 0.0) : cxd(0.0, 0.0);
      acc += std::norm(gram(r, c) - want);
    }
  }
  return std::sqrt(acc);
}

double unitarity_error(const Block2& b) {
  const Block2 g = block_mul(block_adjoint(b), b);
  return std::sqrt(std::norm(g.a - cxd(1.0, 0.0)) + std::norm(g.b) +
                   std::norm(g.c) + std::norm(g.d - cxd(1.0, 0.0)));
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t xr = 0; xr < x.rows(); ++xr)
    for (std::size_t xc = 0; xc < x.cols(); ++xc) {
      const cxd xv = x(xr, xc);
      if (xv == cxd(0.0, 0.0)) continue;
      for (std::size_t yr = 0; yr < y.rows(); ++yr)
        for (std::size_t yc = 0; yc < y.cols(); ++yc)
          out(xr * y.rows() + yr, xc * y.cols() + yc) = xv * y(yr, yc);
    }
  return out;
}

ComplexVector vectorize(const ComplexMatrix& m) {
  ComplexVector v(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v[r * m.cols() + c] = m(r, c);
  return v;
}

ComplexMatrix devectorize(const ComplexVector& v, std::size_t rows,
                          std::size_t cols) {
  if (v.size() != rows * cols) {
    throw ShapeError("devectorize: vector length " + std::to_string(v.size()) +
                     " does not factor as " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  return m;
}

ComplexVector solve_linear(ComplexMatrix a, ComplexVector b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) {
    throw ShapeError("solve_linear: matrix is " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()) + ", expected square");
  }
  if (b.size() != n) {
    throw ShapeError("solve_linear: rhs length " + std::to_string(b.size()) +
                     " does not match order " + std::to_string(n));
  }
  // Pivot threshold is relative to the input scale, so uniformly scaled
  // systems succeed or fail identically.
  const double threshold = 1e-13 * max_abs_entry(a);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    double pivot_mag = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(a(r, col));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (pivot_mag <= threshold) {
      throw SingularSystemError(
          "solve_linear: pivot magnitude " + std::to_string(pivot_mag) +
              " at column " + std::to_string(col + 1) + " is below tolerance",
          pivot_mag);
    }
    if (pivot_row != col) {
      for (std::size_t c = col; c < n; ++c)
        std::swap(a(pivot_row, c), a(col, c));
      std::swap(b[pivot_row], b[col]);
    }
    const cxd inv_pivot = cxd(1.0, 0.0) / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cxd factor = a(r, col) * inv_pivot;
      if (factor == cxd(0.0, 0.0)) continue;
      a(r, col) = cxd(0.0, 0.0);
      for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
      b[r] -= factor * b[col];
    }
  }

  ComplexVector x(n);
  for (std::size_t ri = n; ri-- > 0;) {
    cxd acc = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) acc -= a(ri, c) * x[c];
    x[ri] = acc / a(ri, ri);
  }
  return x;
}

Block2 nearest_unitary_2x2(const Block2& blk) {
  const double scale =
      std::max({std::abs(blk.a), std::abs(blk.b), std::abs(blk.c),
                std::abs(blk.d)});
  const cxd det = block_det(blk);
  if (std::abs(det) <= 1e-28 * scale * scale) {
    throw DomainError(
        "nearest_unitary_2x2: block is singular, polar factor undefined");
  }
  Block2 w = blk;
  for (int iter = 0; iter < 64; ++iter) {
    if (unitarity_error(w) < 1e-14) return w;
    // (W^dagger)^{-1} from the 2x2 cofactor formula.
    const Block2 wa = block_adjoint(w);
    const cxd dw = block_det(wa);
    const Block2 inv_adj{wa.d / dw, -wa.b / dw, -wa.c / dw, wa.a / dw};
    w = Block2{0.5 * (w.a + inv_adj.a), 0.5 * (w.b + inv_adj.b),
               0.5 * (w.c + inv_adj.c), 0.5 * (w.d + inv_adj.d)};
  }
  throw DomainError("nearest_unitary_2x2: polar iteration did not converge");
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw DomainError("random_unitary: dimension must be positive");
  ComplexMatrix g(dim, dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      g(r, c) = cxd(re * inv_sqrt2, im * inv_sqrt2);
    }

  // Two passes of column MGS; the second restores orthogonality lost to
  // rounding in the first.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t p = 0; p < k; ++p) {
        cxd proj(0.0, 0.0);
        for (std::size_t r = 0; r < dim; ++r)
          proj += std::conj(g(r, p)) * g(r, k);
        for (std::size_t r = 0; r < dim; ++r) g(r, k) -= proj * g(r, p);
      }
      double nrm = 0.0;
      for (std::size_t r = 0; r < dim; ++r) nrm += std::norm(g(r, k));
      nrm = std::sqrt(nrm);
      if (nrm <= 0.0) {
        throw DomainError("random_unitary: degenerate Ginibre sample");
      }
      for (std::size_t r = 0; r < dim; ++r) g(r, k) /= nrm;
    }
  }
  return g;
}

}  // namespace gatetrim
