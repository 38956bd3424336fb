#include <cmath>

#include "doctest.h"
#include "gatetrim/numerics.hpp"
#include "support/test_util.hpp"

using namespace gatetrim;
using namespace gatetrim::testing;

TEST_CASE("matmul matches the naive triple loop") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix a = random_matrix(5, 3, rng);
    const ComplexMatrix b = random_matrix(3, 7, rng);
    CHECK(mat_dist(matmul(a, b), matmul_naive(a, b)) < 1e-12);
  }
  CHECK_THROWS_AS(matmul(random_matrix(2, 3, rng), random_matrix(2, 3, rng)),
                  ShapeError);
}

TEST_CASE("adjoint is an involution and reverses products") {
  Rng rng(12);
  const ComplexMatrix a = random_matrix(4, 4, rng);
  const ComplexMatrix b = random_matrix(4, 4, rng);
  CHECK(mat_dist(adjoint(adjoint(a)), a) == doctest::Approx(0.0));
  CHECK(mat_dist(adjoint(matmul(a, b)), matmul(adjoint(b), adjoint(a))) <
        1e-12);
}

TEST_CASE("frobenius norm and inner product basics") {
  ComplexMatrix m(2, 2);
  m(0, 0) = cxd(3.0, 0.0);
  m(1, 1) = cxd(0.0, 4.0);
  CHECK(frobenius_norm(m) == doctest::Approx(5.0));

  Rng rng(13);
  const ComplexMatrix a = random_matrix(3, 3, rng);
  const cxd self = frobenius_inner(a, a);
  CHECK(self.imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::sqrt(self.real()) == doctest::Approx(frobenius_norm(a)));
}

TEST_CASE("unitarity error is zero for unitaries and 3 sqrt(d) for 2I") {
  Rng rng(14);
  const ComplexMatrix q = random_unitary(8, rng);
  CHECK(unitarity_error(q) < 1e-12);

  ComplexMatrix twice = ComplexMatrix::identity(4);
  for (std::size_t k = 0; k < 4; ++k) twice(k, k) = cxd(2.0, 0.0);
  CHECK(unitarity_error(twice) == doctest::Approx(3.0 * 2.0));
}

TEST_CASE("row-stacking vectorization matches the Kronecker identity") {
  // vec(A X B) = (A kron B^T) vec(X); this is the convention every
  // full-size subproblem computation relies on.
  Rng rng(15);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix a = random_matrix(3, 4, rng);
    const ComplexMatrix x = random_matrix(4, 2, rng);
    const ComplexMatrix b = random_matrix(2, 5, rng);
    const ComplexVector lhs = vectorize(matmul(matmul(a, x), b));

    ComplexMatrix bt(b.cols(), b.rows());
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) bt(c, r) = b(r, c);
    const ComplexMatrix k = kron(a, bt);
    const ComplexVector vx = vectorize(x);
    ComplexVector rhs(k.rows(), cxd(0.0, 0.0));
    for (std::size_t r = 0; r < k.rows(); ++r)
      for (std::size_t c = 0; c < k.cols(); ++c) rhs[r] += k(r, c) * vx[c];

    CHECK(vec_dist(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("vectorize and devectorize round-trip") {
  Rng rng(16);
  const ComplexMatrix a = random_matrix(3, 5, rng);
  CHECK(mat_dist(devectorize(vectorize(a), 3, 5), a) == doctest::Approx(0.0));
  CHECK_THROWS_AS(devectorize(vectorize(a), 4, 4), ShapeError);
}

TEST_CASE("solve_linear solves well-conditioned systems") {
  Rng rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix a = random_matrix(6, 6, rng);
    ComplexVector x_true(6);
    for (auto& v : x_true) v = cxd(rng.gaussian(), rng.gaussian());
    ComplexVector b(6, cxd(0.0, 0.0));
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = 0; c < 6; ++c) b[r] += a(r, c) * x_true[c];
    const ComplexVector x = solve_linear(a, b);
    CHECK(vec_dist(x, x_true) < 1e-9);
  }
}

TEST_CASE("solve_linear flags singular systems with the pivot magnitude") {
  ComplexMatrix a(3, 3);
  a(0, 0) = cxd(1.0, 0.0);
  a(0, 1) = cxd(2.0, 0.0);
  a(1, 0) = cxd(2.0, 0.0);
  a(1, 1) = cxd(4.0, 0.0);  // row 2 = 2 * row 1
  a(2, 2) = cxd(1.0, 0.0);
  ComplexVector b(3, cxd(1.0, 0.0));
  CHECK_THROWS_AS(solve_linear(a, b), SingularSystemError);
  try {
    solve_linear(a, b);
  } catch (const SingularSystemError& e) {
    CHECK(e.pivot_magnitude() >= 0.0);
    CHECK(e.pivot_magnitude() <= 1e-13 * 4.0);
  }
}

TEST_CASE("solve_linear pivot test is scale-invariant") {
  Rng rng(18);
  const ComplexMatrix a = random_matrix(5, 5, rng);
  ComplexVector b(5);
  for (auto& v : b) v = cxd(rng.gaussian(), rng.gaussian());

  ComplexMatrix a_scaled(5, 5);
  ComplexVector b_scaled(5);
  for (std::size_t r = 0; r < 5; ++r) {
    b_scaled[r] = b[r] * 1e-12;
    for (std::size_t c = 0; c < 5; ++c) a_scaled(r, c) = a(r, c) * 1e-12;
  }
  const ComplexVector x = solve_linear(a, b);
  const ComplexVector y = solve_linear(a_scaled, b_scaled);
  CHECK(vec_dist(x, y) < 1e-8);
}

TEST_CASE("nearest_unitary_2x2 projects onto the unitary group") {
  Rng rng(19);
  for (int rep = 0; rep < 25; ++rep) {
    const Block2 u = random_unitary_block(rng);
    Block2 noisy = u;
    noisy.a += cxd(0.05 * rng.gaussian(), 0.05 * rng.gaussian());
    noisy.b += cxd(0.05 * rng.gaussian(), 0.05 * rng.gaussian());
    noisy.c += cxd(0.05 * rng.gaussian(), 0.05 * rng.gaussian());
    noisy.d += cxd(0.05 * rng.gaussian(), 0.05 * rng.gaussian());

    const Block2 proj = nearest_unitary_2x2(noisy);
    CHECK(unitarity_error(proj) < 1e-13);

    // No sampled unitary may beat the polar factor in Frobenius distance.
    const double best = block_dist(proj, noisy);
    for (int cand = 0; cand < 200; ++cand) {
      const Block2 other = random_unitary_block(rng);
      CHECK(block_dist(other, noisy) >= best - 1e-9);
    }
  }
}

TEST_CASE("nearest_unitary_2x2 fixes unitaries and rejects singular blocks") {
  Rng rng(20);
  const Block2 u = random_unitary_block(rng);
  CHECK(block_dist(nearest_unitary_2x2(u), u) < 1e-12);

  // Positive diagonal block projects to the identity.
  const Block2 diag{cxd(2.0, 0.0), cxd(0.0, 0.0), cxd(0.0, 0.0),
                    cxd(3.0, 0.0)};
  CHECK(block_dist(nearest_unitary_2x2(diag), Block2::identity()) < 1e-13);

  const Block2 rank1{cxd(1.0, 0.0), cxd(1.0, 0.0), cxd(1.0, 0.0),
                     cxd(1.0, 0.0)};
  CHECK_THROWS_AS(nearest_unitary_2x2(rank1), DomainError);
}

TEST_CASE("random_unitary is unitary and deterministic per seed") {
  for (std::size_t d : {2, 4, 8}) {
    Rng r1(21);
    Rng r2(21);
    const ComplexMatrix q1 = random_unitary(d, r1);
    const ComplexMatrix q2 = random_unitary(d, r2);
    CHECK(unitarity_error(q1) < 1e-12);
    CHECK(mat_dist(q1, q2) == doctest::Approx(0.0));

    Rng r3(22);
    const ComplexMatrix q3 = random_unitary(d, r3);
    CHECK(mat_dist(q1, q3) > 1e-3);
  }
}

TEST_CASE("rng streams are deterministic and well-ranged") {
  Rng a(7);
  Rng b(7);
  for (int k = 0; k < 100; ++k) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform());
  }
  for (int k = 0; k < 100; ++k) {
    CHECK(a.uniform_index(7) < 7);
    (void)b.uniform_index(7);
  }
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
}
