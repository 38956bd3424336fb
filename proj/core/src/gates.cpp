#include "gatetrim/gates.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace gatetrim {

namespace {

constexpr double kPi = 3.14159265358979323846;

double block_distance(const Block2& x, const Block2& y) {
  return std::sqrt(std::norm(x.a - y.a) + std::norm(x.b - y.b) +
                   std::norm(x.c - y.c) + std::norm(x.d - y.d));
}

std::string show(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

std::size_t qubit_count(std::size_t dim) {
  if (!is_power_of_two(dim) || dim < 2) {
    throw ShapeError("qubit_count: dimension " + std::to_string(dim) +
                     " is not a power of two >= 2");
  }
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

void validate_gate(const TwoLevelGate& g) {
  if (!is_power_of_two(g.dim) || g.dim < 2) {
    throw DomainError("gate: dimension " + std::to_string(g.dim) +
                      " is not a power of two >= 2");
  }
  if (!(g.i < g.j && g.j < g.dim)) {
    throw DomainError("gate: positions (" + std::to_string(g.i + 1) + "," +
                      std::to_string(g.j + 1) + ") violate 1 <= i < j <= " +
                      std::to_string(g.dim));
  }
  const bool finite =
      std::isfinite(g.block.a.real()) && std::isfinite(g.block.a.imag()) &&
      std::isfinite(g.block.b.real()) && std::isfinite(g.block.b.imag()) &&
      std::isfinite(g.block.c.real()) && std::isfinite(g.block.c.imag()) &&
      std::isfinite(g.block.d.real()) && std::isfinite(g.block.d.imag());
  if (!finite) throw DomainError("gate: block entries must be finite");
}

ComplexMatrix embed(const TwoLevelGate& g) {
  validate_gate(g);
  ComplexMatrix m = ComplexMatrix::identity(g.dim);
  m(g.i, g.i) = g.block.a;
  m(g.i, g.j) = g.block.b;
  m(g.j, g.i) = g.block.c;
  m(g.j, g.j) = g.block.d;
  return m;
}

void apply_left(const TwoLevelGate& g, ComplexMatrix& m) {
  validate_gate(g);
  if (m.rows() != g.dim) {
    throw ShapeError("apply_left: matrix has " + std::to_string(m.rows()) +
                     " rows, gate dimension is " + std::to_string(g.dim));
  }
  cxd* ri = m.row(g.i);
  cxd* rj = m.row(g.j);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const cxd vi = ri[c];
    const cxd vj = rj[c];
    ri[c] = g.block.a * vi + g.block.b * vj;
    rj[c] = g.block.c * vi + g.block.d * vj;
  }
}

void apply_right(const TwoLevelGate& g, ComplexMatrix& m) {
  validate_gate(g);
  if (m.cols() != g.dim) {
    throw ShapeError("apply_right: matrix has " + std::to_string(m.cols()) +
                     " columns, gate dimension is " + std::to_string(g.dim));
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    cxd* row = m.row(r);
    const cxd vi = row[g.i];
    const cxd vj = row[g.j];
    row[g.i] = g.block.a * vi + g.block.c * vj;
    row[g.j] = g.block.b * vi + g.block.d * vj;
  }
}

ComplexMatrix circuit_matrix(const Circuit& c) {
  if (!is_power_of_two(c.dim) || c.dim < 2) {
    throw ShapeError("circuit_matrix: dimension " + std::to_string(c.dim) +
                     " is not a power of two >= 2");
  }
  ComplexMatrix m = ComplexMatrix::identity(c.dim);
  // Right-folding embeds the gates in list order:
  // ((I * g_0) * g_1) ... * g_{M-1}.
  for (const TwoLevelGate& g : c.gates) {
    if (g.dim != c.dim) {
      throw ShapeError("circuit_matrix: gate dimension " +
                       std::to_string(g.dim) + " differs from circuit " +
                       std::to_string(c.dim));
    }
    apply_right(g, m);
  }
  return m;
}

double wrap_angle(double x) {
  double y = std::remainder(x, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

Block2 euler_compose(const EulerAngles& a) {
  const double ch = std::cos(0.5 * a.phi);
  const double sh = std::sin(0.5 * a.phi);
  const cxd phase = std::polar(1.0, a.alpha);
  const cxd e_mm = std::polar(1.0, -0.5 * (a.theta + a.lambda));
  const cxd e_mp = std::polar(1.0, -0.5 * (a.theta - a.lambda));
  const cxd e_pm = std::polar(1.0, 0.5 * (a.theta - a.lambda));
  const cxd e_pp = std::polar(1.0, 0.5 * (a.theta + a.lambda));
  return Block2{phase * ch * e_mm, phase * (-sh) * e_mp, phase * sh * e_pm,
                phase * ch * e_pp};
}

EulerAngles euler_decompose(const Block2& b, double tol) {
  const double residual = unitarity_error(b);
  if (!(residual <= tol)) {
    throw DomainError("euler_decompose: block unitarity residual " +
                      show(residual) + " exceeds tolerance " + show(tol));
  }

  // Peel the global phase so the remainder has determinant 1, up to an
  // overall sign that the recompose check below settles.
  const double alpha0 = 0.5 * std::arg(block_det(b));
  const cxd unphase = std::polar(1.0, -alpha0);
  const Block2 su{unphase * b.a, unphase * b.b, unphase * b.c, unphase * b.d};

  const double c_mag = std::abs(su.a);
  const double s_mag = std::abs(su.c);
  const double phi = 2.0 * std::atan2(s_mag, c_mag);

  double theta = 0.0;
  double lambda = 0.0;
  if (s_mag <= 1e-9) {
    // phi ~ 0: only theta + lambda is determined; canonicalize lambda = 0.
    theta = wrap_angle(2.0 * std::arg(su.d));
  } else if (c_mag <= 1e-9) {
    // phi ~ pi: only theta - lambda is determined; canonicalize lambda = 0.
    theta = wrap_angle(2.0 * std::arg(su.c));
  } else {
    const double sum_half = std::arg(su.d);   // (theta + lambda)/2 mod pi flip
    const double diff_half = std::arg(su.c);  // (theta - lambda)/2 mod pi flip
    theta = wrap_angle(sum_half + diff_half);
    lambda = wrap_angle(sum_half - diff_half);
  }

  // Angle wrapping and the determinant branch each contribute a possible
  // global sign; exactly one of alpha0, alpha0 + pi reproduces b.
  EulerAngles cand{wrap_angle(alpha0), theta, phi, lambda};
  const double err_plain = block_distance(euler_compose(cand), b);
  EulerAngles flipped{wrap_angle(alpha0 + kPi), theta, phi, lambda};
  const double err_flipped = block_distance(euler_compose(flipped), b);
  EulerAngles best = (err_flipped < err_plain) ? flipped : cand;
  const double err_best = std::min(err_plain, err_flipped);
  if (!(err_best <= 1e-6 + 10.0 * tol)) {
    throw DomainError(
        "euler_decompose: recomposition mismatch " + std::to_string(err_best));
  }
  return best;
}

Transition position_to_transition(std::size_t i, std::size_t j,
                                  std::size_t n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (!(1 <= i && i < j && j <= dim)) {
    throw DomainError("position_to_transition: (" + std::to_string(i) + "," +
                      std::to_string(j) + ") violates 1 <= i < j <= " +
                      std::to_string(dim));
  }
  auto label = [n_qubits](std::size_t state) {
    std::string s(n_qubits, '0');
    for (std::size_t bit = 0; bit < n_qubits; ++bit) {
      if (state & (std::size_t{1} << (n_qubits - 1 - bit))) s[bit] = '1';
    }
    return s;
  };
  return Transition{label(j - 1), label(i - 1)};
}

}  // namespace gatetrim
