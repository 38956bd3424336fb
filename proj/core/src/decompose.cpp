#include "gatetrim/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gatetrim {

namespace {

// Entries at or below this magnitude are treated as already eliminated.
constexpr double kNegligible = 1e-14;

// Phases within this distance of 1 need no correction gate.
constexpr double kTrivialPhase = 1e-12;

std::string show(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

Circuit two_level_decompose(const ComplexMatrix& u, double tol) {
  const std::size_t d = u.rows();
  if (u.cols() != d || !is_power_of_two(d) || d < 2) {
    throw ShapeError("two_level_decompose: input is " +
                     std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                     ", expected square power-of-two dimension >= 2");
  }
  const double residual = unitarity_error(u);
  if (!(residual <= tol)) {
    throw DomainError("two_level_decompose: unitarity residual " +
                      show(residual) + " exceeds tolerance " + show(tol));
  }

  // Left-multiply rotations G_1, G_2, ... until m is diagonal, recording
  // them in application order.  Then u = G_1^dagger G_2^dagger ... D.
  ComplexMatrix m = u;
  Circuit out;
  out.dim = d;
  for (std::size_t c = 0; c + 1 < d; ++c) {
    for (std::size_t k = d - 1; k > c; --k) {
      const cxd a = m(c, c);
      const cxd b = m(k, c);
      if (std::abs(b) <= kNegligible) continue;
      const double r = std::hypot(std::abs(a), std::abs(b));
      // SU(2) rotation sending (a, b) to (r, 0).
      const Block2 rot{std::conj(a) / r, std::conj(b) / r, -b / r, a / r};
      TwoLevelGate g{d, c, k, rot};
      apply_left(g, m);
      m(k, c) = cxd(0.0, 0.0);
      g.block = block_adjoint(rot);
      out.gates.push_back(g);
    }
  }

  // m is now diagonal up to rounding; fold its phases back in.
  std::set<std::pair<std::size_t, std::size_t>> used;
  for (const TwoLevelGate& g : out.gates) used.insert({g.i, g.j});

  std::vector<std::size_t> orphans;  // phased indices no gate touches
  for (std::size_t c = 0; c < d; ++c) {
    const cxd phase = m(c, c);
    if (std::abs(phase - cxd(1.0, 0.0)) <= kTrivialPhase) continue;
    std::size_t last = out.gates.size();
    for (std::size_t s = out.gates.size(); s-- > 0;) {
      if (out.gates[s].i == c || out.gates[s].j == c) {
        last = s;
        break;
      }
    }
    if (last == out.gates.size()) {
      orphans.push_back(c);
      continue;
    }
    // No later gate touches index c, so a phase at c commutes with the
    // whole suffix and lands as a right factor of gate `last`.
    Block2& blk = out.gates[last].block;
    if (out.gates[last].i == c) {
      blk.a *= phase;
      blk.c *= phase;
    } else {
      blk.b *= phase;
      blk.d *= phase;
    }
  }

  // Orphan phases pair up into diagonal gates; a leftover single phase
  // borrows any index whose joint position is still unused.
  std::size_t oi = 0;
  while (oi < orphans.size()) {
    if (oi + 1 < orphans.size()) {
      const std::size_t c1 = orphans[oi];
      const std::size_t c2 = orphans[oi + 1];
      out.gates.push_back(
          TwoLevelGate{d, c1, c2, Block2{m(c1, c1), 0.0, 0.0, m(c2, c2)}});
      used.insert({c1, c2});
      oi += 2;
      continue;
    }
    const std::size_t c = orphans[oi];
    std::size_t partner = d;
    for (std::size_t p = 0; p < d; ++p) {
      if (p == c) continue;
      const std::size_t lo = std::min(p, c);
      const std::size_t hi = std::max(p, c);
      if (!used.count({lo, hi})) {
        partner = p;
        break;
      }
    }
    if (partner == d) {
      throw DomainError("two_level_decompose: no free position for phase");
    }
    const std::size_t lo = std::min(partner, c);
    const std::size_t hi = std::max(partner, c);
    Block2 blk = Block2::identity();
    if (lo == c) {
      blk.a = m(c, c);
    } else {
      blk.d = m(c, c);
    }
    out.gates.push_back(TwoLevelGate{d, lo, hi, blk});
    used.insert({lo, hi});
    ++oi;
  }
  return out;
}

std::pair<ComplexMatrix, Circuit> random_target(std::size_t n_qubits,
                                                std::size_t n_factors,
                                                std::uint64_t seed) {
  if (n_qubits == 0) {
    throw ConfigError("random_target: n_qubits must be positive");
  }
  const std::size_t d = std::size_t{1} << n_qubits;
  const std::size_t max_positions = d * (d - 1) / 2;
  if (n_factors < 1 || n_factors > max_positions) {
    throw ConfigError("random_target: n_factors " + std::to_string(n_factors) +
                      " outside [1, " + std::to_string(max_positions) +
                      "] for dim " + std::to_string(d));
  }

  Rng rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  positions.reserve(max_positions);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) positions.push_back({i, j});
  // Partial Fisher-Yates: the first n_factors entries are a uniform
  // draw without replacement.
  for (std::size_t k = 0; k < n_factors; ++k) {
    const std::size_t pick =
        k + static_cast<std::size_t>(rng.uniform_index(positions.size() - k));
    std::swap(positions[k], positions[pick]);
  }

  Circuit c;
  c.dim = d;
  for (std::size_t k = 0; k < n_factors; ++k) {
    const ComplexMatrix q = random_unitary(2, rng);
    c.gates.push_back(TwoLevelGate{d, positions[k].first, positions[k].second,
                                   Block2{q(0, 0), q(0, 1), q(1, 0), q(1, 1)}});
  }
  return {circuit_matrix(c), c};
}

Circuit truncate_circuit(const Circuit& c, std::size_t m,
                         TruncateStrategy strategy, std::uint64_t seed) {
  if (m < 1 || m > c.gates.size()) {
    throw ConfigError("truncate_circuit: m " + std::to_string(m) +
                      " outside [1, " + std::to_string(c.gates.size()) + "]");
  }
  Circuit out;
  out.dim = c.dim;
  if (strategy == TruncateStrategy::prefix) {
    out.gates.assign(c.gates.begin(), c.gates.begin() + m);
    return out;
  }
  Rng rng(seed);
  std::vector<std::size_t> idx(c.gates.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t pick =
        k + static_cast<std::size_t>(rng.uniform_index(idx.size() - k));
    std::swap(idx[k], idx[pick]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  for (std::size_t k : idx) out.gates.push_back(c.gates[k]);
  return out;
}

}  // namespace gatetrim
