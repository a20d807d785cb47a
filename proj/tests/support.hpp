// Test helpers: fixed-seed random inputs and oracles that avoid the library's
// density-matrix pipeline.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qmonty/channels.hpp"
#include "qmonty/game.hpp"
#include "qmonty/linalg.hpp"

namespace qmonty::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                   double radius = 1.0) {
  std::uniform_real_distribution<double> r(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = std::polar(std::sqrt(r(rng)) * radius, phase(rng));
  }
  return m;
}

/// exp(i H) for a random Hermitian H.
inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix a = random_matrix(rng, n, n);
  Eigen::MatrixXcd h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(n);
  for (std::size_t i = 0; i < n; ++i) phases(i) = std::polar(1.0, 3.0 * es.eigenvalues()(i));
  const Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = u(i, j);
  }
  return out;
}

/// G G^dagger / Tr for a random G.
inline DensityMatrix random_density(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n, n);
  ComplexMatrix rho = mat_mul(g, dagger(g));
  const Complex tr = trace(rho);
  rho *= 1.0 / tr.real();
  // Symmetrise away rounding so the Hermiticity check sees exact symmetry.
  ComplexMatrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
  }
  return DensityMatrix(sym);
}

inline PureState random_pure(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix v = random_matrix(rng, n, 1);
  std::vector<Complex> amps(v.entries().begin(), v.entries().end());
  const double nv = norm(amps);
  for (auto& z : amps) z /= nv;
  return PureState(std::move(amps));
}

inline std::vector<Complex> apply_vec(const ComplexMatrix& m, std::span<const Complex> v) {
  std::vector<Complex> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  }
  return out;
}

/// Opening operator assembled from the epsilon-symbol sums. First sum: for
/// pairwise distinct (i, j, k), |l j k> -> |(i + l) mod 3, j, k>. Second sum,
/// with the choice registers kept in place: |j l l> -> |(j + l + 1) mod 3, l, l>.
inline ComplexMatrix epsilon_open_operator() {
  auto eps = [](int i, int j, int k) { return i != j && j != k && i != k ? 1 : 0; };
  ComplexMatrix m(27, 27);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          if (!eps(i, j, k)) continue;
          const int n = (i + l) % 3;
          m(9 * n + 3 * j + k, 9 * l + 3 * j + k) += 1.0;
        }
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) {
      const int mm = (j + l + 1) % 3;
      // opened register j -> m, choices (l, l) preserved
      m(9 * mm + 3 * l + l, 9 * j + 3 * l + l) += 1.0;
    }
  return m;
}

/// Switching operator from the epsilon sums: |o b a> -> |o b' a> with
/// (o, b, b') pairwise distinct, plus the identity on |i i j>.
inline ComplexMatrix epsilon_switch_operator() {
  auto eps = [](int i, int j, int k) { return i != j && j != k && i != k ? 1 : 0; };
  ComplexMatrix m(27, 27);
  for (int o = 0; o < 3; ++o)
    for (int b = 0; b < 3; ++b)
      for (int bp = 0; bp < 3; ++bp)
        for (int a = 0; a < 3; ++a)
          if (eps(o, b, bp)) m(9 * o + 3 * bp + a, 9 * o + 3 * b + a) += 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(9 * i + 3 * i + j, 9 * i + 3 * i + j) += 1.0;
  return m;
}

/// Branch payoffs by unravelling the noise into Kraus branches of the state
/// vector: sum over (k1,k2,k3) of |P_win G (K1 (x) K2 (x) K3) psi|^2. Uses
/// no density matrices and none of the library's channel application code.
struct VectorPayoffs {
  double p_switch = 0.0;
  double p_not_switch = 0.0;
};

inline VectorPayoffs vector_route_payoffs(const PureState& psi, const ComplexMatrix& alice,
                                          const ComplexMatrix& bob,
                                          const std::vector<ComplexMatrix>& single_kraus) {
  const ComplexMatrix open = epsilon_open_operator();
  const ComplexMatrix sw = epsilon_switch_operator();
  const ComplexMatrix id = ComplexMatrix::identity(3);
  const ComplexMatrix g_n = open * kron(kron(id, bob), alice);
  const ComplexMatrix g_s = sw * g_n;

  auto win = [](const std::vector<Complex>& v) {
    double s = 0.0;
    for (int o = 0; o < 3; ++o)
      for (int k = 0; k < 3; ++k) s += std::norm(v[9 * o + 3 * k + k]);
    return s;
  };

  VectorPayoffs out;
  for (const auto& k1 : single_kraus)
    for (const auto& k2 : single_kraus)
      for (const auto& k3 : single_kraus) {
        const auto branch = apply_vec(kron(kron(k1, k2), k3), psi.amplitudes());
        out.p_switch += win(apply_vec(g_s, branch));
        out.p_not_switch += win(apply_vec(g_n, branch));
      }
  return out;
}

inline ComplexMatrix diag3(Complex a, Complex b, Complex c) {
  return ComplexMatrix{{a, 0, 0}, {0, b, 0}, {0, 0, c}};
}

}  // namespace qmonty::testing
