// Dense complex linear algebra for the three-qutrit register (dimensions 3, 9, 27).
//
// Basis convention: the register triple |o,b,a> maps to index 9*o + 3*b + a,
// so the leftmost tensor factor is the most significant trit.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmonty {

using Complex = std::complex<double>;

/// Structural predicates (unitarity, Hermiticity, completeness).
inline constexpr double kStructuralTol = 1e-10;
/// Floor for the smallest eigenvalue of a density matrix.
inline constexpr double kEigenFloor = -1e-10;
/// Payoff agreement with the closed-form oracles.
inline constexpr double kPayoffTol = 1e-9;

inline constexpr std::size_t kQutritDim = 3;
inline constexpr std::size_t kRegisterDim = 27;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Row-major dense complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
/// Throws DimensionMismatch unless a.cols() == b.rows().
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
/// a * b * dagger(a), the conjugation used by every channel and evolution step.
ComplexMatrix conjugate_by(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);

/// Largest |a(i,j) - b(i,j)|. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest |a(i,j) - conj(a(j,i))|.
double hermiticity_deviation(const ComplexMatrix& a);
/// Largest entry of |a^dagger a - I|.
double unitarity_deviation(const ComplexMatrix& a);
bool is_unitary(const ComplexMatrix& a, double tol);

/// Smallest eigenvalue of a Hermitian matrix. Throws std::invalid_argument when
/// the input deviates from Hermitian by more than 1e-8.
double min_eigenvalue_hermitian(const ComplexMatrix& a);

/// Normalised state vector.
class PureState {
 public:
  /// Throws std::invalid_argument unless the Euclidean norm is 1 within 1e-12.
  explicit PureState(std::vector<Complex> amplitudes);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const noexcept { return amps_[i]; }

 private:
  std::vector<Complex> amps_;
};

double norm(std::span<const Complex> v);

/// |o,b,a> for trits o, b, a. Throws std::out_of_range for values above 2.
PureState basis_ket(unsigned o, unsigned b, unsigned a);
constexpr std::size_t register_index(unsigned o, unsigned b, unsigned a) noexcept {
  return 9 * o + 3 * b + a;
}

struct DensityInvariants {
  double hermiticity = 0.0;
  double trace_error = 0.0;  // |Tr(rho) - 1|, imaginary part included
  double min_eigenvalue = 0.0;

  bool ok() const noexcept {
    return hermiticity <= kStructuralTol && trace_error <= kStructuralTol &&
           min_eigenvalue >= kEigenFloor;
  }
};

DensityInvariants measure_invariants(const ComplexMatrix& m);

/// Hermitian, unit-trace, positive-semidefinite state.
class DensityMatrix {
 public:
  /// Checks Hermiticity and trace at the structural tolerance. The eigenvalue
  /// floor is not checked here (it costs an eigendecomposition); use
  /// invariants() when it matters.
  explicit DensityMatrix(ComplexMatrix m);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  DensityInvariants invariants() const { return measure_invariants(m_); }
  /// Tr(rho^2).
  double purity() const;

 private:
  ComplexMatrix m_;
};

DensityMatrix density_from_pure(const PureState& v);

}  // namespace qmonty
