#include "qmonty/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace qmonty {

namespace {

void require_finite(std::span<const Complex> v) {
  for (const Complex& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": shape " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionMismatch(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: empty shape");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: empty shape");
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("ComplexMatrix: entry count does not match shape");
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("ComplexMatrix: empty shape");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionMismatch("ComplexMatrix: ragged rows");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.entries());
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (Complex& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex s = a(i, j);
      if (s == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  }
  return out;
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  // i-k-j order; skipping zero a(i,k) makes permutation and Kraus products cheap.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex s = a(i, k);
      if (s == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += s * b(k, j);
    }
  }
  return out;
}

ComplexMatrix conjugate_by(const ComplexMatrix& a, const ComplexMatrix& b) {
  return mat_mul(mat_mul(a, b), dagger(a));
}

Complex trace(const ComplexMatrix& a) {
  require_square(a, "trace");
  Complex sum{};
  for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, i);
  return sum;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

double hermiticity_deviation(const ComplexMatrix& a) {
  require_square(a, "hermiticity_deviation");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return worst;
}

double unitarity_deviation(const ComplexMatrix& a) {
  require_square(a, "unitarity_deviation");
  return max_abs_diff(mat_mul(dagger(a), a), ComplexMatrix::identity(a.rows()));
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  return unitarity_deviation(a) <= tol;
}

double min_eigenvalue_hermitian(const ComplexMatrix& a) {
  require_square(a, "min_eigenvalue_hermitian");
  if (hermiticity_deviation(a) > 1e-8) {
    throw std::invalid_argument("min_eigenvalue_hermitian: input is not Hermitian");
  }
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  // Only the lower triangle is read by the solver.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("min_eigenvalue_hermitian: eigensolver did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

double norm(std::span<const Complex> v) {
  double sum = 0.0;
  for (const Complex& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

PureState::PureState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw std::invalid_argument("PureState: empty amplitude vector");
  require_finite(amps_);
  const double n = norm(amps_);
  if (std::abs(n - 1.0) > 1e-12) {
    throw std::invalid_argument("PureState: norm " + std::to_string(n) + " is not 1");
  }
}

PureState basis_ket(unsigned o, unsigned b, unsigned a) {
  if (o > 2 || b > 2 || a > 2) throw std::out_of_range("basis_ket: trit out of range");
  std::vector<Complex> v(kRegisterDim);
  v[register_index(o, b, a)] = 1.0;
  return PureState(std::move(v));
}

DensityInvariants measure_invariants(const ComplexMatrix& m) {
  DensityInvariants inv;
  inv.hermiticity = hermiticity_deviation(m);
  inv.trace_error = std::abs(trace(m) - Complex{1.0, 0.0});
  inv.min_eigenvalue = inv.hermiticity <= 1e-8 ? min_eigenvalue_hermitian(m) : -1.0;
  return inv;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  const double herm = hermiticity_deviation(m_);
  if (herm > kStructuralTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian (deviation " + std::to_string(herm) +
                                ")");
  }
  const double tr_err = std::abs(trace(m_) - Complex{1.0, 0.0});
  if (tr_err > kStructuralTol) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1 by " +
                                std::to_string(tr_err));
  }
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double sum = 0.0;
  for (const Complex& z : m_.entries()) sum += std::norm(z);
  return sum;
}

DensityMatrix density_from_pure(const PureState& v) {
  const std::size_t n = v.dim();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return DensityMatrix(std::move(m));
}

}  // namespace qmonty
