// Kraus-form noise channels acting locally on each qutrit of the register.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmonty/linalg.hpp"

namespace qmonty {

/// Raised for noise parameters outside their physical domain.
class ParameterOutOfDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class KrausChannel {
 public:
  /// All elements must be square and share one dimension.
  KrausChannel(std::vector<ComplexMatrix> elements, std::string label);

  std::size_t dim() const noexcept { return elements_.front().rows(); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::vector<ComplexMatrix> elements_;
  std::string label_;
};

enum class NoiseKind { none, spontaneous_emission, generalized_pauli };

std::string_view to_string(NoiseKind kind) noexcept;

/// Which channel to apply and with what strength. Only the fields of the
/// selected kind are meaningful.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::none;
  double t = 0.0;   // decay time (spontaneous emission)
  double p = 0.0;   // error probability (generalized Pauli)
  double a1 = 1.0;  // Einstein coefficient of |1> -> |0>
  double a2 = 1.0;  // Einstein coefficient of |2> -> |0>

  static NoiseSpec none() { return {}; }
  static NoiseSpec spontaneous_emission(double t, double a1 = 1.0, double a2 = 1.0);
  static NoiseSpec generalized_pauli(double p);

  /// The strength parameter of the selected kind (t or p; 0 for none).
  double strength() const noexcept;
  /// Copy with the strength parameter replaced.
  NoiseSpec with_strength(double value) const;
  /// Throws ParameterOutOfDomain if a field of the selected kind is invalid.
  void validate() const;
};

/// Qutrit shift X|k> = |k-1 mod 3>, i.e. the matrix with ones above the diagonal.
ComplexMatrix shift_operator();
/// Qutrit clock diag(1, w, w^2) with w = exp(2 pi i / 3).
ComplexMatrix clock_operator();

KrausChannel identity_channel(std::size_t dim);

/// V-configuration spontaneous emission on one qutrit: |1>,|2> decay to |0>.
KrausChannel se_single(double t, double a1 = 1.0, double a2 = 1.0);

/// Generalized Pauli channel sqrt(P_ij) X^i Z^j, lexicographic in (i,j), with
/// P_00 = 1 - 8p/9 and p/9 elsewhere. Zero-weight elements are kept.
KrausChannel gp_single(double p);

/// Single-qutrit channel for a noise spec (identity channel for kind none).
KrausChannel single_qutrit_channel(const NoiseSpec& spec);

/// All triple products K_i (x) K_j (x) K_k, lexicographic in (i,j,k).
KrausChannel extend_three(const KrausChannel& single);

/// sum_i K_i rho K_i^dagger.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// Applies a single-qutrit channel to the o, b and a registers in turn.
/// Equivalent to apply(extend_three(single), rho) without building the n^3
/// extended elements.
DensityMatrix apply_local_sequential(const KrausChannel& single, const DensityMatrix& rho);

/// Noise stage of the game: the extended channel for spec applied to rho.
DensityMatrix apply_noise(const NoiseSpec& spec, const DensityMatrix& rho);

struct CptpReport {
  double max_deviation = 0.0;  // max |sum K^dagger K - I|
  bool passed = false;
};

CptpReport validate_cptp(const KrausChannel& ch, double tol = kStructuralTol);

}  // namespace qmonty
