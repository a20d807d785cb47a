#include "qmonty/channels.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace qmonty {

namespace {

std::string fmt_param(const char* name, double v) {
  return std::string(name) + "=" + std::to_string(v);
}

void check_se_params(double t, double a1, double a2) {
  if (!std::isfinite(t) || t < 0.0) {
    throw ParameterOutOfDomain("spontaneous emission: t must be finite and >= 0 (" +
                               fmt_param("t", t) + ")");
  }
  if (!std::isfinite(a1) || !std::isfinite(a2) || a1 <= 0.0 || a2 <= 0.0) {
    throw ParameterOutOfDomain("spontaneous emission: Einstein coefficients must be > 0 (" +
                               fmt_param("a1", a1) + ", " + fmt_param("a2", a2) + ")");
  }
}

void check_gp_param(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterOutOfDomain("generalized Pauli: p must lie in [0, 1] (" + fmt_param("p", p) +
                               ")");
  }
}

// Lifts a qutrit operator onto register slot 0 (o), 1 (b) or 2 (a).
ComplexMatrix lift(const ComplexMatrix& k, int slot) {
  const auto id = ComplexMatrix::identity(kQutritDim);
  switch (slot) {
    case 0:
      return kron(kron(k, id), id);
    case 1:
      return kron(kron(id, k), id);
    default:
      return kron(kron(id, id), k);
  }
}

ComplexMatrix kraus_sum(const std::vector<ComplexMatrix>& elements, const ComplexMatrix& rho) {
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const auto& k : elements) out += conjugate_by(k, rho);
  return out;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> elements, std::string label)
    : elements_(std::move(elements)), label_(std::move(label)) {
  if (elements_.empty()) throw std::invalid_argument("KrausChannel: no elements");
  const std::size_t d = elements_.front().rows();
  for (const auto& k : elements_) {
    if (k.rows() != d || k.cols() != d) {
      throw DimensionMismatch("KrausChannel: elements must all be " + std::to_string(d) + "x" +
                              std::to_string(d));
    }
  }
}

std::string_view to_string(NoiseKind kind) noexcept {
  switch (kind) {
    case NoiseKind::spontaneous_emission:
      return "se";
    case NoiseKind::generalized_pauli:
      return "gp";
    case NoiseKind::none:
      break;
  }
  return "none";
}

NoiseSpec NoiseSpec::spontaneous_emission(double t, double a1, double a2) {
  NoiseSpec s;
  s.kind = NoiseKind::spontaneous_emission;
  s.t = t;
  s.a1 = a1;
  s.a2 = a2;
  return s;
}

NoiseSpec NoiseSpec::generalized_pauli(double p) {
  NoiseSpec s;
  s.kind = NoiseKind::generalized_pauli;
  s.p = p;
  return s;
}

double NoiseSpec::strength() const noexcept {
  switch (kind) {
    case NoiseKind::spontaneous_emission:
      return t;
    case NoiseKind::generalized_pauli:
      return p;
    case NoiseKind::none:
      break;
  }
  return 0.0;
}

NoiseSpec NoiseSpec::with_strength(double value) const {
  NoiseSpec s = *this;
  if (kind == NoiseKind::spontaneous_emission) s.t = value;
  if (kind == NoiseKind::generalized_pauli) s.p = value;
  return s;
}

void NoiseSpec::validate() const {
  switch (kind) {
    case NoiseKind::spontaneous_emission:
      check_se_params(t, a1, a2);
      break;
    case NoiseKind::generalized_pauli:
      check_gp_param(p);
      break;
    case NoiseKind::none:
      break;
  }
}

ComplexMatrix shift_operator() {
  return ComplexMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
}

ComplexMatrix clock_operator() {
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex w2 = std::polar(1.0, 4.0 * std::numbers::pi / 3.0);
  return ComplexMatrix{{1, 0, 0}, {0, w, 0}, {0, 0, w2}};
}

KrausChannel identity_channel(std::size_t dim) {
  return KrausChannel({ComplexMatrix::identity(dim)}, "I");
}

KrausChannel se_single(double t, double a1, double a2) {
  check_se_params(t, a1, a2);
  ComplexMatrix k0{{1, 0, 0}, {0, std::exp(-t * a1 / 2.0), 0}, {0, 0, std::exp(-t * a2 / 2.0)}};
  ComplexMatrix k1(3, 3);
  k1(0, 1) = std::sqrt(-std::expm1(-t * a1));
  ComplexMatrix k2(3, 3);
  k2(0, 2) = std::sqrt(-std::expm1(-t * a2));
  return KrausChannel({std::move(k0), std::move(k1), std::move(k2)},
                      "SE(" + std::to_string(t) + ")");
}

KrausChannel gp_single(double p) {
  check_gp_param(p);
  const ComplexMatrix x = shift_operator();
  const ComplexMatrix z = clock_operator();
  const auto id = ComplexMatrix::identity(3);
  const std::array<ComplexMatrix, 3> x_pow{id, x, x * x};
  const std::array<ComplexMatrix, 3> z_pow{id, z, z * z};

  std::vector<ComplexMatrix> elements;
  elements.reserve(9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double weight = (i == 0 && j == 0) ? 1.0 - 8.0 * p / 9.0 : p / 9.0;
      elements.push_back(Complex{std::sqrt(weight), 0.0} * (x_pow[i] * z_pow[j]));
    }
  }
  return KrausChannel(std::move(elements), "GP(" + std::to_string(p) + ")");
}

KrausChannel single_qutrit_channel(const NoiseSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case NoiseKind::spontaneous_emission:
      return se_single(spec.t, spec.a1, spec.a2);
    case NoiseKind::generalized_pauli:
      return gp_single(spec.p);
    case NoiseKind::none:
      break;
  }
  return identity_channel(kQutritDim);
}

KrausChannel extend_three(const KrausChannel& single) {
  if (single.dim() != kQutritDim) {
    throw DimensionMismatch("extend_three: expected a qutrit channel, got dimension " +
                            std::to_string(single.dim()));
  }
  const auto& ks = single.elements();
  std::vector<ComplexMatrix> out;
  out.reserve(ks.size() * ks.size() * ks.size());
  for (const auto& k1 : ks) {
    for (const auto& k2 : ks) {
      const ComplexMatrix k12 = kron(k1, k2);
      for (const auto& k3 : ks) out.push_back(kron(k12, k3));
    }
  }
  return KrausChannel(std::move(out), single.label() + "^3");
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) {
    throw DimensionMismatch("apply: channel dimension " + std::to_string(ch.dim()) +
                            " vs state dimension " + std::to_string(rho.dim()));
  }
  return DensityMatrix(kraus_sum(ch.elements(), rho.matrix()));
}

DensityMatrix apply_local_sequential(const KrausChannel& single, const DensityMatrix& rho) {
  if (single.dim() != kQutritDim || rho.dim() != kRegisterDim) {
    throw DimensionMismatch("apply_local_sequential: needs a qutrit channel and a 27x27 state");
  }
  ComplexMatrix current = rho.matrix();
  for (int slot = 0; slot < 3; ++slot) {
    std::vector<ComplexMatrix> lifted;
    lifted.reserve(single.elements().size());
    for (const auto& k : single.elements()) lifted.push_back(lift(k, slot));
    current = kraus_sum(lifted, current);
  }
  return DensityMatrix(std::move(current));
}

DensityMatrix apply_noise(const NoiseSpec& spec, const DensityMatrix& rho) {
  if (spec.kind == NoiseKind::none) {
    spec.validate();
    return rho;
  }
  return apply_local_sequential(single_qutrit_channel(spec), rho);
}

CptpReport validate_cptp(const KrausChannel& ch, double tol) {
  ComplexMatrix sum(ch.dim(), ch.dim());
  for (const auto& k : ch.elements()) sum += mat_mul(dagger(k), k);
  CptpReport report;
  report.max_deviation = max_abs_diff(sum, ComplexMatrix::identity(ch.dim()));
  report.passed = report.max_deviation <= tol;
  return report;
}

}  // namespace qmonty
