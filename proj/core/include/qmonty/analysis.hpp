// Closed-form payoff oracles for the seven benchmark configurations, the
// classical baseline, sweeps, optimal mixing and crossover thresholds.
//
// Cases 1-4 use spontaneous emission (noise = t), cases 5-7 the generalized
// Pauli channel (noise = p):
//   1: psi1, A = I, B = I      5: psi1, A = I, B = I (or M1, M2)
//   2: psi1, A = I, B = M1     6: psi2, A = I, B = I
//   3: psi2, A = I, B = I      7: psi2, A = H, B = I
//   4: psi2, A = H, B = I

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qmonty/game.hpp"

namespace qmonty {

inline constexpr int kCaseCount = 7;

/// Raised by threshold() when the switching coefficient keeps its sign.
class NoSignChange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a payoff curve is not of the form c0 + c1 cos(2 gamma).
class CoefficientCheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CaseSpec {
  int id;
  InitialStateKind initial;
  BuiltinStrategy alice;
  BuiltinStrategy bob;
  NoiseKind channel;
};

/// Throws std::out_of_range for ids outside 1..7.
CaseSpec case_spec(int id);

/// Throws ParameterOutOfDomain unless noise is in the case's domain
/// ([0, inf) for SE, [0, 1] for GP) and gamma in [0, pi/2].
void check_case_domain(int id, double noise, double gamma);

/// The published closed form for the case.
double closed_form_payoff(int id, double noise, double gamma);

GameConfig case_config(int id, double noise, double gamma);
/// Same case with Bob's strategy replaced; used for the degeneracy checks.
GameConfig case_config(int id, double noise, double gamma, BuiltinStrategy bob);

double simulate_case(int id, double noise, double gamma);

struct Fraction {
  std::int64_t num;
  std::int64_t den;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Exact win probability of the classical game by enumerating the nine
/// (prize, first choice) pairs.
Fraction classical_reference(bool switch_box);

struct GammaCoefficients {
  double c0;  // payoff at gamma = pi/4
  double c1;  // amplitude of cos(2 gamma)

  double at(double gamma) const noexcept;
};

GammaCoefficients gamma_coefficients(double payoff_at_0, double payoff_at_quarter_pi);

/// Fits c0, c1 from payoff(0) and payoff(pi/4), then checks the fit against
/// payoff(probe_gamma). Throws CoefficientCheckFailed beyond tol.
GammaCoefficients fit_gamma_coefficients(const std::function<double(double)>& payoff,
                                         double probe_gamma = 0.3, double tol = 1e-10);

enum class MixChoice { switch_box, not_switch, indifferent };
std::string_view to_string(MixChoice c) noexcept;

struct OptimalMix {
  double gamma;
  MixChoice choice;
};

inline constexpr double kIndifferenceTol = 1e-12;

/// c1 > tol: switch (gamma 0); c1 < -tol: stay (gamma pi/2); otherwise indifferent.
OptimalMix optimal_gamma(double c1, double tol = kIndifferenceTol);

/// c1 of the payoff curve at the given noise, from simulation.
double switch_coefficient(const GameConfig& base, double noise);

/// Bisection root of the switching coefficient in the noise parameter.
/// Throws NoSignChange if c1(lo) and c1(hi) share a sign.
double threshold(const GameConfig& base, double lo, double hi, double tol = 1e-10);
double threshold(int id, double lo, double hi, double tol = 1e-10);

/// Inclusive of hi when hi - lo is a multiple of step within 1e-12.
struct GridSpec {
  double lo;
  double hi;
  double step;

  /// Throws std::invalid_argument for a non-positive step or hi < lo.
  std::vector<double> values() const;
};

/// n evenly spaced values with both endpoints included exactly.
std::vector<double> linspace(double lo, double hi, std::size_t n);
std::vector<double> default_noise_grid(int id);
std::vector<double> default_gamma_grid();

struct SweepRow {
  double noise;
  double gamma;
  double payoff;
};

struct SweepTable {
  std::vector<double> noise_values;
  std::vector<double> gamma_values;
  std::vector<SweepRow> rows;  // noise-major, gamma-minor
};

/// Payoff at every (noise, gamma) grid point. Noise values replace the
/// strength of base.noise. Throws std::invalid_argument for empty or
/// non-ascending grids and ParameterOutOfDomain for out-of-domain values.
SweepTable sweep(const GameConfig& base, const std::vector<double>& noise_values,
                 const std::vector<double>& gamma_values,
                 const GameOperators& ops = GameOperators::canonical());
SweepTable sweep_case(int id, const std::vector<double>& noise_values,
                      const std::vector<double>& gamma_values);

struct VerifyReport {
  int case_id = 0;
  double max_error = 0.0;
  std::size_t points = 0;
  bool passed = false;
};

/// Max |simulated - closed form of formula_case| over the grid for an
/// arbitrary configuration. A mismatched config is the negative control.
VerifyReport verify_against_formula(int formula_case, const GameConfig& base,
                                    const std::vector<double>& noise_values,
                                    const std::vector<double>& gamma_values,
                                    const GameOperators& ops = GameOperators::canonical());
VerifyReport verify_case(int id, const std::vector<double>& noise_values,
                         const std::vector<double>& gamma_values);
VerifyReport verify_case(int id);

}  // namespace qmonty
