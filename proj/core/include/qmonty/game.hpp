// The quantum Monty Hall game on the register |o> (x) |b> (x) |a>:
// o is the opened box, b is Bob's choice, a is where Alice hid the prize.
//
// One round is: noise on the initial state, B on b and A on a, the opening
// operator O, then either the switching operator S or nothing (N = I).
// Bob's payoff is the probability of b == a. The classical mixing parameter
// gamma weights the switching branch by cos^2(gamma) and the staying branch by
// sin^2(gamma), so gamma = 0 is pure switching.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qmonty/channels.hpp"
#include "qmonty/linalg.hpp"

namespace qmonty {

/// Raised when a matrix offered as a player strategy is not unitary.
class NotUnitary : public std::invalid_argument {
 public:
  NotUnitary(const std::string& what, double deviation)
      : std::invalid_argument(what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

inline constexpr double kStrategyUnitaryTol = 1e-9;

/// A 3x3 unitary applied by one player to their own qutrit.
class StrategyUnitary {
 public:
  /// Throws NotUnitary unless matrix is 3x3 and unitary within 1e-9.
  StrategyUnitary(ComplexMatrix matrix, std::string name);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ComplexMatrix matrix_;
  std::string name_;
};

enum class BuiltinStrategy { identity, m1, m2, h };

/// Accepts "id" (or "identity"), "m1", "m2", "h".
std::optional<BuiltinStrategy> parse_builtin_strategy(std::string_view name);
std::string_view to_string(BuiltinStrategy s) noexcept;
StrategyUnitary builtin_strategy(BuiltinStrategy s);

enum class InitialStateKind { psi1, psi2 };

std::optional<InitialStateKind> parse_initial_state(std::string_view name);
std::string_view to_string(InitialStateKind s) noexcept;
/// psi1: |0> (x) uniform (x) uniform. psi2: |0> (x) (|00>+|11>+|22>)/sqrt(3).
PureState initial_state(InitialStateKind which);

struct GameConfig {
  PureState initial;
  std::string initial_label;
  StrategyUnitary alice;
  StrategyUnitary bob;
  NoiseSpec noise;
  double gamma = 0.0;

  /// Throws ParameterOutOfDomain for a bad gamma or noise spec and
  /// DimensionMismatch for a non-27-dimensional initial state.
  void validate() const;
};

GameConfig make_config(InitialStateKind initial, BuiltinStrategy alice, BuiltinStrategy bob,
                       NoiseSpec noise, double gamma);

/// Opening operator O: with b != a it sets o to (x + o) mod 3 where x is the
/// box that is neither b nor a; with b == a it sets o to (o + a + 1) mod 3.
ComplexMatrix open_operator();
/// Switching operator S: with o != b it replaces b by the box that is neither
/// o nor b; with o == b it is the identity.
ComplexMatrix switch_operator();
/// Diagonal projector onto the basis states with b == a.
ComplexMatrix win_projector();

/// The permutation operators used by the evolution. Tests substitute broken
/// variants here as negative controls.
struct GameOperators {
  ComplexMatrix open;
  ComplexMatrix switch_box;

  static const GameOperators& canonical();
};

struct BranchStates {
  DensityMatrix switched;  // G_s rho G_s^dagger
  DensityMatrix kept;      // G_n rho G_n^dagger
};

BranchStates evolve(const GameConfig& cfg,
                    const GameOperators& ops = GameOperators::canonical());

/// Tr[P_win rho].
double win_probability(const DensityMatrix& rho);

struct BranchPayoffs {
  double p_switch = 0.0;
  double p_not_switch = 0.0;
};

/// Payoffs of the two pure branches; independent of cfg.gamma.
BranchPayoffs branch_payoffs(const GameConfig& cfg,
                             const GameOperators& ops = GameOperators::canonical());

/// cos^2(gamma) * p_switch + sin^2(gamma) * p_not_switch.
double mix_payoff(const BranchPayoffs& branches, double gamma) noexcept;

struct GameOutcome {
  double payoff = 0.0;
  double p_switch = 0.0;
  double p_not_switch = 0.0;
  double gamma = 0.0;
};

GameOutcome play(const GameConfig& cfg, const GameOperators& ops = GameOperators::canonical());

}  // namespace qmonty
