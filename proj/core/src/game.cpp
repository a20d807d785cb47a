#include "qmonty/game.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qmonty {

namespace {

// The box in {0,1,2} that is neither x nor y (x != y).
constexpr unsigned third_box(unsigned x, unsigned y) noexcept { return 3 - x - y; }

template <typename Rule>
ComplexMatrix permutation_from(Rule rule) {
  ComplexMatrix m(kRegisterDim, kRegisterDim);
  for (unsigned o = 0; o < 3; ++o) {
    for (unsigned b = 0; b < 3; ++b) {
      for (unsigned a = 0; a < 3; ++a) {
        const std::size_t to = rule(o, b, a);
        m(to, register_index(o, b, a)) = 1.0;
      }
    }
  }
  return m;
}

}  // namespace

StrategyUnitary::StrategyUnitary(ComplexMatrix matrix, std::string name)
    : matrix_(std::move(matrix)), name_(std::move(name)) {
  if (matrix_.rows() != kQutritDim || matrix_.cols() != kQutritDim) {
    throw NotUnitary("strategy '" + name_ + "' must be 3x3", std::numeric_limits<double>::infinity());
  }
  const double dev = unitarity_deviation(matrix_);
  if (dev > kStrategyUnitaryTol) {
    throw NotUnitary("strategy '" + name_ + "' is not unitary (max |U^dagger U - I| = " +
                         std::to_string(dev) + ")",
                     dev);
  }
}

std::optional<BuiltinStrategy> parse_builtin_strategy(std::string_view name) {
  if (name == "id" || name == "identity") return BuiltinStrategy::identity;
  if (name == "m1") return BuiltinStrategy::m1;
  if (name == "m2") return BuiltinStrategy::m2;
  if (name == "h") return BuiltinStrategy::h;
  return std::nullopt;
}

std::string_view to_string(BuiltinStrategy s) noexcept {
  switch (s) {
    case BuiltinStrategy::m1:
      return "m1";
    case BuiltinStrategy::m2:
      return "m2";
    case BuiltinStrategy::h:
      return "h";
    case BuiltinStrategy::identity:
      break;
  }
  return "id";
}

StrategyUnitary builtin_strategy(BuiltinStrategy s) {
  switch (s) {
    case BuiltinStrategy::m1:
      return {ComplexMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, "m1"};
    case BuiltinStrategy::m2:
      return {ComplexMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, "m2"};
    case BuiltinStrategy::h: {
      const double r2 = std::numbers::sqrt2;
      const double r7 = std::sqrt(7.0);
      const Complex i{0.0, 1.0};
      return {ComplexMatrix{
                  {1.0 / r2, 0.5, 0.5},
                  {-0.5, (3.0 - i * r7) / (4.0 * r2), (1.0 + i * r7) / (4.0 * r2)},
                  {(-1.0 - i * r7) / (4.0 * r2), (-3.0 + i * r7) / 8.0, (5.0 + i * r7) / 8.0},
              },
              "h"};
    }
    case BuiltinStrategy::identity:
      break;
  }
  return {ComplexMatrix::identity(3), "id"};
}

std::optional<InitialStateKind> parse_initial_state(std::string_view name) {
  if (name == "psi1") return InitialStateKind::psi1;
  if (name == "psi2") return InitialStateKind::psi2;
  return std::nullopt;
}

std::string_view to_string(InitialStateKind s) noexcept {
  return s == InitialStateKind::psi1 ? "psi1" : "psi2";
}

PureState initial_state(InitialStateKind which) {
  std::vector<Complex> v(kRegisterDim);
  if (which == InitialStateKind::psi1) {
    for (unsigned b = 0; b < 3; ++b) {
      for (unsigned a = 0; a < 3; ++a) v[register_index(0, b, a)] = 1.0 / 3.0;
    }
  } else {
    const double amp = 1.0 / std::sqrt(3.0);
    for (unsigned k = 0; k < 3; ++k) v[register_index(0, k, k)] = amp;
  }
  return PureState(std::move(v));
}

void GameConfig::validate() const {
  if (initial.dim() != kRegisterDim) {
    throw DimensionMismatch("initial state must have dimension 27, got " +
                            std::to_string(initial.dim()));
  }
  if (!(gamma >= 0.0 && gamma <= std::numbers::pi / 2.0)) {
    throw ParameterOutOfDomain("gamma must lie in [0, pi/2], got " + std::to_string(gamma));
  }
  noise.validate();
}

GameConfig make_config(InitialStateKind initial, BuiltinStrategy alice, BuiltinStrategy bob,
                       NoiseSpec noise, double gamma) {
  return GameConfig{initial_state(initial), std::string(to_string(initial)),
                    builtin_strategy(alice), builtin_strategy(bob), noise, gamma};
}

ComplexMatrix open_operator() {
  return permutation_from([](unsigned o, unsigned b, unsigned a) {
    const unsigned opened = b != a ? (third_box(b, a) + o) % 3 : (o + a + 1) % 3;
    return register_index(opened, b, a);
  });
}

ComplexMatrix switch_operator() {
  return permutation_from([](unsigned o, unsigned b, unsigned a) {
    const unsigned choice = o != b ? third_box(o, b) : b;
    return register_index(o, choice, a);
  });
}

ComplexMatrix win_projector() {
  ComplexMatrix p(kRegisterDim, kRegisterDim);
  for (unsigned o = 0; o < 3; ++o) {
    for (unsigned k = 0; k < 3; ++k) {
      const auto i = register_index(o, k, k);
      p(i, i) = 1.0;
    }
  }
  return p;
}

const GameOperators& GameOperators::canonical() {
  static const GameOperators ops{open_operator(), switch_operator()};
  return ops;
}

BranchStates evolve(const GameConfig& cfg, const GameOperators& ops) {
  cfg.validate();
  const DensityMatrix noisy = apply_noise(cfg.noise, density_from_pure(cfg.initial));

  const auto id = ComplexMatrix::identity(kQutritDim);
  const ComplexMatrix moves = kron(kron(id, cfg.bob.matrix()), cfg.alice.matrix());
  const ComplexMatrix opened = mat_mul(ops.open, moves);

  DensityMatrix kept(conjugate_by(opened, noisy.matrix()));
  DensityMatrix switched(conjugate_by(ops.switch_box, kept.matrix()));
  return {std::move(switched), std::move(kept)};
}

double win_probability(const DensityMatrix& rho) {
  // The projector is diagonal, so Tr[P rho] is the sum of the selected
  // diagonal entries.
  Complex sum{};
  for (unsigned o = 0; o < 3; ++o) {
    for (unsigned k = 0; k < 3; ++k) {
      const auto i = register_index(o, k, k);
      sum += rho.matrix()(i, i);
    }
  }
  if (std::abs(sum.imag()) > 1e-12) {
    throw std::logic_error("win_probability: trace has imaginary part " +
                           std::to_string(sum.imag()));
  }
  return sum.real();
}

BranchPayoffs branch_payoffs(const GameConfig& cfg, const GameOperators& ops) {
  const BranchStates states = evolve(cfg, ops);
  return {win_probability(states.switched), win_probability(states.kept)};
}

double mix_payoff(const BranchPayoffs& branches, double gamma) noexcept {
  const double c = std::cos(gamma);
  const double s = std::sin(gamma);
  return c * c * branches.p_switch + s * s * branches.p_not_switch;
}

GameOutcome play(const GameConfig& cfg, const GameOperators& ops) {
  const BranchPayoffs b = branch_payoffs(cfg, ops);
  return {mix_payoff(b, cfg.gamma), b.p_switch, b.p_not_switch, cfg.gamma};
}

}  // namespace qmonty
