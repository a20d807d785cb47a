#include "qmonty/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace qmonty {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= kHalfPi)) {
    throw ParameterOutOfDomain("gamma must lie in [0, pi/2], got " + std::to_string(gamma));
  }
}

void check_ascending(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + " grid is empty");
  if (!std::is_sorted(v.begin(), v.end()) ||
      std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw std::invalid_argument(std::string(what) + " grid is not strictly ascending");
  }
}

NoiseSpec noise_for_case(const CaseSpec& spec, double noise) {
  return spec.channel == NoiseKind::spontaneous_emission ? NoiseSpec::spontaneous_emission(noise)
                                                         : NoiseSpec::generalized_pauli(noise);
}

}  // namespace

CaseSpec case_spec(int id) {
  using BS = BuiltinStrategy;
  using IS = InitialStateKind;
  constexpr auto se = NoiseKind::spontaneous_emission;
  constexpr auto gp = NoiseKind::generalized_pauli;
  switch (id) {
    case 1: return {1, IS::psi1, BS::identity, BS::identity, se};
    case 2: return {2, IS::psi1, BS::identity, BS::m1, se};
    case 3: return {3, IS::psi2, BS::identity, BS::identity, se};
    case 4: return {4, IS::psi2, BS::h, BS::identity, se};
    case 5: return {5, IS::psi1, BS::identity, BS::identity, gp};
    case 6: return {6, IS::psi2, BS::identity, BS::identity, gp};
    case 7: return {7, IS::psi2, BS::h, BS::identity, gp};
    default: break;
  }
  throw std::out_of_range("case id must be in 1..7, got " + std::to_string(id));
}

void check_case_domain(int id, double noise, double gamma) {
  noise_for_case(case_spec(id), noise).validate();
  check_gamma(gamma);
}

double closed_form_payoff(int id, double noise, double gamma) {
  check_case_domain(id, noise, gamma);
  const double c2g = std::cos(2.0 * gamma);
  // Cases 1-4 are written with e = exp(-t) after dividing the exp(2t) prefactor
  // through, which keeps large t finite.
  const double e = std::exp(-noise);
  const double p = noise;
  switch (id) {
    case 1:
      return (3.0 + (-4.0 * e * e + 8.0 * e - 3.0) * c2g) / 6.0;
    case 2:
      return (3.0 + (2.0 * e * e - 4.0 * e + 3.0) * c2g) / 6.0;
    case 3:
      return (3.0 + (-8.0 * e * e + 8.0 * e - 3.0) * c2g) / 6.0;
    case 4:
      return (3.0 + 2.0 * (e - e * e) * c2g) / 6.0;
    case 5:
      return ((1.0 - p) * c2g + 3.0 - p) / 6.0;
    case 6:
      return (2.0 * p * p * p - 4.0 * p * p + (2.0 * p * p * p - 8.0 * p * p + 9.0 * p - 3.0) * c2g +
              p + 3.0) /
             6.0;
    case 7:
      return (p * p * p + (p * p - 4.0 * p + 3.0) * p * c2g - 2.0 * p * p - p + 6.0) / 12.0;
    default:
      break;
  }
  throw std::out_of_range("case id must be in 1..7");
}

GameConfig case_config(int id, double noise, double gamma) {
  return case_config(id, noise, gamma, case_spec(id).bob);
}

GameConfig case_config(int id, double noise, double gamma, BuiltinStrategy bob) {
  const CaseSpec spec = case_spec(id);
  check_case_domain(id, noise, gamma);
  return make_config(spec.initial, spec.alice, bob, noise_for_case(spec, noise), gamma);
}

double simulate_case(int id, double noise, double gamma) {
  return play(case_config(id, noise, gamma)).payoff;
}

Fraction classical_reference(bool switch_box) {
  std::int64_t wins = 0;
  std::int64_t games = 0;
  for (int prize = 0; prize < 3; ++prize) {
    for (int choice = 0; choice < 3; ++choice) {
      // Host opens the lowest-numbered box that is neither the prize nor the
      // first choice; which one is irrelevant to the outcome.
      int opened = 0;
      while (opened == prize || opened == choice) ++opened;
      const int final_choice = switch_box ? 3 - choice - opened : choice;
      wins += final_choice == prize ? 1 : 0;
      ++games;
    }
  }
  const std::int64_t g = std::gcd(wins, games);
  return {wins / g, games / g};
}

double GammaCoefficients::at(double gamma) const noexcept {
  return c0 + c1 * std::cos(2.0 * gamma);
}

GammaCoefficients gamma_coefficients(double payoff_at_0, double payoff_at_quarter_pi) {
  return {payoff_at_quarter_pi, payoff_at_0 - payoff_at_quarter_pi};
}

GammaCoefficients fit_gamma_coefficients(const std::function<double(double)>& payoff,
                                         double probe_gamma, double tol) {
  const GammaCoefficients c = gamma_coefficients(payoff(0.0), payoff(std::numbers::pi / 4.0));
  const double observed = payoff(probe_gamma);
  const double err = std::abs(c.at(probe_gamma) - observed);
  if (err > tol) {
    throw CoefficientCheckFailed("payoff is not of the form c0 + c1 cos(2 gamma): error " +
                                 std::to_string(err) + " at gamma " +
                                 std::to_string(probe_gamma));
  }
  return c;
}

std::string_view to_string(MixChoice c) noexcept {
  switch (c) {
    case MixChoice::switch_box:
      return "switch";
    case MixChoice::not_switch:
      return "not_switch";
    case MixChoice::indifferent:
      break;
  }
  return "indifferent";
}

OptimalMix optimal_gamma(double c1, double tol) {
  if (c1 > tol) return {0.0, MixChoice::switch_box};
  if (c1 < -tol) return {kHalfPi, MixChoice::not_switch};
  return {0.0, MixChoice::indifferent};
}

double switch_coefficient(const GameConfig& base, double noise) {
  GameConfig cfg = base;
  cfg.noise = base.noise.with_strength(noise);
  const BranchPayoffs b = branch_payoffs(cfg);
  return gamma_coefficients(mix_payoff(b, 0.0), mix_payoff(b, std::numbers::pi / 4.0)).c1;
}

double threshold(const GameConfig& base, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("threshold: need lo < hi");
  double f_lo = switch_coefficient(base, lo);
  const double f_hi = switch_coefficient(base, hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw NoSignChange("switching coefficient keeps its sign on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = switch_coefficient(base, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double threshold(int id, double lo, double hi, double tol) {
  check_case_domain(id, lo, 0.0);
  check_case_domain(id, hi, 0.0);
  return threshold(case_config(id, lo, 0.0), lo, hi, tol);
}

std::vector<double> GridSpec::values() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (hi < lo) throw std::invalid_argument("grid upper bound is below lower bound");

  const double span = hi - lo;
  const double k = std::round(span / step);
  std::size_t count;
  bool hits_hi = false;
  if (std::abs(span - k * step) <= 1e-12) {
    count = static_cast<std::size_t>(k) + 1;
    hits_hi = true;
  } else {
    count = static_cast<std::size_t>(std::floor(span / step)) + 1;
  }
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
  if (hits_hi) out.back() = hi;
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<double> default_noise_grid(int id) {
  const CaseSpec spec = case_spec(id);
  return linspace(0.0, spec.channel == NoiseKind::spontaneous_emission ? 3.0 : 1.0, 21);
}

std::vector<double> default_gamma_grid() { return linspace(0.0, kHalfPi, 21); }

SweepTable sweep(const GameConfig& base, const std::vector<double>& noise_values,
                 const std::vector<double>& gamma_values, const GameOperators& ops) {
  check_ascending(noise_values, "noise");
  check_ascending(gamma_values, "gamma");
  for (double g : gamma_values) check_gamma(g);
  for (double x : noise_values) base.noise.with_strength(x).validate();

  SweepTable table{noise_values, gamma_values, {}};
  table.rows.reserve(noise_values.size() * gamma_values.size());
  for (double x : noise_values) {
    GameConfig cfg = base;
    cfg.noise = base.noise.with_strength(x);
    const BranchPayoffs b = branch_payoffs(cfg, ops);
    for (double g : gamma_values) table.rows.push_back({x, g, mix_payoff(b, g)});
  }
  return table;
}

SweepTable sweep_case(int id, const std::vector<double>& noise_values,
                      const std::vector<double>& gamma_values) {
  for (double x : noise_values) check_case_domain(id, x, 0.0);
  const double first = noise_values.empty() ? 0.0 : noise_values.front();
  return sweep(case_config(id, first, 0.0), noise_values, gamma_values);
}

VerifyReport verify_against_formula(int formula_case, const GameConfig& base,
                                    const std::vector<double>& noise_values,
                                    const std::vector<double>& gamma_values,
                                    const GameOperators& ops) {
  const SweepTable table = sweep(base, noise_values, gamma_values, ops);
  VerifyReport report;
  report.case_id = formula_case;
  report.points = table.rows.size();
  for (const SweepRow& row : table.rows) {
    const double expected = closed_form_payoff(formula_case, row.noise, row.gamma);
    report.max_error = std::max(report.max_error, std::abs(row.payoff - expected));
  }
  report.passed = report.max_error <= kPayoffTol;
  return report;
}

VerifyReport verify_case(int id, const std::vector<double>& noise_values,
                         const std::vector<double>& gamma_values) {
  for (double x : noise_values) check_case_domain(id, x, 0.0);
  const double first = noise_values.empty() ? 0.0 : noise_values.front();
  return verify_against_formula(id, case_config(id, first, 0.0), noise_values, gamma_values);
}

VerifyReport verify_case(int id) {
  return verify_case(id, default_noise_grid(id), default_gamma_grid());
}

}  // namespace qmonty
