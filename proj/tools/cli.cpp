#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

namespace qmonty::cli {

namespace {

using Json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Complex parse_pair(const Json& entry, const std::string& where) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
    throw UsageError(where + ": expected [re, im] pair of numbers");
  }
  return {entry[0].get<double>(), entry[1].get<double>()};
}

Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

// Flat JSON object with numbers pre-formatted, written in insertion order.
class JsonLine {
 public:
  JsonLine& number(std::string key, double v) { return raw(std::move(key), format_number(v)); }
  JsonLine& integer(std::string key, long long v) { return raw(std::move(key), std::to_string(v)); }
  JsonLine& text(std::string key, std::string_view v) {
    return raw(std::move(key), Json(std::string(v)).dump());
  }

  void write(std::ostream& out) const {
    out << '{';
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i) out << ',';
      out << Json(fields_[i].first).dump() << ':' << fields_[i].second;
    }
    out << "}\n";
  }

 private:
  JsonLine& raw(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  std::vector<std::pair<std::string, std::string>> fields_;
};

// Game selection flags shared by payoff and sweep.
struct GameFlags {
  int case_id = 0;
  std::string state = "psi1";
  std::string alice = "id";
  std::string bob = "id";
  std::string channel = "none";
  double a1 = 1.0;
  double a2 = 1.0;

  CLI::Option* case_opt = nullptr;
  CLI::Option* a1_opt = nullptr;
  CLI::Option* a2_opt = nullptr;

  void add_to(CLI::App& cmd) {
    case_opt = cmd.add_option("--case", case_id, "Benchmark case 1..7");
    auto* state_opt = cmd.add_option("--state", state, "psi1, psi2 or a state file");
    auto* alice_opt = cmd.add_option("--alice", alice, "id, h or a strategy file");
    auto* bob_opt = cmd.add_option("--bob", bob, "id, m1, m2 or a strategy file");
    auto* channel_opt = cmd.add_option("--channel", channel, "none, se or gp")
                            ->check(CLI::IsMember({"none", "se", "gp"}));
    a1_opt = cmd.add_option("--a1", a1, "Einstein coefficient A1 (se only)");
    a2_opt = cmd.add_option("--a2", a2, "Einstein coefficient A2 (se only)");
    for (auto* opt : {state_opt, alice_opt, bob_opt, channel_opt, a1_opt, a2_opt}) {
      case_opt->excludes(opt);
    }
  }

  bool uses_case() const { return case_opt->count() > 0; }

  NoiseKind kind() const {
    if (uses_case()) return case_spec(case_id).channel;
    if (channel == "se") return NoiseKind::spontaneous_emission;
    if (channel == "gp") return NoiseKind::generalized_pauli;
    return NoiseKind::none;
  }

  // Builds the base config; the noise strength and gamma are filled in later.
  GameConfig base_config() const {
    if (uses_case()) {
      if (case_id < 1 || case_id > kCaseCount) {
        throw UsageError("--case must be in 1..7");
      }
      const CaseSpec spec = case_spec(case_id);
      NoiseSpec noise;
      noise.kind = spec.channel;
      return make_config(spec.initial, spec.alice, spec.bob, noise, 0.0);
    }
    if ((a1_opt->count() || a2_opt->count()) && channel != "se") {
      throw UsageError("--a1/--a2 only apply to --channel se");
    }
    NoiseSpec noise;
    noise.kind = kind();
    noise.a1 = a1;
    noise.a2 = a2;
    return GameConfig{load_state(), state, load_strategy(alice), load_strategy(bob), noise, 0.0};
  }

  PureState load_state() const {
    if (auto kind = parse_initial_state(state)) return initial_state(*kind);
    return parse_state_file(state);
  }

  static StrategyUnitary load_strategy(const std::string& name) {
    if (auto s = parse_builtin_strategy(name)) return builtin_strategy(*s);
    return parse_strategy_file(name);
  }

  void echo(JsonLine& json, const GameConfig& cfg) const {
    if (uses_case()) json.integer("case", case_id);
    json.text("state", uses_case() ? cfg.initial_label : state);
    json.text("alice", uses_case() ? cfg.alice.name() : alice);
    json.text("bob", uses_case() ? cfg.bob.name() : bob);
    json.text("channel", to_string(cfg.noise.kind));
    json.number("noise", cfg.noise.strength());
    json.number("gamma", cfg.gamma);
    if (cfg.noise.kind == NoiseKind::spontaneous_emission) {
      json.number("a1", cfg.noise.a1);
      json.number("a2", cfg.noise.a2);
    }
  }
};

double parse_noise(const std::string& text) {
  const double v = parse_real(text);
  if (!std::isfinite(v)) {
    throw ParameterOutOfDomain("noise must be finite; use t=40 for the long-time limit");
  }
  return v;
}

int cmd_payoff(const GameFlags& flags, const std::string& noise_text, bool noise_given,
               const std::string& gamma_text, double indifference_tol, std::ostream& out) {
  GameConfig cfg = flags.base_config();
  if (cfg.noise.kind == NoiseKind::none) {
    if (noise_given) throw UsageError("--noise has no effect with --channel none");
  } else {
    if (!noise_given) throw UsageError("--noise is required for this channel");
    cfg.noise = cfg.noise.with_strength(parse_noise(noise_text));
  }
  cfg.gamma = parse_real(gamma_text);
  cfg.validate();

  const GameOutcome outcome = play(cfg);
  const double c1 = gamma_coefficients(mix_payoff({outcome.p_switch, outcome.p_not_switch}, 0.0),
                                       mix_payoff({outcome.p_switch, outcome.p_not_switch},
                                                  std::numbers::pi / 4.0))
                        .c1;
  const OptimalMix best = optimal_gamma(c1, indifference_tol);

  JsonLine json;
  json.number("payoff", outcome.payoff)
      .number("p_switch", outcome.p_switch)
      .number("p_not_switch", outcome.p_not_switch)
      .number("optimal_gamma", best.gamma)
      .text("optimal_label", to_string(best.choice));
  flags.echo(json, cfg);
  json.write(out);
  return kOk;
}

void write_csv(const SweepTable& table, std::ostream& out) {
  out << "noise,gamma,payoff\n";
  for (const SweepRow& row : table.rows) {
    out << format_number(row.noise) << ',' << format_number(row.gamma) << ','
        << format_number(row.payoff) << '\n';
  }
}

int cmd_sweep(const GameFlags& flags, const std::string& noise_range,
              const std::string& gamma_range, const std::string& out_path, std::ostream& out) {
  const GameConfig base = flags.base_config();
  const std::vector<double> noise = parse_range(noise_range).values();
  const std::vector<double> gamma = parse_range(gamma_range).values();
  for (double x : noise) {
    if (!std::isfinite(x)) throw ParameterOutOfDomain("noise must be finite");
  }
  const SweepTable table = sweep(base, noise, gamma);

  if (out_path.empty()) {
    write_csv(table, out);
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + out_path + "'");
    write_csv(table, file);
  }
  return kOk;
}

int cmd_verify(const std::string& which, const std::string& noise_range,
               const std::string& gamma_range, std::ostream& out) {
  std::vector<int> cases;
  if (which == "all") {
    for (int k = 1; k <= kCaseCount; ++k) cases.push_back(k);
  } else {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(which, &used);
      if (used != which.size()) throw std::invalid_argument(which);
    } catch (const std::exception&) {
      throw UsageError("--case must be 1..7 or all");
    }
    if (k < 1 || k > kCaseCount) throw UsageError("--case must be 1..7 or all");
    cases.push_back(k);
  }

  bool all_passed = true;
  for (int k : cases) {
    const auto noise = noise_range.empty() ? default_noise_grid(k) : parse_range(noise_range).values();
    const auto gamma = gamma_range.empty() ? default_gamma_grid() : parse_range(gamma_range).values();
    const VerifyReport report = verify_case(k, noise, gamma);
    char err_buf[32];
    std::snprintf(err_buf, sizeof err_buf, "%.3e", report.max_error);
    out << "case " << k << ": max_err=" << err_buf << ' ' << (report.passed ? "pass" : "fail")
        << '\n';
    all_passed = all_passed && report.passed;
  }
  return all_passed ? kOk : kCheckFailed;
}

std::pair<double, double> default_threshold_bracket(int id) {
  switch (id) {
    case 1:
      return {0.1, 2.0};
    case 6:
      return {0.1, 0.99};
    default:
      break;
  }
  return case_spec(id).channel == NoiseKind::spontaneous_emission ? std::pair{0.01, 3.0}
                                                                  : std::pair{0.01, 0.99};
}

int cmd_threshold(int id, const CLI::Option* lo_opt, double lo, const CLI::Option* hi_opt,
                  double hi, double tol, std::ostream& out) {
  if (id < 1 || id > kCaseCount) throw UsageError("--case must be in 1..7");
  const auto [default_lo, default_hi] = default_threshold_bracket(id);
  if (!lo_opt->count()) lo = default_lo;
  if (!hi_opt->count()) hi = default_hi;
  if (!(lo < hi)) throw UsageError("--lo must be below --hi");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");

  const double root = threshold(id, lo, hi, tol);
  JsonLine json;
  json.integer("case", id).number("threshold", root);
  json.write(out);
  return kOk;
}

int cmd_validate_channel(const std::string& channel, const std::string& noise_text,
                         const CLI::Option* a1_opt, double a1, const CLI::Option* a2_opt,
                         double a2, std::ostream& out) {
  if ((a1_opt->count() || a2_opt->count()) && channel != "se") {
    throw UsageError("--a1/--a2 only apply to --channel se");
  }
  const double noise = parse_noise(noise_text);
  const KrausChannel single =
      channel == "se" ? se_single(noise, a1, a2) : gp_single(noise);
  const KrausChannel extended = extend_three(single);

  const CptpReport single_report = validate_cptp(single);
  const CptpReport extended_report = validate_cptp(extended);

  auto line = [&out](const char* scope, const KrausChannel& ch, const CptpReport& r) {
    char dev[32];
    std::snprintf(dev, sizeof dev, "%.3e", r.max_deviation);
    out << scope << ": channel=" << ch.label() << " elements=" << ch.elements().size()
        << " max_dev=" << dev << ' ' << (r.passed ? "pass" : "fail") << '\n';
  };
  line("single", single, single_report);
  line("extended", extended, extended_report);
  return single_report.passed && extended_report.passed ? kOk : kCheckFailed;
}

}  // namespace

double parse_real(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw UsageError("expected a number");

  auto to_double = [](const std::string& part) {
    try {
      std::size_t used = 0;
      const double v = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      return v;
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + part + "'");
    }
  };

  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) return to_double(s);

  // [K*]pi[/N]
  double factor = 1.0;
  if (pi_pos > 0) {
    if (s[pi_pos - 1] != '*') throw UsageError("malformed pi expression: '" + s + "'");
    factor = to_double(s.substr(0, pi_pos - 1));
  }
  double divisor = 1.0;
  const std::string rest = s.substr(pi_pos + 2);
  if (!rest.empty()) {
    if (rest[0] != '/') throw UsageError("malformed pi expression: '" + s + "'");
    divisor = to_double(rest.substr(1));
    if (divisor == 0.0) throw UsageError("division by zero in '" + s + "'");
  }
  return factor * std::numbers::pi / divisor;
}

GridSpec parse_range(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw UsageError("range must be LO:HI:STEP, got '" + std::string(text) + "'");
  }
  GridSpec grid{parse_real(text.substr(0, first)),
                parse_real(text.substr(first + 1, second - first - 1)),
                parse_real(text.substr(second + 1))};
  if (!(grid.step > 0.0)) throw UsageError("range step must be positive");
  if (grid.hi < grid.lo) throw UsageError("range HI must not be below LO");
  return grid;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

StrategyUnitary parse_strategy_json(std::string_view text, const std::string& name) {
  const Json doc = parse_json(text, name);
  if (!doc.is_array() || doc.size() != 3) throw UsageError(name + ": expected an array of 3 rows");
  std::vector<Complex> entries;
  entries.reserve(9);
  for (std::size_t r = 0; r < 3; ++r) {
    const Json& row = doc[r];
    if (!row.is_array() || row.size() != 3) {
      throw UsageError(name + ": row " + std::to_string(r) + " must have 3 entries");
    }
    for (std::size_t c = 0; c < 3; ++c) {
      entries.push_back(
          parse_pair(row[c], name + ": entry (" + std::to_string(r) + "," + std::to_string(c) + ")"));
    }
  }
  return StrategyUnitary(ComplexMatrix(3, 3, std::move(entries)), name);
}

StrategyUnitary parse_strategy_file(const std::string& path) {
  return parse_strategy_json(read_file(path), path);
}

PureState parse_state_json(std::string_view text) {
  const Json doc = parse_json(text, "state");
  if (!doc.is_array() || doc.size() != kRegisterDim) {
    throw UsageError("state: expected an array of 27 [re, im] pairs");
  }
  std::vector<Complex> amps;
  amps.reserve(kRegisterDim);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    amps.push_back(parse_pair(doc[i], "state: amplitude " + std::to_string(i)));
  }
  const double n = norm(amps);
  if (!(std::abs(n - 1.0) <= 1e-6)) {
    throw UsageError("state: norm " + std::to_string(n) + " is not 1");
  }
  for (Complex& z : amps) z /= n;
  return PureState(std::move(amps));
}

PureState parse_state_file(const std::string& path) { return parse_state_json(read_file(path)); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noisy quantum Monty Hall simulator", "qmonty"};
  app.require_subcommand(1);

  // payoff
  GameFlags payoff_flags;
  std::string payoff_noise;
  std::string payoff_gamma;
  double indifference_tol = kIndifferenceTol;
  auto* payoff = app.add_subcommand("payoff", "Expected payoff of one game as JSON");
  payoff_flags.add_to(*payoff);
  auto* payoff_noise_opt = payoff->add_option("--noise", payoff_noise, "t (se) or p (gp)");
  payoff->add_option("--gamma", payoff_gamma, "Mixing angle in radians (pi/2 accepted)")
      ->required();
  payoff->add_option("--indifference-tol", indifference_tol,
                     "Switch coefficient magnitude treated as indifferent");

  // sweep
  GameFlags sweep_flags;
  std::string noise_range;
  std::string gamma_range;
  std::string out_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Payoff over a noise x gamma grid as CSV");
  sweep_flags.add_to(*sweep_cmd);
  sweep_cmd->add_option("--noise-range", noise_range, "LO:HI:STEP")->required();
  sweep_cmd->add_option("--gamma-range", gamma_range, "LO:HI:STEP")->required();
  sweep_cmd->add_option("--out", out_path, "Write CSV here instead of stdout");

  // verify
  std::string verify_which = "all";
  std::string verify_noise;
  std::string verify_gamma;
  auto* verify = app.add_subcommand("verify", "Compare simulation with the closed forms");
  verify->add_option("--case", verify_which, "1..7 or all");
  verify->add_option("--noise-range", verify_noise, "LO:HI:STEP (default: 21 points)");
  verify->add_option("--gamma-range", verify_gamma, "LO:HI:STEP (default: 21 points)");

  // threshold
  int threshold_case = 0;
  double lo = 0.0;
  double hi = 0.0;
  double tol = 1e-10;
  auto* threshold_cmd = app.add_subcommand("threshold", "Noise level where the optimal move flips");
  threshold_cmd->add_option("--case", threshold_case, "Benchmark case 1..7")->required();
  auto* lo_opt = threshold_cmd->add_option("--lo", lo, "Lower bracket");
  auto* hi_opt = threshold_cmd->add_option("--hi", hi, "Upper bracket");
  threshold_cmd->add_option("--tol", tol, "Bisection tolerance");

  // validate-channel
  std::string vc_channel;
  std::string vc_noise;
  double vc_a1 = 1.0;
  double vc_a2 = 1.0;
  auto* vc = app.add_subcommand("validate-channel", "Check Kraus completeness");
  vc->add_option("--channel", vc_channel, "se or gp")
      ->required()
      ->check(CLI::IsMember({"se", "gp"}));
  vc->add_option("--noise", vc_noise, "t (se) or p (gp)")->required();
  auto* vc_a1_opt = vc->add_option("--a1", vc_a1, "Einstein coefficient A1");
  auto* vc_a2_opt = vc->add_option("--a2", vc_a2, "Einstein coefficient A2");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kUsage;
  }

  try {
    if (payoff->parsed()) {
      return cmd_payoff(payoff_flags, payoff_noise, payoff_noise_opt->count() > 0, payoff_gamma,
                        indifference_tol, out);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_flags, noise_range, gamma_range, out_path, out);
    if (verify->parsed()) return cmd_verify(verify_which, verify_noise, verify_gamma, out);
    if (threshold_cmd->parsed()) {
      return cmd_threshold(threshold_case, lo_opt, lo, hi_opt, hi, tol, out);
    }
    if (vc->parsed()) {
      return cmd_validate_channel(vc_channel, vc_noise, vc_a1_opt, vc_a1, vc_a2_opt, vc_a2, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotUnitary& e) {
    err << "error: " << e.what() << '\n';
    return kNotUnitary;
  } catch (const ParameterOutOfDomain& e) {
    err << "error: " << e.what() << '\n';
    return kOutOfDomain;
  } catch (const NoSignChange& e) {
    err << "error: " << e.what() << '\n';
    return kNoSignChange;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace qmonty::cli
