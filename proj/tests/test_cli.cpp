#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace qmonty;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  const Result r = run_cli(std::move(args));
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("qmonty_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
    std::ofstream(path_) << contents;
  }
  ~TempFile() { fs::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  fs::path path_;
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("payoff by case") {
    const Result r = run_cli({"payoff", "--case", "1", "--noise", "0", "--gamma", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out ==
          "{\"payoff\":0.666666666667,\"p_switch\":0.666666666667,\"p_not_switch\":0.333333333333,"
          "\"optimal_gamma\":0,\"optimal_label\":\"switch\",\"case\":1,\"state\":\"psi1\","
          "\"alice\":\"id\",\"bob\":\"id\",\"channel\":\"se\",\"noise\":0,\"gamma\":0,\"a1\":1,"
          "\"a2\":1}\n");

    const auto five = run_json({"payoff", "--case", "5", "--noise", "1", "--gamma", "0.7"});
    CHECK(five["payoff"].get<double>() == 0.333333333333);
    CHECK(five["optimal_label"] == "indifferent");
  }

  TEST_CASE("payoff with explicit flags") {
    const auto j = run_json({"payoff", "--state", "psi2", "--alice", "h", "--bob", "id", "--channel",
                             "se", "--noise", "0.693147", "--gamma", "0"});
    CHECK(j["payoff"].get<double>() == doctest::Approx(7.0 / 12.0).epsilon(1e-6));

    const auto half_pi = run_json({"payoff", "--state", "psi2", "--gamma", "pi/2"});
    CHECK(half_pi["payoff"].get<double>() == 1.0);
    CHECK(half_pi["optimal_label"] == "not_switch");
  }

  TEST_CASE("case and explicit invocations agree to the last digit") {
    const std::vector<std::pair<std::string, std::string>> points = {
        {"0", "0"}, {"0.3", "0.2"}, {"0.5", "0.785398"}, {"0.9", "1.3"}, {"1", "pi/2"}};
    const char* states[] = {"psi1", "psi1", "psi2", "psi2", "psi1", "psi2", "psi2"};
    const char* alices[] = {"id", "id", "id", "h", "id", "id", "h"};
    const char* bobs[] = {"id", "m1", "id", "id", "id", "id", "id"};
    for (int k = 1; k <= 7; ++k) {
      const std::string channel = k <= 4 ? "se" : "gp";
      for (const auto& [noise, gamma] : points) {
        const auto by_case =
            run_json({"payoff", "--case", std::to_string(k), "--noise", noise, "--gamma", gamma});
        const auto explicit_ = run_json({"payoff", "--state", states[k - 1], "--alice",
                                         alices[k - 1], "--bob", bobs[k - 1], "--channel", channel,
                                         "--noise", noise, "--gamma", gamma});
        for (const char* key : {"payoff", "p_switch", "p_not_switch", "optimal_gamma"}) {
          CHECK(by_case[key].dump() == explicit_[key].dump());
        }
      }
    }
  }

  TEST_CASE("payoff flag errors") {
    CHECK(run_cli({"payoff", "--case", "1", "--state", "psi2", "--noise", "0", "--gamma", "0"})
              .code == cli::kUsage);
    CHECK(run_cli({"payoff", "--case", "9", "--noise", "0", "--gamma", "0"}).code == cli::kUsage);
    CHECK(run_cli({"payoff", "--case", "1", "--gamma", "0"}).code == cli::kUsage);
    CHECK(run_cli({"payoff", "--channel", "none", "--noise", "0.1", "--gamma", "0"}).code ==
          cli::kUsage);
    CHECK(run_cli({"payoff", "--channel", "gp", "--a1", "2", "--noise", "0.1", "--gamma", "0"})
              .code == cli::kUsage);
    CHECK(run_cli({"payoff", "--channel", "xx", "--gamma", "0"}).code == cli::kUsage);
    CHECK(run_cli({"payoff", "--state", "psi1"}).code == cli::kUsage);
    CHECK(run_cli({"payoff", "--gamma", "abc"}).code == cli::kUsage);
    CHECK(run_cli({}).code == cli::kUsage);
    const Result missing = run_cli({"payoff", "--alice", "/nonexistent/a.json", "--gamma", "0"});
    CHECK(missing.code == cli::kUsage);
    CHECK(missing.out.empty());
  }

  TEST_CASE("payoff domain errors") {
    CHECK(run_cli({"payoff", "--case", "6", "--noise", "1.5", "--gamma", "0"}).code ==
          cli::kOutOfDomain);
    CHECK(run_cli({"payoff", "--case", "1", "--noise", "-1", "--gamma", "0"}).code ==
          cli::kOutOfDomain);
    CHECK(run_cli({"payoff", "--case", "1", "--noise", "inf", "--gamma", "0"}).code ==
          cli::kOutOfDomain);
    CHECK(run_cli({"payoff", "--case", "1", "--noise", "0", "--gamma", "2"}).code ==
          cli::kOutOfDomain);
    CHECK(run_cli({"payoff", "--channel", "se", "--a1", "0", "--noise", "1", "--gamma", "0"})
              .code == cli::kOutOfDomain);
  }

  TEST_CASE("strategy files") {
    const TempFile identity("[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]");
    CHECK(cli::parse_strategy_file(identity.path()).matrix() == ComplexMatrix::identity(3));

    const TempFile m2("[[[0,0],[0,0],[1,0]],[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]]]");
    CHECK(cli::parse_strategy_file(m2.path()).matrix() ==
          builtin_strategy(BuiltinStrategy::m2).matrix());

    const TempFile scaled("[[[2,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]");
    CHECK_THROWS_AS(cli::parse_strategy_file(scaled.path()), NotUnitary);
    const Result r = run_cli({"payoff", "--bob", scaled.path(), "--gamma", "0"});
    CHECK(r.code == cli::kNotUnitary);
    CHECK(r.err.find("not unitary") != std::string::npos);
    CHECK(r.out.empty());

    CHECK_THROWS_AS(cli::parse_strategy_json("[[1,2]]", "x"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_strategy_json("not json", "x"), cli::UsageError);
    CHECK_THROWS_AS(
        cli::parse_strategy_json("[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1]]]", "x"),
        cli::UsageError);

    // m2 from a file gives the same answer as the builtin.
    const auto from_file = run_json({"payoff", "--bob", m2.path(), "--channel", "gp", "--noise",
                                     "0.4", "--gamma", "0.3"});
    const auto builtin = run_json(
        {"payoff", "--bob", "m2", "--channel", "gp", "--noise", "0.4", "--gamma", "0.3"});
    CHECK(from_file["payoff"].dump() == builtin["payoff"].dump());
  }

  TEST_CASE("state files") {
    std::string doc = "[";
    for (int i = 0; i < 27; ++i) {
      doc += (i ? "," : "");
      doc += (i == 0 || i == 4 || i == 8) ? "[0.5773502691896258,0]" : "[0,0]";
    }
    doc += "]";
    const TempFile psi2(doc);
    const auto from_file = run_json({"payoff", "--state", psi2.path(), "--alice", "h", "--channel",
                                     "se", "--noise", "0.5", "--gamma", "0.2"});
    const auto builtin = run_json({"payoff", "--state", "psi2", "--alice", "h", "--channel", "se",
                                   "--noise", "0.5", "--gamma", "0.2"});
    CHECK(from_file["payoff"].dump() == builtin["payoff"].dump());

    CHECK_THROWS_AS(cli::parse_state_json("[[1,0]]"), cli::UsageError);
    std::string unnormalised = "[[1,0],[1,0]";
    for (int i = 2; i < 27; ++i) unnormalised += ",[0,0]";
    unnormalised += "]";
    CHECK_THROWS_AS(cli::parse_state_json(unnormalised), cli::UsageError);
  }

  TEST_CASE("sweep CSV") {
    const Result r = run_cli({"sweep", "--case", "1", "--noise-range", "0:3:0.05", "--gamma-range",
                              "0:1.5707963:0.05"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("noise,gamma,payoff\n0,0,0.666666666667\n", 0) == 0);
    CHECK(r.out.back() == '\n');
    std::size_t lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 1 + 61 * 32);

    const Result single = run_cli(
        {"sweep", "--case", "4", "--noise-range", "0.5:0.5:1", "--gamma-range", "0:0:1"});
    CHECK(single.out == "noise,gamma,payoff\n0.5,0," +
                            cli::format_number(closed_form_payoff(4, 0.5, 0.0)) + "\n");

    CHECK(run_cli({"sweep", "--case", "6", "--noise-range", "0:1.5:0.5", "--gamma-range", "0:0:1"})
              .code == cli::kOutOfDomain);
    CHECK(run_cli({"sweep", "--case", "6", "--noise-range", "0:1", "--gamma-range", "0:0:1"}).code ==
          cli::kUsage);
    CHECK(run_cli({"sweep", "--case", "6", "--noise-range", "0:1:0", "--gamma-range", "0:0:1"})
              .code == cli::kUsage);
  }

  TEST_CASE("sweep is byte-deterministic and writes files") {
    const std::vector<std::string> args = {"sweep", "--state", "psi2", "--alice", "h", "--channel",
                                           "gp", "--noise-range", "0:1:0.1", "--gamma-range",
                                           "0:pi/2:0.1"};
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const TempFile target("");
    auto with_out = args;
    with_out.push_back("--out");
    with_out.push_back(target.path());
    const Result c = run_cli(with_out);
    CHECK(c.code == 0);
    CHECK(c.out.empty());
    std::ifstream in(target.path(), std::ios::binary);
    std::stringstream contents;
    contents << in.rdbuf();
    CHECK(contents.str() == a.out);
  }

  TEST_CASE("verify") {
    const Result all = run_cli({"verify", "--case", "all"});
    CHECK(all.code == 0);
    for (int k = 1; k <= 7; ++k) {
      CHECK(all.out.find("case " + std::to_string(k) + ": max_err=") != std::string::npos);
    }
    std::size_t passes = 0;
    for (std::size_t pos = 0; (pos = all.out.find(" pass\n", pos)) != std::string::npos; ++pos) {
      ++passes;
    }
    CHECK(passes == 7);

    const Result four = run_cli({"verify", "--case", "4"});
    CHECK(four.code == 0);
    CHECK(four.out.rfind("case 4: max_err=", 0) == 0);

    CHECK(run_cli({"verify", "--case", "8"}).code == cli::kUsage);
    CHECK(run_cli({"verify", "--case", "2", "--noise-range", "0:5:1"}).code == 0);
    CHECK(run_cli({"verify", "--case", "6", "--noise-range", "0:2:1"}).code == cli::kOutOfDomain);
  }

  TEST_CASE("threshold") {
    const auto one = run_json({"threshold", "--case", "1"});
    CHECK(one["case"] == 1);
    CHECK(std::abs(one["threshold"].get<double>() - std::log(2.0)) < 1e-8);

    const auto six = run_json({"threshold", "--case", "6"});
    CHECK(std::abs(six["threshold"].get<double>() - (3.0 - std::sqrt(3.0)) / 2.0) < 1e-8);

    const Result five = run_cli({"threshold", "--case", "5"});
    CHECK(five.code == cli::kNoSignChange);
    CHECK(five.out.empty());

    CHECK(run_cli({"threshold", "--case", "1", "--lo", "1", "--hi", "0.5"}).code == cli::kUsage);
    CHECK(run_cli({"threshold"}).code == cli::kUsage);
  }

  TEST_CASE("validate-channel") {
    const Result se = run_cli({"validate-channel", "--channel", "se", "--noise", "1.5"});
    CHECK(se.code == 0);
    CHECK(se.out.find("single: channel=SE") != std::string::npos);
    CHECK(se.out.find("extended: ") != std::string::npos);
    CHECK(se.out.find("elements=27") != std::string::npos);
    CHECK(se.out.find("fail") == std::string::npos);

    const Result gp = run_cli({"validate-channel", "--channel", "gp", "--noise", "1.0"});
    CHECK(gp.code == 0);
    CHECK(gp.out.find("elements=729") != std::string::npos);

    CHECK(run_cli({"validate-channel", "--channel", "gp", "--noise", "1.5"}).code ==
          cli::kOutOfDomain);
    CHECK(run_cli({"validate-channel", "--channel", "gp", "--noise", "0.5", "--a1", "2"}).code ==
          cli::kUsage);
    CHECK(run_cli({"validate-channel", "--channel", "none", "--noise", "0.5"}).code == cli::kUsage);
  }

  TEST_CASE("number parsing and formatting") {
    CHECK(cli::parse_real("pi/2") == std::numbers::pi / 2.0);
    CHECK(cli::parse_real("pi") == std::numbers::pi);
    CHECK(cli::parse_real("3*pi/4") == 3.0 * std::numbers::pi / 4.0);
    CHECK(cli::parse_real("0.25") == 0.25);
    CHECK_THROWS_AS(cli::parse_real("pi/0"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real("2pi"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real("1.5x"), cli::UsageError);

    CHECK(cli::format_number(2.0 / 3.0) == "0.666666666667");
    CHECK(cli::format_number(1.0) == "1");
    CHECK(cli::format_number(-0.0) == "0");
    CHECK(cli::format_number(0.05) == "0.05");

    const auto grid = cli::parse_range("0:pi/2:0.5");
    CHECK(grid.hi == std::numbers::pi / 2.0);
    CHECK_THROWS_AS(cli::parse_range("0:1:2:3"), cli::UsageError);
  }

  TEST_CASE("help goes to stdout and exits 0") {
    const Result r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("payoff") != std::string::npos);
  }
}
