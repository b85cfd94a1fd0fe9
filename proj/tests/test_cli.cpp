#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json_io.hpp"

using namespace hhkit;
using hhkit::cli::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Scoped environment variable.
class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~EnvGuard() { ::unsetenv(name_); }

 private:
  const char* name_;
};

const std::string kScenario =
    R"({"function":{"kind":"power_premise","base":"exp","a":0.1,"q":2,"seed":7},)"
    R"("weight":{"kind":"polynomial","coefficients":[0,2]},"theorem":"thmA2","alpha_j":{"atoms":[[0.1,2]]},"grid":17})";

}  // namespace

TEST(Cli, EvalTakagiCsv) {
  const Result r = run({"eval-takagi", "--kind", "T", "--q", "1", "--points", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "t,value");
  EXPECT_EQ(rows[3], "0.5,1");
  EXPECT_EQ(rows[1], "0,0");
  const Result both = run({"eval-takagi", "--kind", "both", "--q", "2", "--points", "3"});
  EXPECT_EQ(lines(both.out)[0], "t,T,S");
  EXPECT_EQ(lines(both.out)[2], "0.5,1,1");
}

TEST(Cli, TransformExample) {
  const Result r =
      run({"transform", "--direction", "jensen-to-hh", "--atoms", "[[1,1]]", "--weight", "constant", "--kind", "T"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{\"atoms\":[[1.0,1]],\"lambda\":0.5}\n");
}

TEST(Cli, CompareConstantsExample) {
  const Result r = run({"compare-constants", "--q", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "T_smaller 0.5 0.5714285714\n");
  EXPECT_EQ(run({"compare-constants", "--q", "1.5"}).out.substr(0, 9), "S_smaller");
}

TEST(Cli, TransformOutputReadsBack) {
  const Result s = run({"transform", "--direction", "jensen-to-hh", "--atoms", "[[0.5,1.5],[2,3]]", "--weight",
                        R"({"kind":"polynomial","coefficients":[0,6,-6]})", "--kind", "S"});
  ASSERT_EQ(s.code, 0) << s.err;
  const json j = json::parse(s.out);
  const RadialErrorFunction back = cli::error_from_json(j);
  ASSERT_TRUE(back.power_form().has_value());
  EXPECT_EQ(back.power_form()->atoms().size(), 2u);
  // Feed the emitted JSON straight back in.
  const Result again = run({"transform", "--direction", "hh-to-jensen", "--error", s.out});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_TRUE(json::parse(again.out).contains("atoms"));

  const Result prof = run({"transform", "--direction", "jensen-to-lower-hh", "--error",
                           R"({"kind":"profile","samples":[[0,0],[1,1],[2,4]]})"});
  ASSERT_EQ(prof.code, 0) << prof.err;
  const RadialErrorFunction tab = cli::error_from_json(json::parse(prof.out));
  EXPECT_EQ(tab.samples().size(), 3u);
}

TEST(Cli, WeightAndReportRoundTrip) {
  for (const std::string text : {R"({"kind":"constant","value":1.0})", R"({"kind":"polynomial","coefficients":[0.0,2.0]})",
                                 R"({"kind":"piecewise","knots":[0.0,0.5,1.0],"values":[0.0,2.0,0.0]})"}) {
    const json j = json::parse(text);
    EXPECT_EQ(cli::weight_to_json(cli::weight_from_json(j)), j);
  }
  CheckReport r;
  r.check = "jensen";
  r.pass = false;
  r.max_violation = 0.25;
  r.tolerance = 1e-6;
  r.samples_checked = 10;
  r.witness = {0.0, 1.0};
  r.witness_names = {"u", "v"};
  const json j = cli::report_to_json(r);
  EXPECT_EQ(cli::report_to_json(cli::report_from_json(j)), j);
}

TEST(Cli, VerifyExitCodesAndDeterminism) {
  const Result fail = run({"verify", "--scenario",
                           R"({"function":{"kind":"polynomial","coefficients":[0,1,-1]},"check":"jensen","error":{"kind":"constant","value":0}})"});
  EXPECT_EQ(fail.code, 1);
  const json report = json::parse(fail.out);
  EXPECT_FALSE(report.at("pass").get<bool>());
  EXPECT_NEAR(report.at("max_violation").get<double>(), 0.25, 1e-12);

  const Result a = run({"verify", "--scenario", kScenario, "--threads", "1"});
  const Result b = run({"verify", "--scenario", kScenario, "--threads", "3"});
  ASSERT_EQ(a.code, 0) << a.err << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out).at("status"), "pass");
  const Result other_seed = run({"verify", "--scenario", kScenario, "--seed", "8"});
  EXPECT_EQ(other_seed.code, 0);
  EXPECT_NE(other_seed.out, a.out);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"eval-takagi", "--q", "-1"}).code, 2);
  EXPECT_EQ(run({"eval-takagi", "--kind", "X"}).code, 2);
  EXPECT_EQ(run({"transform", "--direction", "sideways", "--atoms", "[[1,1]]"}).code, 2);
  EXPECT_EQ(run({"transform", "--direction", "jensen-to-hh", "--atoms", "[[1,"}).code, 2);
  EXPECT_EQ(run({"build-psi", "--weight", R"({"kind":"polynomial","coefficients":[1,-3]})"}).code, 2);
  EXPECT_EQ(run({"verify", "--scenario", R"({"theorem":"thm1"})"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, QuadratureTolerancePrecedence) {
  {
    EnvGuard env("HHKIT_QUAD_TOL", "not-a-number");
    EXPECT_EQ(run({"compare-constants", "--q", "2"}).code, 2);
    // The flag wins over the environment, so the bad value is never read.
    EXPECT_EQ(run({"--quad-tol", "1e-8", "compare-constants", "--q", "2"}).code, 0);
  }
  {
    EnvGuard env("HHKIT_QUAD_TOL", "1e-3");
    const Result loose = run({"build-psi", "--weight", R"({"kind":"polynomial","coefficients":[0,2]})", "--format",
                              "json", "--points", "2"});
    ASSERT_EQ(loose.code, 0) << loose.err;
  }
  EXPECT_EQ(run({"--quad-tol", "0", "compare-constants", "--q", "2"}).code, 2);
}

TEST(Cli, BuildPsi) {
  const Result r = run({"build-psi", "--weight", R"({"kind":"polynomial","coefficients":[0,2]})", "--points", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "t,value");
  // ψ(t) = 1/3 + 4t/3 for ρ = 2t, up to the 2^{-30} truncation.
  EXPECT_NEAR(std::stod(rows[2].substr(rows[2].find(',') + 1)), 1.0, 1e-8);
}
