#include "floorpoly_cli/app.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = floorpoly::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("floorpoly_cli_test_" + name);
}

class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~EnvGuard() { ::unsetenv(name_); }
  EnvGuard(const EnvGuard&) = delete;
  EnvGuard& operator=(const EnvGuard&) = delete;

 private:
  const char* name_;
};

}  // namespace

TEST(CliExpand, Examples) {
  auto r = run({"expand", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x0\n");
  r = run({"expand", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x0*fl(x1) + x1*fl(x0) - fl(x0)*fl(x1) + fr(x0)*fr(x1)\n");
  r = run({"expand", "3", "--certify"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("all residual coefficients zero"), std::string::npos);
  EXPECT_NE(r.out.find("certificate: PASS"), std::string::npos);
}

TEST(CliExpand, JsonListsEveryTerm) {
  const auto r = run({"expand", "4", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"term_count\": 26"), std::string::npos);
  EXPECT_NE(r.out.find("\"schema_version\": 1"), std::string::npos);
}

TEST(CliExpand, GuardsMapToUsageErrors) {
  EXPECT_EQ(run({"expand", "21"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"expand", "0"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"expand", "10", "--certify"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"expand"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"expand", "2", "--format", "xml"}).code, floorpoly::cli::kExitUsage);
}

TEST(CliVerify, Suites) {
  auto r = run({"verify", "identity", "--n", "4", "--trials", "100", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out, "verify identity: pass (100 trials, seed 1)\n");
  r = run({"verify", "lemma1", "--k", "3", "--l", "1", "--trials", "50", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  r = run({"verify", "partition", "--n", "12", "--trials", "100", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  r = run({"verify", "lemma1", "--k", "2", "--l", "3", "--trials", "20", "--format", "json"});
  EXPECT_NE(r.out.find("\"result\": \"pass\""), std::string::npos);
  EXPECT_NE(r.out.find("\"seed\": 1"), std::string::npos);
}

TEST(CliVerify, BadArguments) {
  EXPECT_EQ(run({"verify", "nothing"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"verify", "identity", "--trials", "0"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"verify", "partition", "--n", "31"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"verify", "lemma1", "--k", "11"}).code, floorpoly::cli::kExitUsage);
}

TEST(CliFkl, EvaluatesPoint) {
  auto r = run({"fkl", "--k", "2", "--l", "3", "--y", "1/12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "k = 2, l = 3, y = (1/12)\nabar = (1/2)\nbbar = (0)\nf = 1/24\n");
  r = run({"fkl", "--k", "3", "--l", "1", "--y", "1/3,2/7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run({"fkl", "--k", "3", "--l", "1", "--y", "1/3"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"fkl", "--k", "2", "--l", "1", "--y", "3/2"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"fkl", "--k", "2", "--l", "1", "--y", "x"}).code, floorpoly::cli::kExitUsage);
}

TEST(CliWitness, ReportsSeed) {
  const auto r = run({"witness", "--k", "3", "--samples", "100000", "--seed", "5", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"seed\": 5"), std::string::npos);
  EXPECT_NE(r.out.find("\"witnessed\": true"), std::string::npos);
  EXPECT_EQ(run({"witness", "--k", "2"}).code, floorpoly::cli::kExitUsage);
}

TEST(CliDist, DegenerateIntegerAlpha) {
  const auto r = run({"dist", "--variant", "power-chain", "--alpha", "rat:3", "--k", "2", "--n", "100"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("consistent-nonuniform"), std::string::npos);
}

TEST(CliDist, ReportAndCsvAreReproducible) {
  const auto j1 = temp_path("a.json");
  const auto j2 = temp_path("b.json");
  const auto c1 = temp_path("a.csv");
  const auto c2 = temp_path("b.csv");
  const std::vector<std::string> base{"dist", "--variant", "theorem-combination", "--alpha", "pi", "--k", "3",
                                      "--n", "3000"};
  auto a = base;
  a.insert(a.end(), {"--out", j1.string(), "--csv", c1.string()});
  auto b = base;
  b.insert(b.end(), {"--out", j2.string(), "--csv", c2.string(), "--jobs", "3"});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  const std::string ja = slurp(j1);
  const std::string jb = slurp(j2);
  // identical apart from the recorded worker count
  EXPECT_EQ(ja.substr(0, ja.find("\"jobs\"")), jb.substr(0, jb.find("\"jobs\"")));
  EXPECT_EQ(ja.substr(ja.find("\"harmonics\"")), jb.substr(jb.find("\"harmonics\"")));
  EXPECT_EQ(slurp(c1), slurp(c2));
  ASSERT_EQ(run(a).code, 0);
  EXPECT_EQ(slurp(j1), ja);
  EXPECT_NE(ja.find("\"schema_version\": 1"), std::string::npos);
  EXPECT_NE(ja.find("\"library_version\""), std::string::npos);
  EXPECT_NE(ja.find("\"verdict\""), std::string::npos);
  // CSV: one value per line, 17 significant digits
  std::istringstream lines(slurp(c1));
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    ++count;
    const double v = std::stod(line);
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  EXPECT_EQ(count, 3000U);
  for (const auto& p : {j1, j2, c1, c2}) std::filesystem::remove(p);
}

TEST(CliDist, OutsideHypothesisLabel) {
  const auto r = run({"dist", "--alpha", "root:2,2", "--k", "3", "--n", "500", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("outside-theorem-hypothesis"), std::string::npos);
  EXPECT_NE(r.out.find("\"within_theorem_hypothesis\": false"), std::string::npos);
}

TEST(CliDist, PrecisionFailureExitCode) {
  const auto r = run({"dist", "--variant", "power-chain", "--alpha", "pi", "--k", "1", "--n", "500",
                      "--precision-cap", "2"});
  EXPECT_EQ(r.code, floorpoly::cli::kExitPrecisionFailure);
  EXPECT_NE(r.err.find("precision failure"), std::string::npos);
}

TEST(CliDist, EnvironmentOverrides) {
  {
    EnvGuard cap("FLOORPOLY_PRECISION_CAP", "256");
    EnvGuard jobs("FLOORPOLY_JOBS", "2");
    const auto r = run({"dist", "--alpha", "pi", "--k", "2", "--n", "200", "--format", "json"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"precision_cap\": 256"), std::string::npos);
    EXPECT_NE(r.out.find("\"jobs\": 2"), std::string::npos);
    // an explicit flag wins
    const auto f = run({"dist", "--alpha", "pi", "--k", "2", "--n", "200", "--format", "json", "--jobs", "1"});
    EXPECT_NE(f.out.find("\"jobs\": 1"), std::string::npos);
  }
  EnvGuard bad("FLOORPOLY_JOBS", "many");
  EXPECT_EQ(run({"dist", "--alpha", "pi", "--n", "10"}).code, floorpoly::cli::kExitUsage);
}

TEST(CliDist, BadSpecs) {
  EXPECT_EQ(run({"dist", "--alpha", "e"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"dist", "--alpha", "pi", "--variant", "spiral"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"dist", "--alpha", "pi", "--n", "0"}).code, floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"dist", "--variant", "nested-alpha", "--alpha", "pi", "--k", "2"}).code,
            floorpoly::cli::kExitUsage);
  EXPECT_EQ(run({"dist"}).code, floorpoly::cli::kExitUsage);
}
