#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"

namespace cli = poissonlab::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& document) {
  std::vector<std::vector<std::string>> table;
  std::istringstream in(cli::csv_body(document));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    table.push_back(cells);
  }
  return table;
}

std::size_t col(const std::vector<std::vector<std::string>>& t, const std::string& name) {
  const auto& h = t.at(0);
  return static_cast<std::size_t>(std::find(h.begin(), h.end(), name) - h.begin());
}

}  // namespace

TEST(Cli, ManifestHeader) {
  const auto r = run({"besov", "--density", "uniform", "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(r.out.substr(0, 2), "# ");
  const auto manifest = nlohmann::json::parse(r.out.substr(2, r.out.find('\n') - 2));
  EXPECT_EQ(manifest["command"], "besov");
  EXPECT_EQ(manifest["seed"], 0);
  EXPECT_TRUE(manifest.contains("version"));
  EXPECT_TRUE(manifest.contains("duration_s"));
  EXPECT_EQ(manifest["flags"]["density"], "uniform");
}

TEST(Cli, CounterexampleRows) {
  const auto r = run({"counterexample", "--n", "1000", "--beta", "0.6", "--reps", "10000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[2][col(t, "model")], "poisson");
  EXPECT_EQ(t[2][col(t, "P_K_lt_m_kind")], "exact");
  const auto r2 = run({"counterexample", "--n", "1000,2000", "--reps", "100"});
  const auto t2 = rows(r2.out);
  EXPECT_EQ(t2[1][col(t2, "limit")], t2[3][col(t2, "limit")]);
  EXPECT_EQ(t2[2][col(t2, "limit")], t2[4][col(t2, "limit")]);
}

TEST(Cli, CounterexamplePoissonAtMillion) {
  const auto r = run({"counterexample", "--n", "1000000", "--reps", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = rows(r.out);
  EXPECT_EQ(t[1][col(t, "P_K_lt_m_kind")], "mc");
  EXPECT_NEAR(std::stod(t[2][col(t, "P_K_lt_m")]), 0.01906, 0.01);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"counterexample", "--n", "99"}).code, 2);
  EXPECT_EQ(run({"counterexample", "--n", "1000", "--beta", "0.5"}).code, 2);
  EXPECT_EQ(run({"counterexample", "--n", "1000", "--beta", "1"}).code, 2);
  EXPECT_EQ(run({"estimator-risk", "--n", "1024", "--metric", "kl"}).code, 2);
  EXPECT_EQ(run({"estimator-risk", "--n", "1024", "--density", "nope"}).code, 2);
  EXPECT_EQ(run({"besov", "--density", "uniform", "--resolution", "48"}).code, 2);
  EXPECT_EQ(run({"bounds", "--check", "lemma2", "--n", "-5"}).code, 2);
  EXPECT_EQ(run({"bounds", "--check", "lemma9"}).code, 2);
  EXPECT_EQ(run({"tail", "--lambda", "abc"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, EstimatorRiskOracleAndScaledHellinger) {
  const auto o = run({"estimator-risk", "--n", "1024", "--estimator", "oracle", "--reps", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto to = rows(o.out);
  EXPECT_EQ(std::stod(to[1][col(to, "risk")]), 0.0);

  const auto h = rows(run({"estimator-risk", "--density", "tent", "--n", "4096", "--metric", "hellinger2", "--reps", "40"}).out);
  const auto s = rows(
      run({"estimator-risk", "--density", "tent", "--n", "4096", "--metric", "scaled-hellinger2", "--reps", "40"}).out);
  EXPECT_NEAR(std::stod(s[1][col(s, "risk")]), 64.0 * std::stod(h[1][col(h, "risk")]), 1e-12);
  EXPECT_EQ(h[1][col(h, "k_n")], "1");
}

TEST(Cli, EstimatorRiskUniformDecreases) {
  const auto r = run({"estimator-risk", "--density", "uniform", "--metric", "ln", "--n", "1024,524288", "--reps", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = rows(r.out);
  const double small = std::stod(t[1][col(t, "risk")]), large = std::stod(t[2][col(t, "risk")]);
  EXPECT_LT(large, small);
}

TEST(Cli, EstimatorRiskAcceptsFunctionFile) {
  const auto path = std::filesystem::temp_directory_path() / "poissonlab_cli_density.txt";
  {
    std::ofstream f(path);
    f << "resolution=4\n0.5 1.5 1.5 0.5\n";
  }
  const auto r = run({"estimator-risk", "--density", path.string(), "--n", "500", "--reps", "5", "--model", "iid"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto b = run({"besov", "--density", path.string(), "--alpha", "1"});
  EXPECT_EQ(b.code, 0) << b.err;
  std::filesystem::remove(path);
}

TEST(Cli, BesovNorms) {
  const auto u = rows(run({"besov", "--density", "uniform"}).out);
  EXPECT_EQ(u[1][0], "besov_norm");
  EXPECT_EQ(u[1][2], "1");
  const auto hs = run({"besov", "--density", "halfstep", "--q", "1", "--alpha", "0.7", "--p", "2", "--m-ball", "2"});
  ASSERT_EQ(hs.code, 0);
  const auto t = rows(hs.out);
  EXPECT_EQ(t[1][2], "2");
  EXPECT_EQ(t[2][2], "true");
  for (std::size_t i = 3; i < t.size(); ++i) EXPECT_EQ(t[i][col(t, "holds")], "true");
}

TEST(Cli, BoundsExamples) {
  const auto r = run({"bounds", "--check", "lemma2", "--n", "100", "--D", "2"});
  ASSERT_EQ(r.code, 0);
  const auto t = rows(r.out);
  EXPECT_EQ(t[1][col(t, "rhs")], "0.5");
  EXPECT_EQ(t[1][col(t, "holds")], "true");
  const auto e = rows(run({"bounds", "--check", "eq1", "--r", "0", "--beta-n", "0.1"}).out);
  EXPECT_EQ(e[1][col(e, "rhs")], "0");
  const auto all = run({"bounds", "--pairs", "5"});
  EXPECT_EQ(all.code, 0);
}

TEST(Cli, TailGridOneSidedHold) {
  const auto r = run({"tail"});
  ASSERT_EQ(r.code, 0);
  const auto t = rows(r.out);
  std::size_t one_sided = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i][col(t, "side")] == "two-sided") continue;
    ++one_sided;
    EXPECT_EQ(t[i][col(t, "holds")], "true");
  }
  EXPECT_EQ(one_sided, 2u * (10 + 32 + 100 + 317 + 1000));
}

TEST(Cli, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "poissonlab_cli_out.csv";
  const auto r = run({"tail", "--lambda", "5", "--m0", "1,2", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(rows(ss.str()).size(), 7u);
  std::filesystem::remove(path);
}

TEST(Cli, DeterministicBodies) {
  const std::vector<std::string> args{"estimator-risk", "--density", "withzero", "--n", "2048", "--reps", "30",
                                      "--seed", "5"};
  auto with_threads = [&](const char* t) {
    auto a = args;
    a.insert(a.end(), {"--threads", t});
    return cli::csv_body(run(a).out);
  };
  const auto a = with_threads("1");
  EXPECT_EQ(a, with_threads("1"));
  EXPECT_EQ(a, with_threads("3"));
  EXPECT_NE(a, cli::csv_body(run({"estimator-risk", "--density", "withzero", "--n", "2048", "--reps", "30"}).out));
}
