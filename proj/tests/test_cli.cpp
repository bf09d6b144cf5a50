#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <json.hpp>

#include "cogmap/successor.hpp"
#include "cogmap/text_io.hpp"
#include "test_util.hpp"

namespace cogmap {
namespace {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
};

// Runs the CLI with `args`; stderr is discarded unless redirected in args.
Result run_cli(const std::string& args) {
  const std::string cmd = std::string(COGMAP_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

TEST(Cli, GdvOnHandFixture) {
  const auto r = run_cli("gdv --input " + q(fs::path(COGMAP_FIXTURE_DIR) / "gdv_hand.csv"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "-0.8955\n");
}

TEST(Cli, BuildSrWithZeroGammaIsIdentity) {
  testing::TempDir dir("cli_sr");
  testing::write_toy_dataset(dir.path(), 3, 1);
  const auto r = run_cli("build-sr --embeddings " + q(dir.path() / "toy.txt") + " --lexicon " +
                         q(dir.path() / "toy.csv") + " --gamma 0 --horizon 5 --out-dir " + q(dir.path() / "o"));
  ASSERT_EQ(r.status, 0);
  const auto sr = successor_from_json(read_file(dir.path() / "o" / "sr_gamma_0.0.json"));
  EXPECT_EQ(sr.values, Matrix::identity(9));
  EXPECT_TRUE(fs::exists(dir.path() / "o" / "transition.csv"));
}

TEST(Cli, UsageAndInputErrorsExitOne) {
  EXPECT_EQ(run_cli("gdv --input " + q(fs::path(COGMAP_FIXTURE_DIR) / "gdv_hand.csv") + " --bogus").status, 1);
  EXPECT_EQ(run_cli("").status, 1);
  EXPECT_EQ(run_cli("gdv --input /nonexistent/file.csv").status, 1);
  testing::TempDir dir("cli_err");
  EXPECT_EQ(run_cli("build-sr --embeddings /nonexistent.txt --lexicon /nonexistent.csv --out-dir " +
                    q(dir.path()))
                .status,
            1);
}

TEST(Cli, RunThenScoreAndProject) {
  testing::TempDir dir("cli_run");
  testing::write_toy_dataset(dir.path(), 5, 2);
  const auto out = dir.path() / "out";
  const auto r = run_cli("run --embeddings " + q(dir.path() / "toy.txt") + " --lexicon " +
                         q(dir.path() / "toy.csv") + " --out-dir " + q(out) +
                         " --hidden 16 --dropout 0.2 --lr 0.05 --epochs 20 --batch-size 4 --seed 3");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("gamma=1.0 gdv_all="), std::string::npos);
  EXPECT_NE(r.out.find("gamma=0.3 gdv_all="), std::string::npos);

  const auto gdv_json = nlohmann::json::parse(read_file(out / "gdv_gamma_1.0.json"));
  const double recorded = gdv_json["predictionSpace"]["train"]["gdv"];
  const auto scored = run_cli("gdv --split train --input " + q(out / "predictions_gamma_1.0.csv"));
  ASSERT_EQ(scored.status, 0);
  char expected[32];
  std::snprintf(expected, sizeof expected, "%.4f\n", recorded);
  EXPECT_EQ(scored.out, expected);

  const auto projected = run_cli("project --input " + q(out / "predictions_gamma_1.0.csv") + " --svg " +
                                 q(dir.path() / "m.svg"));
  ASSERT_EQ(projected.status, 0);
  EXPECT_EQ(projected.out.rfind("word,category,split,x,y\n", 0), 0u);
  EXPECT_TRUE(fs::exists(dir.path() / "m.svg"));
}

TEST(Cli, TrainAndPredictSubcommands) {
  testing::TempDir dir("cli_train");
  testing::write_toy_dataset(dir.path(), 3, 1);
  const auto emb = q(dir.path() / "toy.txt");
  ASSERT_EQ(run_cli("build-sr --embeddings " + emb + " --lexicon " + q(dir.path() / "toy.csv") +
                    " --gamma 0.5 --out-dir " + q(dir.path()))
                .status,
            0);
  const auto trained = run_cli("train --embeddings " + emb + " --sr " + q(dir.path() / "sr_gamma_0.5.json") +
                               " --out " + q(dir.path() / "m.json") + " --epochs 5 --hidden 8 --seed 1");
  ASSERT_EQ(trained.status, 0);
  EXPECT_EQ(trained.out.rfind("epochs=5 ", 0), 0u);
  const auto predicted = run_cli("predict --embeddings " + emb + " --model " + q(dir.path() / "m.json") +
                                 " --words red0,blue3");
  ASSERT_EQ(predicted.status, 0);
  EXPECT_EQ(predicted.out.rfind("word,category,split,s0,", 0), 0u);
  EXPECT_NE(predicted.out.find("\nblue3,,,"), std::string::npos);
}

TEST(Cli, OracleAgreesWithClosedFormColumn) {
  testing::TempDir dir("cli_oracle");
  testing::write_toy_dataset(dir.path(), 3, 1);
  const auto r = run_cli("oracle --embeddings " + q(dir.path() / "toy.txt") + " --lexicon " +
                         q(dir.path() / "toy.csv") + " --gamma 0.7 --horizon 4 --start red1 --samples 20000");
  ASSERT_EQ(r.status, 0);
  std::size_t rows = 0;
  for (auto line : split(r.out, '\n')) {
    if (line.empty() || line.starts_with("state,")) continue;
    const auto f = split(line, ',');
    ASSERT_EQ(f.size(), 4u);
    const double est = *parse_double(f[1]), se = *parse_double(f[2]), closed = *parse_double(f[3]);
    EXPECT_LE(std::abs(est - closed), 4.0 * se + 1e-12) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 9u);
}

}  // namespace
}  // namespace cogmap
