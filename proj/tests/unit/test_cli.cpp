#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "nonfloquet/errors.hpp"
#include "nonfloquet/io.hpp"

namespace nonfloquet {
namespace {

std::string model(const std::string& name) { return std::string(NONFLOQUET_MODEL_DIR) + "/" + name; }

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp_model(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("nonfloquet_cli_" + name);
  write_file_atomic(path.string(), text);
  return path.string();
}

TEST(Cli, SpectrumWritesCsvFile) {
  const auto path = std::filesystem::temp_directory_path() / "nonfloquet_cli_spec.csv";
  const CliResult r = run({"spectrum", "--model", model("nh_chain.json"), "--out", path.string(), "--slices", "512"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Table t = parse_csv(read_file(path.string()));
  EXPECT_EQ(t.columns, (std::vector<std::string>{"index", "re_eps", "im_eps", "I_j"}));
  EXPECT_EQ(t.rows.size(), 40u);
  std::filesystem::remove(path);
}

TEST(Cli, WindingOfCounterpart) {
  const CliResult r = run({"winding", "--model", model("counterpart.json"), "--mu0", "-1", "--nk", "256"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"W1\": 1,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"W2\": 1,"), std::string::npos);
  EXPECT_NE(r.out.find("\"nu0\": 1.0,"), std::string::npos);
  EXPECT_NE(r.out.find("\"nu_pi\": 0.0,"), std::string::npos);
}

TEST(Cli, QuenchReportsFlatRealBands) {
  const CliResult r = run({"quench", "--model", model("quench7.json"), "--r", "0.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"flat\": true"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"real\": true"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"sweep", "--model", model("counterpart.json"), "--mu0-grid", "-1:0:2",
                                      "--slices", "256", "--omega", "0.5"};
  const CliResult a = run(args);
  const CliResult b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"bogus"}).code, cli::kExitConfig);
  EXPECT_EQ(run({"spectrum"}).code, cli::kExitConfig);
  EXPECT_EQ(run({"spectrum", "--model", "/nonexistent.json"}).code, cli::kExitConfig);
  EXPECT_EQ(run({"sweep", "--model", model("counterpart.json")}).code, cli::kExitConfig);
  EXPECT_EQ(run({"stark", "--model", model("counterpart.json")}).code, cli::kExitConfig);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);

  // A chain whose Bloch off-diagonal vanishes at k = π.
  const std::string gapless = write_temp_model("gapless.json", R"({"model": "bipartite_chain",
      "variant": "hermitian_counterpart", "boundary": "momentum", "omega": 0.5,
      "params": {"t1": 0.5, "t2": 0.5, "p": 0.0, "mu0": 0.0}})");
  const CliResult r = run({"winding", "--model", gapless, "--nk", "64", "--slices", "256"});
  EXPECT_EQ(r.code, cli::kExitNumerical) << r.out;
  EXPECT_FALSE(r.err.empty());
  std::filesystem::remove(gapless);
}

TEST(Cli, GridParsing) {
  EXPECT_EQ(cli::parse_grid("0:1:3"), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(cli::parse_grid("0.25,-1"), (std::vector<double>{0.25, -1.0}));
  EXPECT_EQ(cli::parse_grid("2:5:1"), (std::vector<double>{2.0}));
  EXPECT_THROW(cli::parse_grid("0:1:0"), InvalidInputError);
  EXPECT_THROW(cli::parse_grid("a,b"), InvalidInputError);
}

}  // namespace
}  // namespace nonfloquet
