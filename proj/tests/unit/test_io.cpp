#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>

#include "nonfloquet/errors.hpp"
#include "nonfloquet/io.hpp"

namespace nonfloquet {
namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nonfloquet_test_" + name);
}

TEST(ModelFile, ChainFromDataDirectory) {
  const ModelSpec spec = load_model_spec(std::string(NONFLOQUET_MODEL_DIR) + "/nh_chain.json");
  const auto& chain = std::get<BipartiteChainSpec>(spec.body);
  EXPECT_EQ(chain.variant, ChainVariant::non_hermitian);
  EXPECT_EQ(chain.cells, 20u);
  EXPECT_DOUBLE_EQ(chain.r1, 0.025);
  EXPECT_DOUBLE_EQ(chain.q2, -0.2);
  EXPECT_DOUBLE_EQ(spec.drive.omega, 0.5);
}

TEST(ModelFile, QuenchPeriodSetsTheFrequency) {
  const ModelSpec spec = parse_model_spec(R"({
    "model": "step_quench", "k": [0.1, 0.2],
    "params": {"gamma_z": [0.0, 0.5], "ladder_scale": 0.5},
    "steps": [{"duration": 0.5, "j1": [1.0, 0.5], "j2": 2.0, "bond": [0, 1]},
              {"duration": 1.5, "j1": 1.0, "j2": 1.0}]})");
  const auto& q = std::get<StepQuenchSpec>(spec.body);
  EXPECT_DOUBLE_EQ(spec.drive.omega, kTwoPi / 2.0);
  EXPECT_EQ(q.steps[0].j1, Complex(1.0, 0.5));
  EXPECT_EQ(q.gamma_z, Complex(0.0, 0.5));
  EXPECT_DOUBLE_EQ(q.ladder_scale, 0.5);
  EXPECT_DOUBLE_EQ(q.k[1], 0.2);
}

TEST(ModelFile, RejectsMalformedInput) {
  EXPECT_THROW(parse_model_spec("{"), InvalidInputError);
  EXPECT_THROW(parse_model_spec(R"({"model": "ring"})"), ConfigError);
  EXPECT_THROW(parse_model_spec(R"({"model": "bipartite_chain", "variant": "non_hermitian", "colour": 1})"),
               InvalidInputError);
  EXPECT_THROW(parse_model_spec(R"({"model": "bipartite_chain", "variant": "non_hermitian", "params": {"r3": 1}})"),
               InvalidInputError);
  EXPECT_THROW(parse_model_spec(R"({"model": "bipartite_chain", "variant": "non_hermitian", "omega": -1})"),
               ConfigError);
  EXPECT_THROW(parse_model_spec(R"({"model": "step_quench", "omega": 2, "params": {"J": 1}})"), InvalidInputError);
  EXPECT_THROW(parse_model_spec(R"({"model": "stark_chain", "N": 0})"), InvalidInputError);
  EXPECT_THROW(load_model_spec("/nonexistent/model.json"), InvalidInputError);
}

TEST(Csv, RoundTripIsBitIdentical) {
  std::mt19937_64 rng(81);
  std::uniform_int_distribution<std::uint64_t> bits;
  Table t{{"a", "b", "c"}, {}};
  for (int i = 0; i < 200; ++i) {
    std::vector<double> row;
    while (row.size() < 3) {
      const std::uint64_t raw = bits(rng);
      double x;
      std::memcpy(&x, &raw, sizeof x);
      if (std::isfinite(x)) row.push_back(x);
    }
    t.rows.push_back(row);
  }
  t.rows.push_back({0.0, -0.0, std::numeric_limits<double>::denorm_min()});
  const Table back = parse_csv(format_csv(t));
  EXPECT_EQ(back.columns, t.columns);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(std::memcmp(&back.rows[i][j], &t.rows[i][j], sizeof(double)), 0) << i << "," << j;
    }
  }
}

TEST(Csv, FixedSeventeenDigitFormat) {
  EXPECT_EQ(format_csv({{"x"}, {{0.1}}}), "x\n1.0000000000000001e-01\n");
  EXPECT_THROW(format_csv({{"x", "y"}, {{1.0}}}), DimensionError);
  EXPECT_THROW(parse_csv("x,y\n1.0,abc\n"), InvalidInputError);
  EXPECT_THROW(parse_csv("x,y\n1.0\n"), InvalidInputError);
}

TEST(ShortestFormat, RoundTrips) {
  EXPECT_EQ(format_double_shortest(0.1), "0.1");
  EXPECT_EQ(format_double_shortest(-2.5e-300), "-2.5e-300");
  std::mt19937_64 rng(82);
  std::normal_distribution<double> g(0.0, 1e3);
  for (int i = 0; i < 100; ++i) {
    const double x = g(rng);
    EXPECT_EQ(std::stod(format_double_shortest(x)), x);
  }
}

TEST(Files, AtomicWriteReplacesContent) {
  const auto path = temp_path("atomic.txt");
  write_file_atomic(path.string(), "first");
  write_file_atomic(path.string(), "second");
  EXPECT_EQ(read_file(path.string()), "second");
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
  EXPECT_THROW(write_file_atomic("/nonexistent/dir/out.txt", "x"), InvalidInputError);
}

}  // namespace
}  // namespace nonfloquet
