#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "isoperim/cli.hpp"

using namespace isoperim;
using namespace isoperim::cli;

namespace {

const std::string kSamples = ISOPERIM_SAMPLES_DIR;

struct Captured {
  int status = -1;
  std::string out;
  std::string err;
};

Captured run_cfg(const RunConfig& cfg) {
  std::ostringstream out, err;
  Captured c;
  c.status = run(cfg, out, err);
  c.out = out.str();
  c.err = err.str();
  return c;
}

RunConfig base(Command cmd) {
  RunConfig cfg;
  cfg.command = cmd;
  cfg.timestamp = false;
  return cfg;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("isoperim_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, VerifyIsoOnUnitDisk) {
  auto cfg = base(Command::verify);
  cfg.curve_path = kSamples + "/unit_disk.json";
  cfg.preset_name = "iso_1_1";
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["cases"][0]["W"].get<double>(), 0.0, 1e-12);
  EXPECT_EQ(j["cases"][0]["chain_ok"], true);
  EXPECT_EQ(j["metadata"]["tolerance"], kDefaultTol);
  EXPECT_FALSE(j["metadata"].contains("timestamp"));
}

TEST(Cli, ScanRevisedPanXu) {
  auto cfg = base(Command::scan);
  cfg.preset_name = "rev_1_5";
  cfg.count = 500;
  cfg.seed = 7;
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_GE(j["summary"]["min_W"].get<double>(), -1e-8);
  EXPECT_EQ(j["summary"]["passed"], 500);
  EXPECT_EQ(j["cases"].size(), 500u);
}

TEST(Cli, ParamsUnstablePreset) {
  auto cfg = base(Command::params);
  cfg.preset_name = "cor_3_4";
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["cases"][0]["classification"], "unstable");
  EXPECT_NEAR(j["cases"][0]["D"].get<double>(), 0.0, 1e-12);
  EXPECT_TRUE(j["cases"][0]["C3"].is_null());
}

TEST(Cli, ScanIsDeterministicAcrossThreadCounts) {
  auto cfg = base(Command::scan);
  cfg.preset_name = "cor_3_3";
  cfg.count = 40;
  cfg.seed = 3;
  cfg.threads = 1;
  const auto a = run_cfg(cfg);
  cfg.threads = 4;
  const auto b = run_cfg(cfg);
  const auto c = run_cfg(cfg);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(b.out, c.out);
  cfg.format = OutputFormat::csv;
  EXPECT_EQ(run_cfg(cfg).out, run_cfg(cfg).out);
}

TEST(Cli, TimestampOnlyWhenRequested) {
  auto cfg = base(Command::presets);
  cfg.timestamp = true;
  const auto j = json::parse(run_cfg(cfg).out);
  EXPECT_TRUE(j["metadata"].contains("timestamp"));
}

TEST(Cli, CsvLayout) {
  auto cfg = base(Command::presets);
  cfg.format = OutputFormat::csv;
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.status, kExitOk);
  std::istringstream in(r.out);
  std::string line, header;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (header.empty()) {
      header = line;
      continue;
    }
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), std::count(header.begin(), header.end(), ','));
  }
  EXPECT_EQ(header.rfind("name,alpha,delta,mu,sigma,eta,lambda,xi,zeta,ok_1_9", 0), 0u);
  EXPECT_EQ(rows, kAllPresets.size());
  EXPECT_NE(r.out.find("# command=presets"), std::string::npos);
}

TEST(Cli, GenThenQuantitiesRoundTrip) {
  TempDir dir;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto gen = base(Command::gen);
    gen.seed = seed;
    gen.output_path = dir.file("curve.json");
    ASSERT_EQ(run_cfg(gen).status, kExitOk);
    EXPECT_EQ(load_curve(*gen.output_path), random_convex_curve(seed, gen.max_harmonic, gen.decay, gen.margin));

    auto q = base(Command::quantities);
    q.curve_path = gen.output_path;
    const auto r = run_cfg(q);
    ASSERT_EQ(r.status, kExitOk) << "seed " << seed << ": " << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["cases"][0]["cross_check_ok"], true);
  }
}

TEST(Cli, StabilityReport) {
  auto cfg = base(Command::stability);
  cfg.curve_path = kSamples + "/ellipse_like.json";
  cfg.params_path = kSamples + "/panxu_params.json";
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["cases"][0]["h2_sq"].get<double>(), 0.01 * kPi, 1e-14);
  EXPECT_NEAR(j["cases"][0]["C3_W"].get<double>(), 0.01 * kPi, 1e-10);
}

TEST(Cli, ExitCodesForErrors) {
  auto missing = base(Command::quantities);
  missing.curve_path = "/nonexistent.json";
  const auto a = run_cfg(missing);
  EXPECT_EQ(a.status, kExitUsage);
  EXPECT_NE(a.err.find("cannot open"), std::string::npos);

  auto no_params = base(Command::verify);
  no_params.curve_path = kSamples + "/unit_disk.json";
  EXPECT_EQ(run_cfg(no_params).status, kExitUsage);

  auto both = base(Command::params);
  both.preset_name = "iso_1_1";
  both.params_path = kSamples + "/panxu_params.json";
  EXPECT_EQ(run_cfg(both).status, kExitUsage);

  auto unstable = base(Command::stability);
  unstable.curve_path = kSamples + "/ellipse_like.json";
  unstable.preset_name = "cor_3_4";
  EXPECT_EQ(run_cfg(unstable).status, kExitUsage);

  auto bad_eps = base(Command::params);
  bad_eps.preset_name = "cor_3_6";
  bad_eps.eps = 0.7;
  EXPECT_EQ(run_cfg(bad_eps).status, kExitUsage);
}

TEST(Cli, NonConvexCurveIsRejected) {
  TempDir dir;
  const auto path = dir.file("bad.json");
  std::ofstream(path) << R"({"a0": 1, "cos": [0, 0, 0.2], "sin": [0, 0, 0]})";
  auto cfg = base(Command::quantities);
  cfg.curve_path = path;
  EXPECT_EQ(run_cfg(cfg).status, kExitUsage);
}

TEST(Cli, CoarseGridOnFlatCurveIsAViolation) {
  // min rho = 0.004: 256 brute-force samples cannot resolve 1 / rho, so the
  // channels disagree well beyond the default tolerance.
  TempDir dir;
  const auto path = dir.file("flat.json");
  std::ofstream(path) << R"({"a0": 1, "cos": [0, 0.332], "sin": [0, 0], "margin": 0.0001})";
  auto cfg = base(Command::quantities);
  cfg.curve_path = path;
  cfg.grid = 256;
  const auto r = run_cfg(cfg);
  EXPECT_EQ(r.status, kExitViolation);
  EXPECT_EQ(json::parse(r.out)["cases"][0]["cross_check_ok"], false);
  cfg.grid.reset();
  EXPECT_EQ(run_cfg(cfg).status, kExitOk);
}

TEST(Cli, NegativeToleranceIsUsageError) {
  auto cfg = base(Command::verify);
  cfg.curve_path = kSamples + "/ellipse_like.json";
  cfg.preset_name = "iso_1_1";
  cfg.tol = -1.0;
  EXPECT_EQ(run_cfg(cfg).status, kExitUsage);
}

TEST(Cli, OutputFileWritten) {
  TempDir dir;
  auto cfg = base(Command::params);
  cfg.preset_name = "panxu";
  cfg.output_path = dir.file("report.json");
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.status, kExitOk);
  EXPECT_TRUE(r.out.empty());
  const auto j = json::parse(isoperim::detail::read_file(*cfg.output_path));
  EXPECT_NEAR(j["cases"][0]["C3"].get<double>(), 1.0 / (18.0 * kPi), 1e-16);
}
