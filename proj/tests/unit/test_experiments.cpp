#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "anls/errors.hpp"
#include "anls/experiments.hpp"
#include "anls/random_fields.hpp"
#include "anls/snapshot.hpp"
#include "json.hpp"

using namespace anls;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("anls_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliResult {
  int code = 0;
  std::string out;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(ANLS_CLI_PATH) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunConfig config_for(const std::string& text) { return parse_config(text); }

}  // namespace

TEST(Snapshot, LayoutIsExact) {
  const Grid2D g(4, 2, 1.5, 2.5);
  Field f(g);
  f(1, 1) = Complex(1.0, -2.0);
  const auto bytes = encode_snapshot(f);
  ASSERT_EQ(bytes.size(), 4u + 4 + 16 + 16 + 16 * 8);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "ANLS");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5] | bytes[6] | bytes[7], 0);
  EXPECT_EQ(bytes[8], 4);
  EXPECT_EQ(bytes[16], 2);
  double lx = 0.0;
  std::memcpy(&lx, bytes.data() + 24, 8);
  EXPECT_EQ(lx, 1.5);
  double re = 0.0;
  double im = 0.0;
  const std::size_t off = 40 + 16 * g.index(1, 1);
  std::memcpy(&re, bytes.data() + off, 8);
  std::memcpy(&im, bytes.data() + off + 8, 8);
  EXPECT_EQ(re, 1.0);
  EXPECT_EQ(im, -2.0);
}

TEST(Snapshot, RoundTripIsBitIdentical) {
  Rng rng(1234);
  std::uniform_int_distribution<int> pick(1, 6);
  std::normal_distribution<double> normal;
  const fs::path dir = scratch("roundtrip");
  fs::create_directories(dir);
  for (int k = 0; k < 100; ++k) {
    const Grid2D g(std::size_t{1} << pick(rng), std::size_t{1} << pick(rng), 1.0 + k, 2.0 + k);
    Field f(g);
    for (auto& v : f.data()) v = Complex(normal(rng), normal(rng));
    const fs::path p = dir / "f.anls";
    write_snapshot(p, f);
    const Field back = read_snapshot(p);
    ASSERT_TRUE(back.grid() == g);
    ASSERT_EQ(std::memcmp(back.data().data(), f.data().data(), f.data().size_bytes()), 0);
    ASSERT_EQ(encode_snapshot(back), encode_snapshot(f));
  }
}

TEST(Snapshot, RejectsCorruptFiles) {
  auto bytes = encode_snapshot(Field(Grid2D(2, 2, 1.0, 1.0)));
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_snapshot(bad_magic), Error);
  auto bad_version = bytes;
  bad_version[4] = 2;
  EXPECT_THROW(decode_snapshot(bad_version), Error);
  bytes.pop_back();
  EXPECT_THROW(decode_snapshot(bytes), Error);
}

TEST(Csv, HeaderAndFormatting) {
  DiagnosticsRecord r;
  r.t = 0.1;
  r.mass = 1.0 / 3.0;
  const std::string csv = diagnostics_csv({r});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,mass,energy,q,k,virial,h12_norm,boundary_mass_fraction");
  EXPECT_NE(csv.find("0.10000000000000001,0.33333333333333331,0,"), std::string::npos);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  for (double v : {-2.5e-300, 1.0 / 7.0, 6.02214076e23, 5e-324}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_double(1.0 / 7.0), "0.14285714285714285");
}

TEST(Config, DefaultsAndOverrides) {
  const auto c = config_for(R"({"experiment": "evolve", "model": {"p": 3}, "grid": {"nx": 64, "ny": 32, "lx": 10, "ly": 5},
                               "evolve": {"dt": 0.002, "splitting_order": "lie", "boundary_policy": "record"}})");
  EXPECT_EQ(c.experiment, "evolve");
  EXPECT_EQ(c.model.p, 3.0);
  EXPECT_EQ(c.model.omega, 1.0);
  EXPECT_EQ(c.grid.nx(), 64u);
  EXPECT_EQ(c.grid.ly(), 5.0);
  ASSERT_TRUE(c.evolve.has_value());
  EXPECT_EQ(c.evolve->dt, 0.002);
  EXPECT_EQ(c.evolve->splitting_order, Splitting::lie);
  EXPECT_EQ(c.evolve->boundary_policy, BoundaryPolicy::record);
  EXPECT_EQ(c.rng_seed, 20240611u);
}

TEST(Config, ResolvedJsonRoundTrips) {
  const auto c = config_for(R"({"experiment": "blowup-scan", "p_list": [3, 6], "amplitude_list": [1, 2.5],
                               "evolve": {"t_max": 0.5}, "rng_seed": 7})");
  const std::string text = config_to_json(c);
  EXPECT_EQ(config_to_json(parse_config(text)), text);
}

TEST(Config, ErrorsNameTheField) {
  auto where = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.where();
    }
    return std::string("no error");
  };
  EXPECT_EQ(where(R"({"experiment": "evolve", "grid": {"nx": 100}})"), "grid.nx");
  EXPECT_EQ(where(R"({"experiment": "evolve", "grid": {"size": 100}})"), "grid.size");
  EXPECT_EQ(where(R"({"experiment": "evolve", "model": {"p": "four"}})"), "model.p");
  EXPECT_EQ(where(R"({"experiment": "evolve", "model": {"p": 2}})"), "model");
  EXPECT_EQ(where(R"({"experiment": "evolve", "evolve": {"splitting_order": "ruth"}})"), "evolve.splitting_order");
  EXPECT_EQ(where("{\"experiment\": \"evolve\",\n \"grid\": {\n  \"nx\": 64,,\n}}"), "line 3");
  EXPECT_EQ(where(R"({"experiment": "blowup-scan"})"), "p_list");
  EXPECT_THROW(parse_config(R"({"experiment": "nope"})"), UnknownExperimentError);
}

TEST(Run, ErrorClassification) {
  std::string j;
  EXPECT_EQ(classify_error(ConfigError("grid.nx", "bad"), j), ExitCode::invalid_config);
  EXPECT_EQ(json::parse(j)["where"], "grid.nx");
  EXPECT_EQ(classify_error(UnknownExperimentError("x"), j), ExitCode::unknown_experiment);
  EXPECT_EQ(classify_error(OutputDirError("x"), j), ExitCode::unwritable_output);
  EXPECT_EQ(classify_error(AccuracyError("x", 0.0, 1.0), j), ExitCode::solver_failure);
  EXPECT_EQ(json::parse(j)["exit_code"], 5);
}

TEST(Run, ZeroFieldEvolve) {
  auto c = config_for(R"({"experiment": "evolve", "initial": {"kind": "zero"}, "grid": {"nx": 32, "ny": 32, "lx": 8, "ly": 8},
                         "evolve": {"t_max": 0.02}})");
  c.output_dir = scratch("zero");
  std::ostringstream summary;
  const auto rep = run(c, summary);
  EXPECT_EQ(rep.code, ExitCode::ok);
  const auto traj = json::parse(slurp(c.output_dir / "trajectory.json"));
  EXPECT_EQ(traj["status"], "completed");
  std::istringstream csv(slurp(c.output_dir / "diagnostics.csv"));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.find(',')), ",0,0,0,0,0,0,0");
  }
  EXPECT_GT(rows, 1);
  const auto manifest = json::parse(slurp(c.output_dir / "manifest.json"));
  EXPECT_EQ(manifest["config"], json::parse(config_to_json(c)));
}

TEST(Run, DeterministicArtifacts) {
  const std::string text = R"({"experiment": "stability-probe", "model": {"p": 3}, "grid": {"nx": 64, "ny": 64, "lx": 30, "ly": 30},
                               "evolve": {"t_max": 0.2, "dt": 0.002, "boundary_policy": "record"}, "rng_seed": 17})";
  auto a = config_for(text);
  auto b = a;
  a.output_dir = scratch("det_a");
  b.output_dir = scratch("det_b");
  std::ostringstream sink;
  const auto ra = run(a, sink);
  const auto rb = run(b, sink);
  ASSERT_EQ(ra.artifacts, rb.artifacts);
  for (const auto& name : ra.artifacts) {
    if (name == "manifest.json") continue;
    EXPECT_EQ(slurp(a.output_dir / name), slurp(b.output_dir / name)) << name;
  }
}

TEST(Run, BlowupScanKeepsGoingAfterCellFailure) {
  auto c = config_for(R"({"experiment": "blowup-scan", "p_list": [3], "amplitude_list": [0.5, 1.0],
                         "grid": {"nx": 32, "ny": 32, "lx": 4, "ly": 4}, "evolve": {"t_max": 0.01}, "workers": 2})");
  const auto cells = blowup_scan(c.p_list, c.amplitude_list, c);
  ASSERT_EQ(cells.size(), 2u);
  for (const auto& cell : cells) EXPECT_FALSE(cell.error.empty());
  c.grid = Grid2D::square(64, 10.0);
  const auto ok = blowup_scan(c.p_list, c.amplitude_list, c);
  for (const auto& cell : ok) {
    EXPECT_TRUE(cell.error.empty()) << cell.error;
    EXPECT_EQ(cell.status, "completed");
  }
  EXPECT_EQ(ok[0].amplitude, 0.5);
  EXPECT_EQ(ok[1].amplitude, 1.0);
}

TEST(Cli, GroundStateWritesSnapshotAndSidecar) {
  const fs::path dir = scratch("cli_gs");
  const auto r = cli("ground-state --p 4 --omega 1 --output-dir " + dir.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const auto side = json::parse(slurp(dir / "ground_state.json"));
  EXPECT_LT(side["residual_l2"].get<double>(), 1e-8);
  for (const char* k : {"r1", "r2", "r3"}) EXPECT_LT(std::abs(side["pohozaev"][k].get<double>()), 1e-6);
  for (const char* k : {"omega", "p", "m_omega", "c_opt_estimate"}) EXPECT_TRUE(side.contains(k));
  const Field u = read_snapshot(dir / "ground_state.anls");
  EXPECT_EQ(u.grid().nx(), 256u);
}

TEST(Cli, GnConstantPrintsThreshold) {
  const auto r = cli("gn-constant --p 4.6667 --output-dir " + scratch("cli_gn").string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("C_opt"), std::string::npos);
  EXPECT_NE(r.out.find("c*"), std::string::npos);
  const auto j = json::parse(slurp(scratch("cli_gn_check").parent_path() / "cli_gn" / "gn_constant.json"));
  EXPECT_NEAR(j["c_star"].get<double>(), std::pow(7.0 / (3.0 * j["c_opt"].get<double>()), 0.375), 1e-14);
}

TEST(Cli, DistinctExitCodes) {
  EXPECT_EQ(cli("no-such-experiment").code, 2);
  const auto bad = cli("evolve --n 100 --output-dir " + scratch("cli_bad").string());
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.out.find("\"where\":\"grid.nx\""), std::string::npos);
  EXPECT_EQ(cli("evolve --output-dir /proc/anls_cannot_write").code, 4);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const fs::path dir = scratch("cli_cfg");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << R"({"model": {"p": 3, "omega": 2}, "grid": {"nx": 64, "ny": 64, "lx": 20, "ly": 20}})";
  const auto r = cli("--print-config ground-state --config " + (dir / "c.json").string() + " --p 5");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["model"]["p"], 5.0);
  EXPECT_EQ(j["model"]["omega"], 2.0);
  EXPECT_EQ(j["grid"]["nx"], 64);
}

TEST(Cli, OutputRootFromEnvironment) {
  const fs::path root = scratch("env_root");
  const std::string cmd = "ANLS_OUTPUT_DIR=" + root.string() + " " + std::string(ANLS_CLI_PATH) +
                          " evolve --initial zero --n 16 --t-max 0.01 > /dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(root / "evolve" / "diagnostics.csv"));
}
