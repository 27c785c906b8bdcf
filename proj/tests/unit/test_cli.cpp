#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "ewfs/commands.hpp"
#include "ewfs/serialize.hpp"

namespace ewfs {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

struct Outcome {
  int code;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

TEST(CliBound, CatalogEntryAtQuarter) {
  const auto r = run({"bound", "I_2", "--epsilon", "1/4"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["command"], "bound");
  EXPECT_EQ(j["mode"], "rational");
  EXPECT_EQ(j["results"]["omega"], "7");
  EXPECT_EQ(j["results"]["ns_bound"], "9");
  EXPECT_EQ(j["results"]["matches_claim"], true);
  EXPECT_TRUE(j.contains("wall_time_s"));
  EXPECT_TRUE(j.contains("version"));
}

TEST(CliBound, ChainedAndMermin) {
  const auto c = run({"bound", "chained", "--m", "4"});
  ASSERT_EQ(c.code, cli::kSuccess) << c.err;
  EXPECT_EQ(c.json()["results"]["omega"], "6");

  const auto m = run({"bound", "mermin", "--epsilon", "1/2"});
  ASSERT_EQ(m.code, cli::kSuccess) << m.err;
  EXPECT_EQ(m.json()["results"]["omega"], "4");
  EXPECT_EQ(m.json()["results"]["matches_claim"], false);

  const auto f = run({"bound", "I_1", "--epsilon", "1/8", "--mode", "float"});
  ASSERT_EQ(f.code, cli::kSuccess) << f.err;
  EXPECT_NEAR(f.json()["results"]["omega"].get<double>(), 7.0, 1e-9);
}

TEST(CliBound, ReadsInequalityFiles) {
  const auto path = temp_file("ewfs_cli_ineq.json");
  write_json_file(path, inequality_to_json(chsh()));
  const auto r = run({"bound", path, "--epsilon", "1/4"});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_EQ(r.json()["results"]["omega"], "3");
}

TEST(CliMeasures, QuantumChained) {
  const auto r = run({"measures", "--quantum-chained", "2"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const Json res = r.json()["results"];
  const double expected = std::sqrt(2.0) - 1;
  EXPECT_NEAR(res["A_f"]["value"].get<double>(), expected, 1e-6);
  EXPECT_NEAR(res["A_c"]["value"].get<double>(), expected, 1e-6);
  EXPECT_EQ(res["A_c_le_A_f"], true);
  EXPECT_EQ(res["lower_bounds_hold"], true);
  ASSERT_FALSE(res["inequalities"].empty());
  EXPECT_EQ(res["inequalities"][0]["label"], "C^(1)");
}

TEST(CliMeasures, BehaviorFileWithWitness) {
  const auto path = temp_file("ewfs_cli_pr.json");
  write_json_file(path, behavior_to_json(pr_box<Rational>(ScenarioSpec::bipartite(2))));
  const auto r = run({"measures", path, "--mode", "rational", "--witness"});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const Json res = r.json()["results"];
  EXPECT_EQ(res["A_f"]["value"], "1");
  EXPECT_EQ(res["A_c"]["value"], "1");
  EXPECT_TRUE(res["A_c"].contains("witness"));
}

TEST(CliGen, UniformAndPrBox) {
  const auto u = run({"gen", "--uniform", "--m", "3"});
  ASSERT_EQ(u.code, cli::kSuccess) << u.err;
  const Json ju = u.json();
  ASSERT_EQ(ju["table"].size(), 9U);
  for (const auto& [key, ctx] : ju["table"].items()) {
    for (const auto& row : ctx) {
      for (const auto& v : row) EXPECT_EQ(v, "1/4") << key;
    }
  }

  const auto path = temp_file("ewfs_cli_gen.json");
  ASSERT_EQ(run({"gen", "--pr-box", "-o", path}).code, cli::kSuccess);
  const auto c = run({"check", path});
  std::filesystem::remove(path);
  ASSERT_EQ(c.code, cli::kSuccess) << c.err;
  EXPECT_EQ(c.json()["results"]["no_signalling"], true);
  EXPECT_EQ(c.json()["results"]["max_violation"], "0");
  EXPECT_EQ(c.json()["results"]["families"].size(), 2U);
}

TEST(CliGen, QuantumChainedValue) {
  const auto g = run({"gen", "--quantum-chained", "3"});
  ASSERT_EQ(g.code, cli::kSuccess) << g.err;
  const auto b = behavior_from_json_as<double>(g.json());
  EXPECT_NEAR(evaluate(chained(3), b), 5.19615, 1e-5);
  EXPECT_EQ(run({"gen", "--uniform", "--pr-box"}).code, cli::kValidationError);
}

TEST(CliCheck, SignallingExitsOne) {
  const auto s = ScenarioSpec::bipartite(2);
  std::vector<Rational> t(16, Rational(0));
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) t[static_cast<std::size_t>((x * 2 + y) * 4 + x)] = 1;
  }
  const auto path = temp_file("ewfs_cli_sig.json");
  write_json_file(path, behavior_to_json(Behavior<Rational>(s, t)));
  const auto r = run({"check", path});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, cli::kValidationError);
  EXPECT_THAT(r.err, HasSubstr("signalling"));
}

TEST(CliSweep, ChainedCsv) {
  const auto r = run({"sweep", "--family", "chained", "--m-range", "2..4", "--out", "csv"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_THAT(r.out, StartsWith("m,quantum_value,lf_bound,ns_bound,A_f,A_c,af_lower_bound,friend_inputs\n"));
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(CliSweep, RelaxedJson) {
  const auto r = run({"sweep", "--family", "relaxed", "--label", "I_5", "--epsilons", "0,1/8,1/4", "--out", "json"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const Json rows = r.json()["results"]["rows"];
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0]["omega"], "2");
  EXPECT_EQ(rows[1]["omega"], "5/2");
  EXPECT_EQ(rows[2]["omega"], "3");
}

TEST(CliErrors, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kValidationError);
  EXPECT_EQ(run({"bound", "I_9"}).code, cli::kValidationError);
  EXPECT_EQ(run({"bound", "I_1", "--epsilon", "1/0"}).code, cli::kValidationError);
  EXPECT_EQ(run({"bound", "I_1", "--epsilon", "-1/4"}).code, cli::kValidationError);
  EXPECT_EQ(run({"measures", "/nonexistent/file.json"}).code, cli::kValidationError);
  EXPECT_EQ(run({"bound", "I_1", "--mode", "quad"}).code, cli::kValidationError);
  EXPECT_EQ(run({"--help"}).code, cli::kSuccess);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, cli::kSuccess);
  EXPECT_THAT(v.out + v.err, HasSubstr(EWFS_TEST_VERSION));
  const auto e = run({"bound", "I_9"});
  EXPECT_THAT(e.err, StartsWith("ewfs: "));
}

TEST(CliOutput, DeterministicApartFromTiming) {
  auto strip = [](Json j) {
    j.erase("wall_time_s");
    return j.dump();
  };
  const auto a = run({"bound", "I_3", "--epsilon", "1/8"});
  const auto b = run({"bound", "I_3", "--epsilon", "1/8"});
  ASSERT_EQ(a.code, cli::kSuccess);
  EXPECT_EQ(strip(a.json()), strip(b.json()));
}

}  // namespace
}  // namespace ewfs
