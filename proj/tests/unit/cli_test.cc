#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.h"
#include "corpus.h"

namespace fs = std::filesystem;
using sublap::cli::run_cli;
using nlohmann::json;

namespace {

const fs::path kFixtures = SUBLAP_FIXTURE_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("sublap_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

TEST(Cli, ArcSolveAndCheck) {
  const fs::path dir = scratch("arc");
  const auto ok = write(dir, "ok.json",
                        R"({"n":2,"edges":[{"type":"directed","tail":0,"head":1}],"b":[1,-1]})");
  CliRun r = run({"solve", "--input", ok.string(), "--quiet"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "optimal");
  EXPECT_NEAR(j["x"][0].get<double>(), 0.5, 1e-8);
  EXPECT_NEAR(j["x"][1].get<double>(), -0.5, 1e-8);
  EXPECT_TRUE(r.err.empty());

  r = run({"check", "--input", (kFixtures / "arc_infeasible.json").string(), "--quiet"});
  EXPECT_EQ(r.code, 2);
  j = json::parse(r.out);
  EXPECT_FALSE(j["feasible"].get<bool>());
  EXPECT_EQ(j["certificate"], json::array({1}));
}

TEST(Cli, RegressThenSolveSucceeds) {
  CliRun r = run({"regress", "--input", (kFixtures / "arc_infeasible.json").string(), "--quiet"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["solution"]["status"], "optimal");
  EXPECT_EQ(j["regression"]["mode"], "base");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"bogus"}).code, 64);
  EXPECT_EQ(run({"solve"}).code, 64);
  EXPECT_EQ(run({"solve", "--input", "x.json", "--nope"}).code, 64);
  EXPECT_EQ(run({"regress", "--input", (kFixtures / "regress_chain.json").string(),
                 "--method", "simplex"}).code, 64);
  EXPECT_EQ(run({"resistance", "--input", (kFixtures / "resistance_graph.json").string()}).code, 64);
}

TEST(Cli, DataAndIoErrors) {
  CliRun r = run({"solve", "--input", (kFixtures / "bad_table.json").string()});
  EXPECT_EQ(r.code, 65);
  EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;
  EXPECT_EQ(run({"solve", "--input", (kFixtures / "nope.json").string()}).code, 74);
  const fs::path dir = scratch("data");
  const auto bad = write(dir, "bad.json", "{\"n\": 2,\n \"edges\": [\n");
  r = run({"solve", "--input", bad.string()});
  EXPECT_EQ(r.code, 65);
  EXPECT_NE(r.err.find("malformed JSON"), std::string::npos) << r.err;
  // semisup without labels is a data error
  EXPECT_EQ(run({"semisup", "--input", (kFixtures / "hypergraph.json").string()}).code, 65);
  // unwritable output
  EXPECT_EQ(run({"solve", "--input", (kFixtures / "diode_circuit.json").string(), "--output",
                 (dir / "missing" / "out.json").string()}).code, 74);
}

TEST(Cli, IterationLimit) {
  CliRun r = run({"solve", "--input", (kFixtures / "hypergraph.json").string(), "--max-iter", "1",
               "--tol", "1e-14", "--quiet"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(json::parse(r.out)["status"], "iteration_limit");
}

TEST(Cli, OutputFileMatchesStdout) {
  const fs::path dir = scratch("out");
  const std::string input = (kFixtures / "table.json").string();
  CliRun a = run({"solve", "--input", input, "--quiet"});
  CliRun b = run({"solve", "--input", input, "--quiet", "--output", (dir / "s.json").string()});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_TRUE(b.out.empty());
  EXPECT_EQ(sublap::testing::slurp(dir / "s.json"), a.out);
}

TEST(Cli, CsvOutputs) {
  CliRun r = run({"resistance", "--input", (kFixtures / "diode_circuit.json").string(), "--all-pairs",
               "--quiet"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("vertex,source,left,right,ground\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("inf"), std::string::npos);

  const fs::path dir = scratch("csv");
  r = run({"semisup", "--input", (kFixtures / "semisup_path.json").string(), "--csv",
           (dir / "l.csv").string(), "--quiet"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = sublap::testing::slurp(dir / "l.csv");
  // Predictions for the boundary vertices only.
  EXPECT_EQ(csv.rfind("vertex,x,label\n1,", 0), 0u) << csv;
  EXPECT_NE(csv.find(",+1\n2,"), std::string::npos) << csv;
  EXPECT_EQ(csv.find("\n0,"), std::string::npos) << csv;
  EXPECT_EQ(csv.find("\n4,"), std::string::npos) << csv;

  r = run({"centrality", "--input", (kFixtures / "star.json").string(), "--measure", "closeness",
           "--csv", (dir / "c.csv").string(), "--quiet"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["measure"], "closeness");
  EXPECT_GT(j["scores"][0]["score"].get<double>(), j["scores"][1]["score"].get<double>());
  EXPECT_EQ(sublap::testing::slurp(dir / "c.csv").rfind("vertex,score\n", 0), 0u);
}

TEST(Cli, ResistanceByName) {
  CliRun r = run({"resistance", "--input", (kFixtures / "diode_circuit.json").string(), "--source",
               "ground", "--target", "source", "--quiet"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["source"], 3);
  EXPECT_EQ(j["target"], 0);
  EXPECT_TRUE(j["value"].is_null());
  EXPECT_TRUE(j["infinite"].get<bool>());
  EXPECT_EQ(run({"resistance", "--input", (kFixtures / "diode_circuit.json").string(), "--source",
                 "nowhere", "--target", "0"}).code, 65);
}

TEST(Cli, CorpusExitCodes) {
  const fs::path dir = fs::temp_directory_path() / "sublap_cli_test_corpus";
  const auto cases = sublap::testing::load_corpus(kFixtures, dir);
  ASSERT_GE(cases.size(), 12u);
  for (const auto& c : cases) {
    const auto r = sublap::testing::run_case(c, dir);
    EXPECT_EQ(r.exit_code, c.expected_exit) << c.line << "\n" << r.err;
  }
}

TEST(Cli, Deterministic) {
  const fs::path dir = fs::temp_directory_path() / "sublap_cli_test_det";
  for (const auto& c : sublap::testing::load_corpus(kFixtures, dir)) {
    const auto a = sublap::testing::run_case(c, dir);
    const auto b = sublap::testing::run_case(c, dir);
    EXPECT_EQ(a.out, b.out) << c.line;
    EXPECT_EQ(a.err, b.err) << c.line;
    EXPECT_EQ(a.files, b.files) << c.line;
  }
}

}  // namespace
