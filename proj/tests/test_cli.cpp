#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "quasihyp/cli.hpp"

using namespace quasihyp;
using fixtures::problem_path;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.push_back("--format");
  args.push_back("json");
  CliRun r = run_cli(args);
  EXPECT_EQ(r.code, expected_code) << r.err;
  return Json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = "") {
  auto dir = std::filesystem::temp_directory_path() / "quasihyp_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  if (!content.empty()) std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, CertifyFourLinesExitsZero) {
  CliRun r = run_cli({"certify", problem_path("p2_four_lines.json"), "--theorem", "1.2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("7/6 > 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("verdict: certified"), std::string::npos);
}

TEST(Cli, CertifyThreeLinesExitsTwo) {
  EXPECT_EQ(run_cli({"certify", problem_path("p2_three_lines.json"), "--theorem", "1.2"}).code, 2);
}

TEST(Cli, NuOnFourLines) {
  Json j = run_json({"nu", problem_path("p2_four_lines.json"), "--max-weight", "4"});
  EXPECT_EQ(j["results"]["nu"]["value"], "4/3");
  EXPECT_EQ(j["results"]["nu"]["witness"]["subset"], Json::array({"D1"}));
  EXPECT_EQ(j["tool"], "quasihyp");
  EXPECT_EQ(j["input_digest"].get<std::string>().rfind("sha256:", 0), 0u);
}

TEST(Cli, BoundsOnFourLines) {
  Json j = run_json({"bounds", problem_path("p2_four_lines.json")});
  EXPECT_EQ(j["results"]["theta_nef"]["value"], "7/6");
  EXPECT_EQ(j["results"]["lambda_theta"]["value"], "7/6");
  EXPECT_EQ(j["results"]["pairwise_alpha"]["value"], "4/3");
  EXPECT_EQ(j["results"]["lambda_theta"]["asymptotic"], true);
}

TEST(Cli, MultiplicitiesAndKoszul) {
  Json m = run_json({"multiplicities", problem_path("p2_line_and_conic.json")});
  EXPECT_EQ(m["results"]["multiplicities"], Json::array({2, 1}));
  EXPECT_EQ(m["results"]["phi_identity"]["holds"], true);
  Json k = run_json({"koszul-verify", problem_path("p2_three_lines.json")});
  EXPECT_EQ(k["results"]["filtration_bound"]["direct"], "30");
  EXPECT_EQ(k["results"]["acyclic_closed_form"]["value"], "30");
  Json p3 = run_json({"koszul-verify", problem_path("p3_coordinate_planes.json"), "--box-size", "2"});
  EXPECT_EQ(p3["results"]["regular_sequence_inclusion"]["holds"], true);
}

TEST(Cli, LatticeOnlyProblem) {
  CliRun r = run_cli({"certify", problem_path("p1xp1_lattice.json"), "--theorem", "1.2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("certified-with-assumptions"), std::string::npos);
  CliRun p = run_cli({"certify", problem_path("p1xp1_lattice.json"), "--theorem", "1.1"});
  EXPECT_EQ(p.code, 0) << p.out << p.err;
  EXPECT_EQ(run_cli({"nu", problem_path("p1xp1_lattice.json")}).code, 1);
}

TEST(Cli, AllShippedProblemsParse) {
  for (const auto& entry : std::filesystem::directory_iterator(QUASIHYP_PROBLEMS_DIR)) {
    EXPECT_NO_THROW(load_problem(entry.path().string())) << entry.path();
  }
}

TEST(Cli, MalformedFileReportsPosition) {
  CliRun r = run_cli({"nu", std::string(QUASIHYP_PROBLEMS_DIR) + "/../tests/data/malformed.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("parse error at byte"), std::string::npos) << r.err;
}

TEST(Cli, SemanticErrorsCarryJsonPointer) {
  auto path = temp_file("bad_label.json", R"({"model": {"kind": "projective_space", "dimension": 2,
    "divisors": [{"label": "A", "degree": [1], "terms": [[[1, 0, 0], "1"]]}],
    "assert_proper": [["A", "Z"]]}})");
  CliRun r = run_cli({"nu", path.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("/model/assert_proper/0/1"), std::string::npos) << r.err;
  auto term = temp_file("bad_term.json", R"({"model": {"kind": "projective_space", "dimension": 2,
    "divisors": [{"label": "A", "degree": [1], "terms": [[[1, 0, 0], "1/0"]]}]}})");
  CliRun t = run_cli({"nu", term.string()});
  EXPECT_EQ(t.code, 1);
  EXPECT_NE(t.err.find("/model/divisors/0/terms/0/1"), std::string::npos) << t.err;
  EXPECT_EQ(run_cli({"certify", problem_path("p2_four_lines.json"), "--theorem", "9.9"}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
}

TEST(Cli, DigestIgnoresFormattingButNotContent) {
  const std::string a = R"({"model": {"kind": "projective_space", "dimension": 2,
    "divisors": [{"label": "A", "degree": [1], "terms": [[[1, 0, 0], "2/2"]]}]}, "task": {"m": 1}})";
  const std::string b = R"({ "task":{"m":1},"model":{"divisors":[{"terms":[[[1,0,0],1]],"degree":[1],"label":"A"}],
    "dimension":2,"kind":"projective_space"}})";
  const std::string c = R"({"model": {"kind": "projective_space", "dimension": 2,
    "divisors": [{"label": "A", "degree": [1], "terms": [[[1, 0, 0], "3"]]}]}, "task": {"m": 1}})";
  EXPECT_EQ(input_digest(parse_problem_text(a)), input_digest(parse_problem_text(b)));
  EXPECT_NE(input_digest(parse_problem_text(a)), input_digest(parse_problem_text(c)));
}

TEST(Cli, ReportRoundTripKeepsVerdict) {
  for (const std::string theorem : {"3.3", "2.1", "1.1", "1.2", "2.2"}) {
    auto out = temp_file("report_" + theorem + ".json");
    CliRun r = run_cli({"certify", problem_path("p2_four_lines.json"), "--theorem", theorem, "--format", "json", "--out",
                     out.string()});
    ASSERT_EQ(r.code, 0) << theorem << r.err;
    std::ifstream in(out);
    Json report = Json::parse(in);
    Certificate back = certificate_from_json(report["results"]["certificate"]);
    EXPECT_EQ(to_json(back), report["results"]["certificate"]);
    EXPECT_EQ(to_string(back.verdict), report["results"]["certificate"]["verdict"]);
    CliRun v = run_cli({"verify-report", out.string(), "--format", "json"});
    EXPECT_EQ(v.code, 0) << v.err;
    Json checked = Json::parse(v.out);
    EXPECT_EQ(checked["results"]["rederived_verdict"], report["results"]["certificate"]["verdict"]);
  }
}
