#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hamlie/cli.hpp"

using namespace hamlie;
using namespace hamlie::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const char* env = std::getenv("HAMLIE_TEST_TMP");
  const std::filesystem::path base = env && *env ? env : std::filesystem::temp_directory_path();
  const auto dir = base / "cli_scratch";
  std::filesystem::create_directories(dir);
  return dir / name;
}

RunConfig cfg(const std::string& command, std::size_t n = 2) {
  RunConfig c;
  c.command = command;
  c.n = n;
  c.samples = 20;
  return c;
}

}  // namespace

TEST(Parse, VectorsAndGrades) {
  EXPECT_EQ(parse_vector("1/2,-3,0", 3, "--alpha"), (Vector{Rational(1, 2), Rational(-3), Rational(0)}));
  EXPECT_EQ(parse_vector("", 4, "--alpha"), Vector(4));
  EXPECT_THROW((void)parse_vector("1,2", 4, "--alpha"), std::invalid_argument);
  EXPECT_THROW((void)parse_vector("0.5,0", 2, "--alpha"), std::invalid_argument);
  EXPECT_THROW((void)parse_vector("1,", 2, "--alpha"), std::invalid_argument);
  EXPECT_EQ(parse_grade("1,-2", 2, "--r"), (Grade{1, -2}));
  EXPECT_THROW((void)parse_grade("1/2,0", 2, "--r"), std::invalid_argument);
}

TEST(Parse, RepresentationSpecs) {
  const auto alg = build_sp(2);
  EXPECT_EQ(build_rep("natural", alg)->dim(), 4u);
  EXPECT_EQ(build_rep("trivial", alg)->dim(), 1u);
  EXPECT_EQ(build_rep("fundamental:2", alg)->dim(), 5u);
  EXPECT_EQ(build_rep("sym:2", alg)->dim(), 10u);
  EXPECT_EQ(build_rep("exterior:2", alg)->dim(), 6u);
  EXPECT_THROW((void)build_rep("sym:x", alg), std::invalid_argument);
  EXPECT_THROW((void)build_rep("sym:", alg), std::invalid_argument);
  EXPECT_THROW((void)build_rep("adjoint", alg), std::invalid_argument);
}

TEST(Run, StructureChecksPass) {
  for (const char* c : {"sp-check", "theta-check", "dim-check", "claim1-ineq"}) {
    const auto res = run(cfg(c));
    EXPECT_EQ(res.exit_code, 0) << c << " " << res.report.dump();
    EXPECT_EQ(res.report["command"], c);
    EXPECT_TRUE(res.report["ok"].get<bool>());
    EXPECT_FALSE(res.report["reports"].empty());
  }
}

TEST(Run, ModuleChecksPass) {
  for (const char* c : {"ham-bracket", "g1-check", "g2-table", "named-actions", "shift-iso"}) {
    auto conf = cfg(c);
    conf.rep_spec = "fundamental:2";
    conf.alpha = "1/3,0,0,-1/2";
    conf.beta = "1/2,0,0,0";
    const auto res = run(conf);
    EXPECT_EQ(res.exit_code, 0) << c << " " << res.report.dump();
  }
  auto g2 = cfg("g2-table");
  g2.r = "1,0,-1,2";
  const auto res = run(g2);
  EXPECT_EQ(res.report["reports"][0]["samples"], 10);
}

TEST(Run, SubmoduleCheckAndWitness) {
  auto c = cfg("submodule-check");
  c.kind = "deltak";
  c.rep_spec = "fundamental:2";
  c.alpha = "1/2,0,0,0";
  c.box_radius = 2;
  c.gen_radius = 1;
  EXPECT_EQ(run(c).exit_code, 0);
  c.kind = "delta1";
  EXPECT_THROW((void)run(c), std::invalid_argument);
  c.kind = "nonsense";
  EXPECT_THROW((void)run(c), std::invalid_argument);

  auto w = cfg("claim2-witness");
  w.r = "1,0,0,0";
  const auto res = run(w);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_EQ(res.report["witness"]["wedge"], json({"1", "0", "0", "0", "0", "0"}));
}

TEST(Run, ProbeVerdictsAndExitCodes) {
  auto p = cfg("probe", 1);
  p.rep_spec = "trivial";
  p.alpha = "1,1";
  p.quotient = true;
  const auto proper = run(p);
  EXPECT_EQ(proper.exit_code, 0);
  EXPECT_EQ(proper.report["probe"]["verdict"], "PROPER");
  EXPECT_EQ(proper.report["reports"][0]["check"], "quotient-probe");
  EXPECT_NE(proper.summary.find("probe: PROPER"), std::string::npos);
  p.box_radius = 2;
  p.quotient = false;
  const auto inc = run(p);
  EXPECT_EQ(inc.report["probe"]["verdict"], "INCONCLUSIVE");
  EXPECT_EQ(inc.exit_code, 1);
}

TEST(Run, RejectsBadInput) {
  EXPECT_THROW((void)run(cfg("no-such-command")), std::invalid_argument);
  auto c = cfg("ham-bracket");
  c.alpha = "1,2";
  EXPECT_THROW((void)run(c), std::invalid_argument);
  c.alpha.clear();
  c.n = 0;
  EXPECT_THROW((void)run(c), std::invalid_argument);
  auto t = cfg("theta-check", 2);
  t.k = 3;
  EXPECT_THROW((void)run(t), std::invalid_argument);
}

TEST(Run, EveryListedCommandDispatches) {
  for (const auto& info : list_checks()) {
    auto c = cfg(info.command, 2);
    c.kind = "delta1";
    c.box_radius = 2;
    c.gen_radius = 1;
    c.samples = 5;
    EXPECT_NO_THROW({
      const auto res = run(c);
      EXPECT_EQ(res.exit_code, 0) << info.command;
    }) << info.command;
  }
  EXPECT_EQ(list_checks().size(), 13u);
}

TEST(Run, OutputFileIsDeterministic) {
  const auto a = scratch("a.json"), b = scratch("b.json");
  auto c = cfg("ham-bracket");
  c.rep_spec = "sym:2";
  c.alpha = "1/3,0,1/2,0";
  c.output = a.string();
  c.threads = 1;
  (void)run(c);
  c.output = b.string();
  c.threads = 3;
  (void)run(c);
  std::ifstream fa(a), fb(b);
  const std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);
  EXPECT_TRUE(json::parse(sa)["ok"].get<bool>());
  c.output = (scratch("no_such_dir") / "x" / "y.json").string();
  EXPECT_THROW((void)run(c), std::runtime_error);
}

TEST(Representations, FileRoundTripAndCorruption) {
  const auto path = scratch("fund2.json");
  save_rep(*fundamental_rep(build_sp(2), 2), path.string());
  auto c = cfg("ham-bracket");
  c.rep_spec = "file:" + path.string();
  EXPECT_EQ(run(c).exit_code, 0);
  c.n = 3;
  EXPECT_THROW((void)run(c), std::invalid_argument);
  {
    std::ofstream out(path);
    out << "{\"name\": \"broken\"";
  }
  c.n = 2;
  EXPECT_THROW((void)run(c), std::invalid_argument);
}

TEST(Representations, CacheDirectoryIsUsed) {
  const auto dir = scratch("cache");
  std::filesystem::remove_all(dir);
  ::setenv("HAMLIE_CACHE_DIR", dir.string().c_str(), 1);
  const auto first = resolve_rep("fundamental:2", 2);
  const auto file = dir / "n2_fundamental_2.json";
  EXPECT_TRUE(std::filesystem::exists(file));
  const auto second = resolve_rep("fundamental:2", 2);
  EXPECT_EQ(second->action, first->action);
  ::unsetenv("HAMLIE_CACHE_DIR");
}
