#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "hyperbmc/driver.hpp"
#include "hyperbmc/error.hpp"

namespace fs = std::filesystem;
using namespace hyperbmc;

namespace {

const fs::path kSource = HYPERBMC_SOURCE_DIR;
const fs::path kIntro = kSource / "corpus" / "intro";

CheckConfig intro(const std::string& prop) {
  CheckConfig cfg;
  cfg.left_path = kIntro / "k1.kr";
  cfg.right_path = kIntro / "k2.kr";
  cfg.property_path = kIntro / prop;
  return cfg;
}

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(HYPERBMC_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string intro_args(const std::string& prop) {
  return "check --left " + (kIntro / "k1.kr").string() + " --right " + (kIntro / "k2.kr").string() + " --prop " +
         (kIntro / prop).string();
}

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hyperbmc_driver_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kSelfLoop = "states: s\ninit: s\nap: a\nlabel s: a\ntrans s -> s\n";

}  // namespace

TEST(ProphecySpec, Parse) {
  const ProphecySpec s = ProphecySpec::parse("next:a:2");
  EXPECT_EQ(s.kind, ProphecySpec::Kind::Next);
  EXPECT_EQ(s.prop, "a");
  EXPECT_EQ(s.depth, 2u);
  EXPECT_EQ(ProphecySpec::parse(s.to_string()).depth, 2u);
  EXPECT_EQ(ProphecySpec::parse("next a 3").depth, 3u);
  EXPECT_THROW(ProphecySpec::parse("next:a:0"), ParseError);
  EXPECT_THROW(ProphecySpec::parse("prev:a:1"), ParseError);
  EXPECT_THROW(ProphecySpec::parse("next:1x:1"), ParseError);
}

TEST(RunCheck, IntroViolated) {
  const Report r = run_check(intro("phi1.hp"));
  EXPECT_EQ(r.verdict, Verdict::Violated);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->depth, 3u);
  std::vector<std::string> names;
  for (StateIndex s : r.counterexample->p_path) names.push_back(r.left_original.name(s));
  EXPECT_EQ(names, (std::vector<std::string>{"s1", "s2", "s3"}));
  EXPECT_EQ(exit_code(r.verdict), 1);
}

TEST(RunCheck, IntroUnknownWithoutProphecy) {
  const Report r = run_check(intro("phi2.hp"));
  EXPECT_EQ(r.verdict, Verdict::Unknown);
  EXPECT_EQ(r.max_sim_bound, 5u);
  EXPECT_FALSE(r.note.empty());
  EXPECT_EQ(exit_code(r.verdict), 2);
}

TEST(RunCheck, IntroHoldsWithProphecy) {
  CheckConfig cfg = intro("phi2.hp");
  cfg.prophecy = ProphecySpec::parse("next:a:2");
  const Report r = run_check(cfg);
  EXPECT_EQ(r.verdict, Verdict::Holds);
  ASSERT_TRUE(r.ae_witness.has_value());
  EXPECT_EQ(r.bound, 5u);
  EXPECT_EQ(r.left.size(), 6u);
  EXPECT_EQ(r.left_original.size(), 4u);
  EXPECT_TRUE(validate_witness_ae(r.left, r.right, parse_predicate("l.a <-> r.a"), *r.ae_witness).empty());
  EXPECT_EQ(exit_code(r.verdict), 0);
}

TEST(RunCheck, RobotPatrolUsesFewerStates) {
  CheckConfig cfg;
  cfg.left_path = kSource / "corpus/rp/left.kr";
  cfg.right_path = kSource / "corpus/rp/right.kr";
  cfg.property_path = kSource / "corpus/rp/property.hp";
  const Report r = run_check(cfg);
  EXPECT_EQ(r.verdict, Verdict::Holds);
  ASSERT_TRUE(r.ea_witness.has_value());
  ASSERT_TRUE(r.subset_size.has_value());
  EXPECT_LT(*r.subset_size, r.left.size());
  EXPECT_EQ(r.bound, 6u);
}

TEST(RunCheck, ProphecyOnExistsForallIsRejected) {
  CheckConfig cfg = intro("phi2.hp");
  cfg.property_path.clear();
  cfg.property_text = "exists forall. G (l.a <-> r.a)";
  cfg.prophecy = ProphecySpec::parse("next:a:1");
  EXPECT_THROW(run_check(cfg), FragmentError);
}

TEST(RunCheck, ModeMismatch) {
  CheckConfig cfg = intro("phi2.hp");
  cfg.mode = Pattern::ExistsForall;
  EXPECT_THROW(run_check(cfg), FragmentError);
  cfg.mode = Pattern::ForallExists;
  EXPECT_NO_THROW(run_check(cfg));
}

TEST(RunCheck, IterationsAlternate) {
  const Report r = run_check(intro("phi1.hp"));
  ASSERT_GE(r.iterations.size(), 2u);
  EXPECT_EQ(r.iterations[0].kind, "simulation");
  EXPECT_EQ(r.iterations[1].kind, "falsification");
  EXPECT_EQ(r.iterations.back().outcome, "refuted");
}

TEST(Export, OneStateExistsForall) {
  CheckInput in{parse_kripke(kSelfLoop), parse_kripke(kSelfLoop), parse_property("exists forall. G (l.a <-> r.a)"),
                std::nullopt};
  const ExportedEncoding e = export_encoding(in, {}, 1);
  EXPECT_NE(e.dimacs.find("p cnf 1 1\n1 0\n"), std::string::npos);
  for (const char* f : {"legal", "exhaustive", "initial", "successor", "loop-back", "predicate"})
    EXPECT_NE(e.dimacs.find(std::string("c family ") + f + " "), std::string::npos) << f;
  const auto map = nlohmann::json::parse(e.var_map);
  EXPECT_EQ(map["vars"]["1"], "sim.1.1");
}

TEST(Bench, EmptyDirectory) {
  const fs::path dir = scratch("empty");
  const auto rows = run_benchmarks(dir.string());
  EXPECT_TRUE(rows.empty());
  EXPECT_FALSE(format_bench_table(rows).empty());
  EXPECT_THROW(run_benchmarks((dir / "missing").string()), Error);
}

TEST(Bench, BrokenCaseDoesNotStopOthers) {
  const fs::path dir = scratch("broken");
  write(dir / "a_bad/manifest.json", "{\"left\": \"left.kr\"}");
  write(dir / "b_ok/left.kr", kSelfLoop);
  write(dir / "b_ok/right.kr", kSelfLoop);
  write(dir / "b_ok/property.hp", "forall exists. G (l.a <-> r.a)\n");
  write(dir / "b_ok/manifest.json",
        R"({"left": "left.kr", "right": "right.kr", "property": "property.hp", "expected": "holds", "mode": "ae"})");
  const auto rows = run_benchmarks(dir.string());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].name, "a_bad");
  EXPECT_EQ(rows[0].verdict, "error");
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_FALSE(rows[0].matches);
  EXPECT_EQ(rows[1].verdict, "holds");
  EXPECT_TRUE(rows[1].matches);
  EXPECT_EQ(rows[1].bound, 1u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli(intro_args("phi1.hp")).status, 1);
  EXPECT_EQ(cli(intro_args("phi2.hp")).status, 2);
  EXPECT_EQ(cli(intro_args("phi2.hp") + " --prophecy next:a:2").status, 0);
  EXPECT_GT(cli(intro_args("missing.hp")).status, 2);
  EXPECT_GT(cli(intro_args("phi2.hp") + " --mode ea").status, 2);
}

TEST(Cli, JsonReport) {
  const CliResult r = cli(intro_args("phi2.hp") + " --prophecy next:a:2 --format json");
  EXPECT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "holds");
  EXPECT_EQ(j["bound"], 5);
}

TEST(Cli, ExternalBackendAgrees) {
  const std::string backend = std::string(" --backend 'external:") + HYPERBMC_PYTHON + " " +
                              (kSource / "tests/fixtures/dpll_solver.py").string() + "'";
  EXPECT_EQ(cli(intro_args("phi1.hp") + backend).status, 1);
  EXPECT_EQ(cli(intro_args("phi2.hp") + backend).status, 2);
  EXPECT_EQ(cli(intro_args("phi2.hp") + " --prophecy next:a:2" + backend).status, 0);
  const std::string broken = std::string(" --backend 'external:") + HYPERBMC_PYTHON + " " +
                             (kSource / "tests/fixtures/bad_solver.py").string() + " wrong-model'";
  EXPECT_GT(cli(intro_args("phi2.hp") + broken).status, 2);
}

TEST(Cli, InvalidStructureWritesNothing) {
  const fs::path dir = scratch("invalid");
  write(dir / "bad.kr", "states: s1 s2\ninit: s1\nap: a\ntrans s1 -> s2\n");
  const fs::path out = dir / "out.cnf";
  const CliResult r = cli("export --left " + (dir / "bad.kr").string() + " --right " + (kIntro / "k2.kr").string() +
                          " --prop " + (kIntro / "phi2.hp").string() + " --bound 1 -o " + out.string());
  EXPECT_GT(r.status, 2);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_FALSE(fs::exists(out.string() + ".map.json"));
}

TEST(Cli, ExportMatchesGolden) {
  const CliResult r = cli("export --left " + (kIntro / "k1.kr").string() + " --right " + (kIntro / "k2.kr").string() +
                          " --prop " + (kIntro / "phi2.hp").string() + " --bound 5");
  EXPECT_EQ(r.status, 0);
  std::ifstream in(kSource / "tests/golden/intro_ae_k5.cnf");
  const std::string golden((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(r.out, golden);
}
