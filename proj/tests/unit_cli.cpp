#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "depsent/cli.hpp"
#include "depsent/ruleset.hpp"

using namespace depsent;

namespace {

const std::string kDataDir = DEPSENT_TEST_DATA_DIR;
const std::string kManifest = kDataDir + "/mini/manifest.lex";
const std::string kExample = kDataDir + "/running_example.conll";

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

Outcome run_cfg(const RunConfig& cfg) {
  std::ostringstream out, err;
  Outcome o;
  o.status = run(cfg, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

Outcome run_argv(std::vector<std::string> args) {
  args.insert(args.begin(), "depsent");
  std::vector<const char*> argv;
  for (const std::string& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

RunConfig base_analyze() {
  RunConfig cfg;
  cfg.command = "analyze";
  cfg.lexicon = kManifest;
  cfg.inputs = {kExample};
  return cfg;
}

} // namespace

TEST_CASE("analyze emits one record per document") {
  RunConfig cfg = base_analyze();
  cfg.inputs.push_back(kDataDir + "/corpus/doc2.conll");
  Outcome o = run_cfg(cfg);
  REQUIRE(o.status == 0);
  CHECK(o.err.empty());
  CHECK(o.out == "running_example\t1.9\tpositive\t1.9\n"
                 "doc2\t-3\tnegative\t-3\n");
}

TEST_CASE("analyze renders an aligned table on request") {
  RunConfig cfg = base_analyze();
  cfg.format = "table";
  Outcome o = run_cfg(cfg);
  REQUIRE(o.status == 0);
  CHECK(o.out == "running_example  1.9  positive\n");
}

TEST_CASE("a rule subset changes the analysis") {
  RunConfig cfg = base_analyze();
  cfg.rules_subset = "negation";
  Outcome o = run_cfg(cfg);
  REQUIRE(o.status == 0);
  // negation wipes "handsome", nothing else fires: only "like" survives
  CHECK(o.out == "running_example\t1\tpositive\t1\n");

  cfg.rules_subset = "negation, sarcasm";
  o = run_cfg(cfg);
  CHECK(o.status == 1);
  CHECK(o.out.empty());
  CHECK(o.err.find("error:") == 0);
  CHECK(o.err.find("sarcasm") != std::string::npos);
}

TEST_CASE("evaluate reports the ablation by default") {
  RunConfig cfg;
  cfg.command = "evaluate";
  cfg.lexicon = kManifest;
  cfg.inputs = {kDataDir + "/corpus/manifest.tsv"};
  cfg.format = "table";
  Outcome o = run_cfg(cfg);
  REQUIRE(o.status == 0);
  CHECK(o.out.find("baseline") != std::string::npos);
  CHECK(o.out.find("+negation") != std::string::npos);
  CHECK(o.out.find("+intensification") != std::string::npos);
  CHECK(o.out.find("+irrealis") != std::string::npos);
  CHECK(o.out.find("100.00") != std::string::npos);

  cfg.format = "records";
  o = run_cfg(cfg);
  REQUIRE(o.status == 0);
  CHECK(o.out == "baseline=1\n+negation=1\n+intensification=1\n+irrealis=1\n");
}

TEST_CASE("evaluate with a subset reports a single accuracy") {
  RunConfig cfg;
  cfg.command = "evaluate";
  cfg.lexicon = kManifest;
  cfg.inputs = {kDataDir + "/corpus/manifest.tsv"};
  cfg.rules_subset = "negation,intensification,but,irrealis";
  cfg.format = "records";
  Outcome o = run_cfg(cfg);
  REQUIRE(o.status == 0);
  CHECK(o.out == "accuracy=1\n");

  cfg.format = "table";
  o = run_cfg(cfg);
  CHECK(o.out == "accuracy  100.00\n");

  cfg.inputs.push_back(kExample);
  o = run_cfg(cfg);
  CHECK(o.status == 1);
  CHECK(o.err.find("exactly one") != std::string::npos);
}

TEST_CASE("explain prints the state table and the final SO") {
  RunConfig cfg;
  cfg.command = "explain";
  cfg.lexicon = kManifest;
  cfg.inputs = {kExample};
  Outcome o = run_cfg(cfg);
  REQUIRE(o.status == 0);
  CHECK(o.out.find("Step") == 0);
  CHECK(o.out.find("handsome_5") != std::string::npos);
  // both pending instances sit on the apply queue of "is", negation first
  CHECK(o.out.find("[N_not(0,2), I_but(0,1)]") != std::string::npos);
  CHECK(o.out.find("sentence SO: 1.9\n") != std::string::npos);

  cfg.sentence = 2;
  o = run_cfg(cfg);
  CHECK(o.status == 1);
  CHECK(o.err.find("out of range") != std::string::npos);
}

TEST_CASE("validate-rules summarizes the pack") {
  RunConfig cfg;
  cfg.command = "validate-rules";
  Outcome o = run_cfg(cfg);
  REQUIRE(o.status == 0);
  CHECK(o.out.find("ok: 4 operations\n") == 0);
  CHECK(o.out.find("negation: shift amount=lexicon levelsup=1 priority=2") !=
        std::string::npos);
  CHECK(o.out.find("scope=dest,branch:attr,branch:acomp,subjr") != std::string::npos);

  // with a lexicon the list references are checked too
  cfg.lexicon = kManifest;
  o = run_cfg(cfg);
  CHECK(o.status == 0);

  cfg.rules = kDataDir + "/mini/manifest.lex"; // not XML
  o = run_cfg(cfg);
  CHECK(o.status == 1);
  CHECK(o.err.find("error:") == 0);
}

TEST_CASE("emit-builtin-rules prints the canonical XML") {
  RunConfig cfg;
  cfg.command = "emit-builtin-rules";
  Outcome o = run_cfg(cfg);
  REQUIRE(o.status == 0);
  CHECK(o.out == builtin_rules_xml());
}

TEST_CASE("failures leave stdout empty") {
  RunConfig cfg = base_analyze();
  cfg.inputs = {kDataDir + "/does_not_exist.conll"};
  Outcome o = run_cfg(cfg);
  CHECK(o.status == 1);
  CHECK(o.out.empty());
  CHECK(o.err.find("error:") == 0);
  CHECK(o.err.find("does_not_exist.conll") != std::string::npos);

  cfg = base_analyze();
  cfg.lexicon = kDataDir + "/no_such.lex";
  o = run_cfg(cfg);
  CHECK(o.status == 1);
  CHECK(o.out.empty());
}

TEST_CASE("the argument parser wires up subcommands") {
  Outcome o = run_argv({"analyze", "--lexicon", kManifest, "--input", kExample});
  REQUIRE(o.status == 0);
  CHECK(o.out == "running_example\t1.9\tpositive\t1.9\n");

  o = run_argv({"analyze", "--lexicon", kManifest, "--input", kExample, "--format", "table"});
  REQUIRE(o.status == 0);
  CHECK(o.out == "running_example  1.9  positive\n");

  o = run_argv({"explain", "--lexicon", kManifest, "--input", kExample, "--sentence", "1"});
  REQUIRE(o.status == 0);
  CHECK(o.out.find("sentence SO: 1.9") != std::string::npos);

  o = run_argv({"emit-builtin-rules"});
  REQUIRE(o.status == 0);
  CHECK(o.out == builtin_rules_xml());
}

TEST_CASE("the argument parser rejects bad invocations") {
  CHECK(run_argv({}).status != 0);
  CHECK(run_argv({"frobnicate"}).status != 0);
  CHECK(run_argv({"analyze", "--input", kExample}).status != 0); // no lexicon
  CHECK(run_argv({"analyze", "--lexicon", kManifest}).status != 0); // no input
  CHECK(run_argv({"analyze", "--lexicon", kManifest, "--input", kExample, "--format", "yaml"})
            .status != 0);
  CHECK(run_argv({"evaluate", "--lexicon", kManifest, "--input", kExample, "--jobs", "0"})
            .status != 0);

  Outcome help = run_argv({"--help"});
  CHECK(help.status == 0);
  CHECK(help.out.find("analyze") != std::string::npos);
  CHECK(help.out.find("evaluate") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  RunConfig analyze = base_analyze();
  RunConfig explain;
  explain.command = "explain";
  explain.lexicon = kManifest;
  explain.inputs = {kExample};
  RunConfig eval;
  eval.command = "evaluate";
  eval.lexicon = kManifest;
  eval.inputs = {kDataDir + "/corpus/manifest.tsv"};
  eval.jobs = 4;

  for (const RunConfig& cfg : {analyze, explain, eval}) {
    Outcome a = run_cfg(cfg);
    Outcome b = run_cfg(cfg);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
  }
}
