#include <gtest/gtest.h>

#include "cli.hpp"

namespace projclass::cli {
namespace {

Outcome run_as(const std::string& kind, const std::string& text, Options o = {}) {
  o.kind = kind;
  return run_text(text, o);
}

std::vector<std::string> error_paths(const Outcome& out) {
  std::vector<std::string> paths;
  for (const auto& e : out.report.at("errors")) paths.push_back(e.at("path").get<std::string>());
  return paths;
}

TEST(CliExamples, HydroVelocitiesGiveTwoStructures) {
  Outcome out = run_as("hydro", R"j({"kind":"hydro","lambda1":"(X-Y)^2*(X+Y)","lambda2":"-(X-Y)^2*(X+Y)"})j");
  EXPECT_EQ(out.exit_code, Classified);
  EXPECT_EQ(out.report.at("count"), 2);
  EXPECT_EQ(out.report.at("schema"), kSchema);
  EXPECT_EQ(out.report.at("status"), "classified");
}

TEST(CliExamples, PainleveOneDegenerateSolution) {
  Outcome out = run_as("ode", R"j({"kind":"ode","A0":"6*y^2+x","A1":"0","A2":"0","A3":"0","question":"degenerate"})j");
  EXPECT_EQ(out.exit_code, Classified);
  EXPECT_EQ(out.report.at("degenerate").at("psi1"), "1");
  EXPECT_EQ(out.report.at("degenerate").at("residual").at("verdict"), "Zero");
}

TEST(CliExamples, PainleveThreeIntegral) {
  Outcome out = run_as("verify-integral", R"j({
    "kind": "verify-integral", "context": {"parameters": ["a", "g"]},
    "painleve": {"which": 3, "params": ["a", "0", "g", "0"]},
    "integral": "x^2*(p/y)^2+2*x*p/y-2*a*x*y-g*x^2*y^2"})j");
  EXPECT_EQ(out.exit_code, Classified);
  EXPECT_EQ(out.report.at("residual").at("verdict"), "Zero");
  EXPECT_EQ(out.report.at("conserved"), true);
  Outcome wrong = run_as("verify-integral", R"j({
    "context": {"parameters": ["a", "g"]}, "painleve": {"which": 3, "params": ["a", "0", "g", "0"]},
    "integral": "x^2*(p/y)^2+2*x*p/y"})j");
  EXPECT_EQ(wrong.report.at("conserved"), false);
  EXPECT_TRUE(wrong.report.at("residual").contains("witness"));
}

TEST(CliErrors, SchemaViolationsCarryPointerPaths) {
  Outcome out = run_as("ode", R"j({"kind":"ode","A0":"6*y^2+z","policy":{"sampels":3,"box":["3","1"]},"extra":1})j");
  EXPECT_EQ(out.exit_code, InputError);
  EXPECT_EQ(out.report.at("status"), "input-error");
  auto paths = error_paths(out);
  for (const char* p : {"/extra", "/policy/sampels", "/policy/box", "/A0"}) {
    EXPECT_NE(std::find(paths.begin(), paths.end(), p), paths.end()) << p;
  }
}

TEST(CliErrors, MalformedAndMismatchedRequests) {
  EXPECT_EQ(run_as("ode", "{not json").exit_code, InputError);
  EXPECT_EQ(run_as("ode", "[1, 2]").exit_code, InputError);
  Outcome mismatch = run_as("hydro", R"j({"kind":"ode","A0":"x"})j");
  EXPECT_EQ(mismatch.exit_code, InputError);
  EXPECT_EQ(error_paths(mismatch), std::vector<std::string>{"/kind"});
  Outcome schema = run_as("ode", R"j({"schema":"projclass/0","A0":"x"})j");
  EXPECT_EQ(error_paths(schema), std::vector<std::string>{"/schema"});
  EXPECT_EQ(run_as("", R"j({"A0":"x"})j").exit_code, InputError);
  Outcome q = run_as("ode", R"j({"A0":"x","question":["killing","curvature"]})j");
  EXPECT_EQ(error_paths(q), std::vector<std::string>{"/question/1"});
}

TEST(CliErrors, PayloadShapes) {
  auto paths = [](const std::string& kind, const std::string& text) { return error_paths(run_as(kind, text)); };
  EXPECT_EQ(paths("connection", R"j({"gamma":{"113":"X"}})j"), std::vector<std::string>{"/gamma/113"});
  EXPECT_EQ(paths("connection", R"j({"gamma":{"112":"X","121":"Y"}})j"), std::vector<std::string>{"/gamma/121"});
  EXPECT_EQ(paths("hydro", R"j({"lambda1":"X"})j"), std::vector<std::string>{"/lambda2"});
  EXPECT_EQ(paths("hydro", R"j({"A":"X","B":"Y","lambda1":"X","lambda2":"Y"})j"), std::vector<std::string>{"/"});
  EXPECT_EQ(paths("ode", R"j({"A0":"x","painleve":{"which":1}})j"), std::vector<std::string>{"/painleve"});
  EXPECT_EQ(paths("ode", R"j({"painleve":{"which":7}})j"), std::vector<std::string>{"/painleve/which"});
  EXPECT_EQ(paths("frobenius", R"j({"prepotential":{"entry":"quartic"}})j"),
            std::vector<std::string>{"/prepotential/entry"});
  EXPECT_EQ(paths("frobenius", R"j({"prepotential":{"entry":"log","k":"3"}})j"), std::vector<std::string>{"/prepotential/k"});
  EXPECT_EQ(paths("verify-sigma", R"j({"A0":"x"})j"), std::vector<std::string>{"/"});
  EXPECT_EQ(paths("verify-integral", R"j({"A0":"x","integral":"p","p":"x"})j"), std::vector<std::string>{"/p"});
  EXPECT_EQ(paths("hydro", R"j({"A":"X","B":"Y","at":{"X":"1"}})j"), std::vector<std::string>{"/at/Y"});
  EXPECT_EQ(paths("ode", R"j({"context":{"variables":["x","x"]}})j"), std::vector<std::string>{"/context"});
}

TEST(CliErrors, CoincidentSpeedsAreRejectedInput) {
  Outcome out = run_as("hydro", R"j({"lambda1":"X+Y","lambda2":"Y+X"})j");
  EXPECT_EQ(out.exit_code, InputError);
}

TEST(CliStatus, UnclassifiedStratumExitsTwo) {
  Outcome out = run_as("connection", R"j({"gamma":{"211":"ln(X-5)"}})j");
  EXPECT_EQ(out.exit_code, Unclassified);
  EXPECT_EQ(out.report.at("status"), "unclassified");
  EXPECT_TRUE(out.report.at("unclassified").contains("killing"));
  EXPECT_FALSE(out.report.contains("count"));
}

TEST(CliStatus, DomainRejectionsStillClassify) {
  Outcome out = run_as("frobenius", R"j({"prepotential":{"entry":"trivial"},"question":["wdvv","flow"]})j");
  EXPECT_EQ(out.exit_code, Classified);
  EXPECT_EQ(out.report.at("rejected").at("flow").at("error"), "CoincidentSpeeds");
  EXPECT_EQ(out.report.at("wdvv").at("associativity").at("verdict"), "Zero");
}

TEST(CliPolicy, OverridesAreEchoed) {
  Options o;
  o.seed = 7;
  o.samples = 5;
  o.box = parse_box("2,5/2");
  Outcome out = run_as("hydro", R"j({"A":"Y","B":"X","policy":{"seed":3,"samples":9,"boxes":{"X":["1","2"]}}})j", o);
  const auto& p = out.report.at("policy");
  EXPECT_EQ(p.at("seed"), 7);
  EXPECT_EQ(p.at("samples"), 5);
  EXPECT_EQ(p.at("box"), (json{"2", "5/2"}));
  EXPECT_EQ(p.at("boxes").at("X"), (json{"1", "2"}));
  EXPECT_FALSE(p.contains("threads"));
  EXPECT_THROW(parse_box("3"), std::invalid_argument);
  EXPECT_THROW(parse_box("3,1"), std::invalid_argument);
}

TEST(CliReport, RoundTripIsByteIdentical) {
  const char* requests[][2] = {
      {"hydro", R"j({"A":"X+Y","B":"X+Y","question":["count","obstructions"],"at":{"X":"1","Y":"1"}})j"},
      {"frobenius", R"j({"prepotential":{"entry":"power","k":"4"},"question":["wdvv","witness"]})j"},
      {"ode", R"j({"A0":"x^2","A1":"y"})j"},
  };
  for (const auto& [kind, text] : requests) {
    Outcome out = run_as(kind, text);
    std::string once = render_json(out.report);
    EXPECT_EQ(render_json(json::parse(once)), once) << kind;
  }
}

TEST(CliReport, DeterministicAcrossThreadCounts) {
  const std::string text = R"j({"A":"X+2*Y","B":"3*X+Y","question":["count","obstructions"]})j";
  Options one, eight;
  one.threads = 1;
  eight.threads = 8;
  std::string a = render_json(run_as("hydro", text, one).report);
  std::string b = render_json(run_as("hydro", text, eight).report);
  std::string c = render_json(run_as("hydro", text, one).report);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(CliReport, TextRendering) {
  Outcome out = run_as("hydro", R"j({"A":"Y","B":"X"})j");
  std::string t = render_text(out.report);
  EXPECT_NE(t.find("/count = 3\n"), std::string::npos);
  EXPECT_NE(t.find("/evidence/fired/0 = beta=Zero\n"), std::string::npos);
}

TEST(CliReport, TimingIsOptIn) {
  Options o;
  o.timing = true;
  Outcome out = run_as("ode", R"j({"A0":"x","question":"liouville"})j", o);
  EXPECT_TRUE(out.report.at("timing_ms").contains("total"));
  EXPECT_FALSE(run_as("ode", R"j({"A0":"x","question":"liouville"})j").report.contains("timing_ms"));
}

TEST(CliSubcommands, NamesMapToKinds) {
  EXPECT_EQ(subcommands().size(), 6U);
  EXPECT_EQ(kind_of_subcommand("analyze-connection"), "connection");
  EXPECT_EQ(kind_of_subcommand("verify-sigma"), "verify-sigma");
  EXPECT_THROW(kind_of_subcommand("analyze"), std::invalid_argument);
}

}  // namespace
}  // namespace projclass::cli
