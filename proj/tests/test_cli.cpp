#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "normlab/cli.hpp"
#include "normlab/error.hpp"

using namespace normlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "normlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "normlab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string strip_volatile(Json doc) {
  doc.erase("timestamp");
  doc.erase("runtime_ms");
  return doc.dump();
}

}  // namespace

TEST(Config, NumbersAsStringsOrNumbers) {
  EXPECT_DOUBLE_EQ(cli::config_number(Json("2.5"), "x"), 2.5);
  EXPECT_DOUBLE_EQ(cli::config_number(Json(2.5), "x"), 2.5);
  EXPECT_THROW(cli::config_number(Json("2,5"), "x"), Error);
  EXPECT_THROW(cli::config_number(Json(true), "x"), Error);
  EXPECT_THROW(cli::config_count(Json("1.5"), "x"), Error);
}

TEST(Config, ErrorNamesTheKeyPath) {
  const Json j = Json::parse(R"({"kind":"sum","terms":[{"kind":"diagonal","rule":"(n-1)/n","p":"2","q":"2"},
                                  {"kind":"dense","matrix":[["1","x"]],"p":"2","q":"2"}]})");
  try {
    cli::operator_from_config(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("operator.terms[1].matrix[0][1]"), std::string::npos) << e.what();
  }
}

TEST(Config, OperatorKinds) {
  const Json j = Json::parse(R"({"kind":"scaled","factor":"2","base":
      {"kind":"rank_one","functional":["1"],"range_vector":["1"],"scale":"0.5","p":"2","q":"2"}})");
  const OperatorSpec t = cli::operator_from_config(j);
  EXPECT_DOUBLE_EQ(section_norm(t, 3, SolverConfig{}).value, 1.0);
  const Json bad = Json::parse(R"({"kind":"diagonal","rule":"n^2","p":"2","q":"2"})");
  EXPECT_THROW(cli::operator_from_config(bad), Error);
  const Json badp = Json::parse(R"({"kind":"diagonal","rule":"1/n","p":"1","q":"2"})");
  EXPECT_THROW(cli::operator_from_config(badp), Error);
}

TEST(Dims, Parsing) {
  EXPECT_EQ(cli::parse_dims("10,100,1000"), (std::vector<std::size_t>{10, 100, 1000}));
  EXPECT_THROW(cli::parse_dims("10,,100"), Error);
  EXPECT_THROW(cli::parse_dims("ten"), Error);
}

TEST(NormCommand, DiagonalExample) {
  const Json cfg = Json::parse(R"({"operator":{"kind":"diagonal","rule":"(n-1)/n","p":"2","q":"2"},"n":"100"})");
  const auto r = cli::cmd_norm(cfg, {});
  EXPECT_EQ(r.document["estimates"]["estimate"]["value"].get<double>(), 0.99);
  for (const auto& k : cli::report_keys()) EXPECT_TRUE(r.document.contains(k)) << k;
}

TEST(NormCommand, PolynomialExamples) {
  const auto pm = cli::cmd_norm(Json::parse(R"({"polynomial":{"shape":"pm","m":"3"},"n":"10000"})"), {});
  EXPECT_NEAR(pm.document["estimates"]["estimate"]["value"].get<double>(), 1.4142, 1e-3);
  const auto q = cli::cmd_norm(
      Json::parse(R"({"polynomial":{"shape":"quadratic","matrix":[["2","1"],["1","2"]]},"n":"2"})"), {});
  EXPECT_NEAR(q.document["estimates"]["estimate"]["value"].get<double>(), 3.0, 1e-12);
}

TEST(SweepCommand, VerdictsAndPlotRows) {
  const Json cfg = Json::parse(R"({"operator":{"kind":"diagonal","rule":"(n-1)/n","p":"2","q":"2"}})");
  std::vector<std::pair<std::size_t, double>> plot;
  const auto r = cli::cmd_sweep(cfg, {}, &plot);
  EXPECT_EQ(r.document["verdicts"]["verdict"], "NotAttained");
  ASSERT_EQ(plot.size(), 4u);
  EXPECT_EQ(plot.back().first, 10000u);

  const Json vc = Json::parse(R"({"polynomial":{"shape":"vector-coupling"}})");
  const auto rv = cli::cmd_sweep(vc, {});
  EXPECT_NEAR(rv.document["estimates"]["sweep"]["values"].back().get<double>(), 0.5, 1e-3);

  cli::Overrides o;
  o.dims = std::vector<std::size_t>{1, 2, 3, 4};
  const Json r1 = Json::parse(R"({"operator":{"kind":"rank_one","functional":["1"],"range_vector":["1"],"p":"2","q":"2"}})");
  const auto rr = cli::cmd_sweep(r1, o);
  EXPECT_EQ(rr.document["verdicts"]["verdict"], "Attained");
}

TEST(ScenarioCommand, DeterministicAndRoundTrips) {
  const auto a = cli::cmd_scenario("quadratic-wmp", Json::object(), {});
  const auto b = cli::cmd_scenario("quadratic-wmp", Json::object(), {});
  EXPECT_EQ(strip_volatile(a.document), strip_volatile(b.document));
  const std::string text = cli::render(a.document, cli::Format::Json);
  EXPECT_EQ(Json::parse(text), a.document);
  EXPECT_EQ(a.exit_code, cli::kExitPass);
}

TEST(ScenarioCommand, SeedChangesRandomCases) {
  cli::Overrides o;
  o.seed = 7;
  const auto a = cli::cmd_scenario("quadratic-wmp", Json::object(), {});
  const auto b = cli::cmd_scenario("quadratic-wmp", Json::object(), o);
  EXPECT_NE(a.document["estimates"]["cases"][1], b.document["estimates"]["cases"][1]);
  EXPECT_EQ(b.document["config_echo"]["solver"]["seed"], 7);
}

TEST(ScenarioCommand, FailureGivesExitOne) {
  // A coarse sweep cannot get within 1e-3 of the P_m norm.
  cli::Overrides o;
  o.dims = std::vector<std::size_t>{3, 4, 5, 6};
  const auto r = cli::cmd_scenario("pm-family", Json::object(), o);
  EXPECT_EQ(r.exit_code, cli::kExitFail);
  EXPECT_EQ(r.document["verdicts"]["pass"], false);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(invoke({"scenario", "no-such"}).code, cli::kExitUsage);
  EXPECT_NE(invoke({"scenario", "no-such"}).err.find("kover-raise"), std::string::npos);
  EXPECT_EQ(invoke({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"scenario", "sharpness-TK", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"scenario", "sharpness-TK", "--dims", "100,10"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"scenario", "--scenario", "sharpness-TK"}).code, cli::kExitPass);
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitPass);
}

TEST(Run, MalformedConfigReportsKey) {
  const auto path = scratch("bad.json");
  write(path, R"({"operator":{"kind":"diagonal","rule":"(n-1)/n","p":"2"},"n":"10"})");
  const auto r = invoke({"norm", "--config", path.string()});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("operator.q"), std::string::npos) << r.err;
  write(path, "{not json");
  EXPECT_EQ(invoke({"norm", "--config", path.string()}).code, cli::kExitUsage);
}

TEST(Run, WritesOutputAtomicallyAndReportReparses) {
  const auto out = scratch("kover.json");
  fs::remove(out);
  const auto r = invoke({"scenario", "kover-raise", "--out", out.string()});
  EXPECT_EQ(r.code, cli::kExitPass);
  EXPECT_TRUE(fs::exists(out));
  EXPECT_FALSE(fs::exists(out.string() + ".tmp"));
  const auto rep = invoke({"report", out.string()});
  EXPECT_EQ(rep.code, cli::kExitPass) << rep.err;
  const Json summary = Json::parse(rep.out);
  EXPECT_EQ(summary["estimates"]["files"][0]["round_trip"], true);
}

TEST(Run, ReportFlagsFailuresAndBadFiles) {
  const auto bad = scratch("failed.json");
  std::ifstream in;
  Json doc = cli::cmd_scenario("sharpness-TK", Json::object(), {}).document;
  doc["verdicts"]["pass"] = false;
  write(bad, doc.dump());
  EXPECT_EQ(invoke({"report", bad.string()}).code, cli::kExitFail);
  const auto partial = scratch("partial.json");
  write(partial, R"({"scenario":"x"})");
  EXPECT_EQ(invoke({"report", partial.string()}).code, cli::kExitUsage);
}

TEST(Run, CsvAndPlotData) {
  const auto cfg = scratch("sweep.json");
  write(cfg, R"({"operator":{"kind":"diagonal","rule":"(n-1)/n","p":"2","q":"2"}})");
  const auto plot = scratch("plot.csv");
  const auto r = invoke({"sweep", "--config", cfg.string(), "--format", "csv", "--plot-data", plot.string()});
  EXPECT_EQ(r.code, cli::kExitPass);
  EXPECT_EQ(r.out.rfind("path,value\n", 0), 0u);
  EXPECT_NE(r.out.find("verdicts.verdict,NotAttained"), std::string::npos);
  std::ifstream in(plot);
  std::string all((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(all, "dim,value\n10,0.9\n100,0.99\n1000,0.999\n10000,0.9999\n");
}

TEST(Run, IneqCheck) {
  const auto r = invoke({"ineq-check", "--r", "2", "--eps", "0.5", "--grid-min", "-10", "--grid-max", "10",
                         "--grid-step", "0.01"});
  EXPECT_EQ(r.code, cli::kExitPass) << r.err;
  const Json doc = Json::parse(r.out);
  EXPECT_LE(doc["estimates"]["c_epsilon"].get<double>(), 2.0 + 1e-9);
  EXPECT_EQ(invoke({"ineq-check", "--grid-step", "0"}).code, cli::kExitUsage);
}

TEST(Render, DoublesRoundTripExactly) {
  Json doc{{"a", 0.1}, {"b", 1.0 / 3.0}, {"c", 1e-300}, {"d", 123456789.123456789}};
  const Json back = Json::parse(cli::render(doc, cli::Format::Json));
  for (const char* k : {"a", "b", "c", "d"}) EXPECT_EQ(back[k].get<double>(), doc[k].get<double>());
}
