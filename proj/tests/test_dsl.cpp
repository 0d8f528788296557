#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "specsum/dsl/parse.hpp"
#include "specsum/dsl/run.hpp"
#include "specsum/dsl/serialize.hpp"
#include "specsum/rng.hpp"

using namespace specsum;
using namespace specsum::dsl;
using nlohmann::ordered_json;

namespace {

std::optional<ErrorKind> kind_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

std::string error_text(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::filesystem::path corpus_dir() {
  for (const char* p : {"scenarios", "../scenarios"}) {
    if (std::filesystem::is_directory(p)) return p;
  }
  return {};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* kMinimal =
    "operator H = diag seq mod 1 { strand 0: 1*j^-1 }\n"
    "check closedness H\n";

}  // namespace

TEST_CASE("parse a minimal scenario") {
  ScenarioSpec s = parse_scenario(kMinimal);
  REQUIRE(s.operators.size() == 1);
  REQUIRE(s.directives.size() == 1);
  CHECK(s.operators[0].label == "H");
  CHECK(!s.operators[0].is_matrix);
  CHECK(s.operators[0].op.diag.m == 1);
  CHECK(s.directives[0].id == "closedness");
  CHECK(s.directives[0].labels == std::vector<std::string>{"H"});
  CHECK(s.find("H") != nullptr);
  CHECK(s.find("X") == nullptr);
  CHECK(directive_ids().size() == 16);
}

TEST_CASE("surface variety maps to one canonical form") {
  std::string canonical = serialize_scenario(parse_scenario(kMinimal));
  const char* variants[] = {
      // comments and blank lines
      "# heading\noperator H = diag seq mod 1 { strand 0: 1*j^-1 }\n\n"
      "check closedness H  # trailing note\n",
      // CRLF endings
      "operator H = diag seq mod 1 { strand 0: 1*j^-1 }\r\n"
      "check closedness H\r\n",
      // newlines inside braces, trailing semicolon, bare j power
      "operator H = diag seq mod 1 {\n  strand 0: j^-1;\n}\n"
      "check closedness H\n",
      // unreduced coefficient
      "operator H = diag seq mod 1 { strand 0: 2/2*j^-1 }\n"
      "check closedness H\n",
      // tabs and no trailing newline
      "operator H = diag seq\tmod 1 { strand 0: 1*j^-1 }\ncheck closedness H",
  };
  for (const char* v : variants) {
    CAPTURE(v);
    CHECK(serialize_scenario(parse_scenario(v)) == canonical);
  }
}

TEST_CASE("serialize is a parse fixed point") {
  const char* messy =
      "set seed 3\n"
      "operator A = diag seq mod 2 {\n"
      "  strand 0: 1 - 1/2 * j^-2;\n"
      "  strand 1: 0;\n"
      "  except 5 -> -7/3;\n"
      "} block 2 { 1 (0, -1/2); (0, 1/2) 0 }\n"
      "operator M = matrix 2 { 1 0; 0 1 }\n"
      "check truncate A n 6\n"
      "check cor23 M\n";
  std::string once = serialize_scenario(parse_scenario(messy));
  std::string twice = serialize_scenario(parse_scenario(once));
  CHECK(once == twice);
  CHECK(once.find("except 5 -> -7/3") != std::string::npos);
  CHECK(once.find("block 2 { 1 (0, -1/2); (0, 1/2) 0 }") != std::string::npos);
}

TEST_CASE("corpus files round-trip byte-identically") {
  std::filesystem::path dir = corpus_dir();
  REQUIRE(!dir.empty());
  long long seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".ssc") continue;
    ++seen;
    std::string text = slurp(entry.path());
    CAPTURE(entry.path().string());
    CHECK(serialize_scenario(parse_scenario(text)) == text);
  }
  CHECK(seen == 20);
}

TEST_CASE("error taxonomy") {
  SUBCASE("duplicate label") {
    CHECK(kind_of("operator A = diag seq mod 1 { strand 0: 0 }\n"
                  "operator A = diag seq mod 1 { strand 0: 1 }\n") ==
          ErrorKind::DuplicateLabel);
  }
  SUBCASE("unknown directive") {
    CHECK(kind_of("check spectralize\n") == ErrorKind::UnknownDirective);
  }
  SUBCASE("unknown label names the reference") {
    std::string msg = error_text("check closedness H\n");
    CHECK(kind_of("check closedness H\n") == ErrorKind::UnknownLabel);
    CHECK(msg.find("'H'") != std::string::npos);
    CHECK(msg.find("closedness") != std::string::npos);
  }
  SUBCASE("positions are line:column") {
    std::string msg = error_text("operator A = diag seq mod 1 { strand 0: j^2 }\n");
    CHECK(msg.find("1:") != std::string::npos);
    CHECK(msg.find("must not grow") != std::string::npos);
  }
  SUBCASE("malformed syntax") {
    CHECK(kind_of("operator = diag\n") == ErrorKind::ParseError);
    CHECK(kind_of("operator A diag seq mod 1 { strand 0: 0 }\n") ==
          ErrorKind::ParseError);
    CHECK(kind_of("wibble\n") == ErrorKind::ParseError);
    CHECK(kind_of("operator A = diag seq mod 1 { strand 0: 1/0 }\n") ==
          ErrorKind::ParseError);
    CHECK(kind_of("operator A = diag seq mod 1 { strand 0: j }\n") ==
          ErrorKind::ParseError);
    CHECK(kind_of("operator A = diag seq mod 0 { }\n") == ErrorKind::ParseError);
  }
  SUBCASE("strand coverage") {
    // missing strand 1
    CHECK(kind_of("operator A = diag seq mod 2 { strand 0: 0 }\n") ==
          ErrorKind::ParseError);
    // strand defined twice
    CHECK(kind_of("operator A = diag seq mod 1 { strand 0: 0; strand 0: 1 }\n") ==
          ErrorKind::ParseError);
    // exception defined twice
    CHECK(kind_of("operator A = diag seq mod 1 { strand 0: 0; except 2 -> 1; "
                  "except 2 -> 3 }\n") == ErrorKind::ParseError);
    // exception index zero
    CHECK(kind_of("operator A = diag seq mod 1 { strand 0: 0; except 0 -> 1 }\n") ==
          ErrorKind::ParseError);
  }
  SUBCASE("matrix literals") {
    // not Hermitian
    CHECK(kind_of("operator M = matrix 2 { 1 2; 3 1 }\n") == ErrorKind::ParseError);
    // complex diagonal
    CHECK(kind_of("operator M = matrix 1 { (1, 1) }\n") == ErrorKind::ParseError);
    // row too short
    CHECK(kind_of("operator M = matrix 2 { 1 0; 0 }\n") == ErrorKind::ParseError);
    // dimension bounds
    CHECK(kind_of("operator M = matrix 0 { }\n") == ErrorKind::ParseError);
  }
  SUBCASE("directive arity and arguments") {
    std::string ops =
        "operator H = diag seq mod 1 { strand 0: 1*j^-1 }\n"
        "operator K = diag seq mod 1 { strand 0: 1*j^-2 }\n"
        "operator M = matrix 2 { 1 0; 0 1 }\n";
    CHECK(kind_of(ops + "check hypotheses H\n") == ErrorKind::ParseError);
    CHECK(kind_of(ops + "check single-range H K\n") == ErrorKind::ParseError);
    CHECK(kind_of(ops + "check lemma41 H K delta 1/2\n") == ErrorKind::ParseError);
    CHECK(kind_of(ops + "check lemma41 H K eps 0 delta 1/2\n") ==
          ErrorKind::ParseError);
    CHECK(kind_of(ops + "check transfer H K\n") == ErrorKind::ParseError);
    CHECK(kind_of(ops + "check converge H sizes (10)\n") == ErrorKind::ParseError);
    CHECK(kind_of(ops + "check converge H sizes (20, 10)\n") ==
          ErrorKind::ParseError);
    CHECK(kind_of(ops + "check coercivity H\n") == ErrorKind::ParseError);
    CHECK(kind_of(ops + "check closedness M\n") == ErrorKind::ParseError);
    CHECK(kind_of(ops + "check ineq41 H\n") == ErrorKind::ParseError);
    CHECK(kind_of(ops + "check grouped H\n") == ErrorKind::ParseError);
    CHECK(kind_of(ops + "check truncate H n 4 n 5\n") == ErrorKind::ParseError);
    // well-formed versions parse
    CHECK(!kind_of(ops + "check hypotheses H K\n"));
    CHECK(!kind_of(ops + "check grouped group H group K\n"));
  }
  SUBCASE("set lines") {
    CHECK(kind_of("set tempo 3\n") == ErrorKind::ParseError);
    CHECK(kind_of("set trunc-size 0\n") == ErrorKind::ParseError);
    CHECK(kind_of("set scan-budget -2\n") == ErrorKind::ParseError);
    CHECK(!kind_of("set seed 0\n"));
  }
}

TEST_CASE("runner: verdicts and certificates") {
  ScenarioSpec s = parse_scenario(kMinimal);
  AnalysisReport rep = run_scenario(s, RunOptions{});
  REQUIRE(rep.results.size() == 1);
  const DirectiveResult& r = rep.results[0];
  CHECK(r.check == "closedness");
  CHECK(r.status == "ok");
  CHECK(r.verdict == "NotClosed");
  CHECK(r.certificate.at("operator") == "H");
  CHECK(r.certificate.at("strand") == 0);
  CHECK(report_exit_code(rep) == 0);

  // closed case carries the exact eps
  ScenarioSpec p = parse_scenario(
      "operator P = diag seq mod 2 { strand 0: 1; strand 1: 0 }\n"
      "check closedness P\n");
  AnalysisReport prep = run_scenario(p, RunOptions{});
  CHECK(prep.results[0].verdict == "Closed");
  CHECK(prep.results[0].certificate.at("eps") == "1/2");
  CHECK(prep.results[0].certificate.at("defect_dim") == 0);
}

TEST_CASE("runner: error isolation and exit codes") {
  std::string text =
      "operator I1 = diag seq mod 1 { strand 0: 1 }\n"
      "operator I2 = diag seq mod 1 { strand 0: 2 }\n"
      "operator H = diag seq mod 1 { strand 0: 1*j^-1 }\n"
      "check hypotheses I1 I2\n"
      "check closedness H\n"
      "check main H\n";
  AnalysisReport rep = run_scenario(parse_scenario(text), RunOptions{});
  REQUIRE(rep.results.size() == 3);
  CHECK(rep.results[0].status == "violation");
  CHECK(rep.results[0].verdict == "NonCompactPair");
  // the failure does not stop the remaining directives
  CHECK(rep.results[1].status == "ok");
  CHECK(rep.results[2].status == "ok");
  CHECK(rep.results[2].verdict == "InEssential");
  CHECK(report_exit_code(rep) == 2);

  // refusals also map to exit 2
  std::string refuse =
      "operator H = diag seq mod 1 { strand 0: 1*j^-1 }\n"
      "check ineq41 H eps 1/2 n 30\n";
  AnalysisReport rrep = run_scenario(parse_scenario(refuse), RunOptions{});
  CHECK(rrep.results[0].status == "refused");
  CHECK(rrep.results[0].error_kind == "InfiniteCore");
  CHECK(report_exit_code(rrep) == 2);

  // hard errors dominate
  std::string err =
      "operator B = diag seq mod 1 { strand 0: 1*j^-1 } block 3 { 0 0 1; 0 0 0; 1 0 0 }\n"
      "operator I1 = diag seq mod 1 { strand 0: 1 }\n"
      "operator I2 = diag seq mod 1 { strand 0: 2 }\n"
      "check truncate B n 2\n"
      "check hypotheses I1 I2\n";
  AnalysisReport erep = run_scenario(parse_scenario(err), RunOptions{});
  CHECK(erep.results[0].status == "error");
  CHECK(report_exit_code(erep) == 1);
}

TEST_CASE("settings precedence: flags over set lines over defaults") {
  AnalysisReport d = run_scenario(parse_scenario(kMinimal), RunOptions{});
  CHECK(d.settings.seed == 0);
  CHECK(d.settings.trunc_size == 500);
  CHECK(d.settings.scan_budget == 2000000);

  std::string with_sets = std::string("set seed 9\nset trunc-size 64\n") + kMinimal;
  AnalysisReport s = run_scenario(parse_scenario(with_sets), RunOptions{});
  CHECK(s.settings.seed == 9);
  CHECK(s.settings.trunc_size == 64);

  RunOptions o;
  o.seed = 42;
  o.trunc_size = 32;
  AnalysisReport f = run_scenario(parse_scenario(with_sets), o);
  CHECK(f.settings.seed == 42);
  CHECK(f.settings.trunc_size == 32);
  CHECK(f.settings.scan_budget == 2000000);
}

TEST_CASE("emission") {
  AnalysisReport empty = run_scenario(parse_scenario(""), RunOptions{});
  std::string js = emit_json(empty);
  CHECK(js.rfind("{\"schema_version\":1,\"results\":[]", 0) == 0);
  CHECK(js.back() == '\n');
  ordered_json parsed = ordered_json::parse(js);
  CHECK(parsed.at("settings").at("seed") == 0);

  ScenarioSpec s = parse_scenario(
      "operator H = diag seq mod 1 { strand 0: 1*j^-1 }\n"
      "check truncate H n 4\n");
  AnalysisReport rep = run_scenario(s, RunOptions{});
  std::string csv = emit_csv(rep);
  CHECK(csv.rfind("check,inputs,status,verdict,certificate,value\n", 0) == 0);
  CHECK(csv.find("truncate,H,ok,Spectrum,n,4\n") != std::string::npos);

  // timings appear only when requested
  CHECK(emit_json(rep).find("timing_ms") == std::string::npos);
  RunOptions t;
  t.timings = true;
  AnalysisReport trep = run_scenario(s, t);
  CHECK(emit_json(trep).find("timing_ms") != std::string::npos);

  CHECK_THROWS_AS(emit(rep, "xml"), Error);
}

TEST_CASE("csv quoting") {
  AnalysisReport rep;
  DirectiveResult r;
  r.check = "truncate";
  r.inputs = {"A"};
  r.status = "error";
  r.verdict = "";
  r.csv_key = "error";
  r.csv_value = "a,b \"quoted\"\nrest";
  rep.results.push_back(r);
  std::string csv = emit_csv(rep);
  std::string expect =
      "check,inputs,status,verdict,certificate,value\n"
      "truncate,A,error,,error,\"a,b \"\"quoted\"\"\nrest\"\n";
  CHECK(csv == expect);
}

TEST_CASE("determinism") {
  std::string text = slurp(corpus_dir() / "20_full_sweep.ssc");
  ScenarioSpec s = parse_scenario(text);

  RunOptions serial;
  serial.seed = 123;
  std::string a = emit_json(run_scenario(s, serial));
  std::string b = emit_json(run_scenario(s, serial));
  CHECK(a == b);

  RunOptions parallel = serial;
  parallel.parallel = true;
  std::string c = emit_json(run_scenario(s, parallel));
  CHECK(a == c);

  // per-directive seeds derive from (seed, index)
  AnalysisReport rep = run_scenario(s, serial);
  for (size_t i = 0; i < rep.results.size(); ++i)
    CHECK(rep.results[i].seed == Rng::derive(123, i));
}

TEST_CASE("fuzzing never crashes the parser") {
  Rng rng(71);
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyz0123456789 \t\n\r{}();:,*^/+-=#_><";
  for (int t = 0; t < 3000; ++t) {
    std::string text;
    size_t len = rng.below(160);
    for (size_t i = 0; i < len; ++i)
      text += alphabet[rng.below(alphabet.size())];
    try {
      ScenarioSpec s = parse_scenario(text);
      // parsed garbage must still serialize to a parseable form
      std::string canon = serialize_scenario(s);
      CHECK(serialize_scenario(parse_scenario(canon)) == canon);
    } catch (const Error&) {
      // typed rejection is the expected outcome
    }
  }
  // byte-level mutations of a valid scenario
  std::string base = slurp(corpus_dir() / "20_full_sweep.ssc");
  for (int t = 0; t < 800; ++t) {
    std::string text = base;
    int edits = 1 + static_cast<int>(rng.below(4));
    for (int e = 0; e < edits; ++e)
      text[rng.below(text.size())] =
          alphabet[rng.below(alphabet.size())];
    try {
      parse_scenario(text);
    } catch (const Error&) {
    }
  }
}
