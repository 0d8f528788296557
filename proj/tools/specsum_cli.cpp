#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "specsum/criteria.hpp"
#include "specsum/dsl/parse.hpp"
#include "specsum/dsl/run.hpp"
#include "specsum/dsl/serialize.hpp"
#include "specsum/lab.hpp"

namespace {

using namespace specsum;

int fail_count = 0;

void report(const char* name, bool ok) {
  std::cout << "selftest " << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
  if (!ok) ++fail_count;
}

void guarded(const char* name, bool (*body)()) {
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::cout << "selftest " << name << ": threw " << e.what() << "\n";
  }
  report(name, ok);
}

ModelOperator harmonic() {
  ModelOperator op;
  op.label = "H";
  op.diag.m = 1;
  op.diag.strands = {StrandExpr::power_term(rat_of(1), rat_of(1))};
  return op;
}

int run_selftest() {
  guarded("rational-canonical-form", [] {
    return rat_str(rat_of(-2, 4)) == "-1/2" &&
           parse_rat("7/3") == rat_of(7, 3) && rat_str(rat_of(5)) == "5";
  });
  guarded("strand-sign-decision", [] {
    StrandExpr v = StrandExpr::constant(rat_of(1)).plus(
        StrandExpr::power_term(rat_of(1), rat_of(1)));
    return sign_beyond(v, rat_of(1)).sign > 0 &&
           sign_beyond(v, rat_of(2)).sign < 0;
  });
  guarded("eigh-2x2", [] {
    HermitianMatrix a(2);
    a.set(0, 0, 2.0);
    a.set(1, 1, 2.0);
    a.set(0, 1, 1.0);
    auto d = eigh(a);
    return std::abs(d.values[0] - 1.0) < 1e-12 && std::abs(d.values[1] - 3.0) < 1e-12;
  });
  guarded("parse-serialize-fixed-point", [] {
    const char* text =
        "operator A = diag seq mod 2 { strand 0: 1 - 1*j^-1; strand 1: 1/2 }\n"
        "set seed 7\n"
        "check main A\n";
    auto spec = dsl::parse_scenario(text);
    std::string s1 = dsl::serialize_scenario(spec);
    std::string s2 = dsl::serialize_scenario(dsl::parse_scenario(s1));
    return s1 == s2;
  });
  guarded("closedness-anchor", [] {
    auto rep = check_range_closed_single(harmonic());
    return !rep.closed && rep.witness_strand == 0;
  });
  guarded("numeric-core-count", [] {
    auto rep = numeric_epsilon_core({harmonic()}, 0.5, 10);
    return rep.dim == 9 && rep.agrees;
  });
  return fail_count == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and numeric analysis of sums of self-adjoint operators"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "run a scenario file");
  std::string file;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  int trunc = 0;
  bool parallel = false;
  bool timings = false;
  analyze->add_option("file", file, "scenario file")->required();
  analyze->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  auto* seed_opt = analyze->add_option("--seed", seed, "override the seed");
  auto* trunc_opt = analyze->add_option("--trunc-size", trunc,
                                        "override the truncation size")
                        ->check(CLI::PositiveNumber);
  analyze->add_option("--out", out, "write the report to a file");
  analyze->add_flag("--parallel", parallel, "run directives concurrently");
  analyze->add_flag("--timings", timings, "record per-directive wall time");

  auto* selftest =
      app.add_subcommand("selftest", "run the built-in invariant suite");

  CLI11_PARSE(app, argc, argv);

  if (selftest->parsed()) return run_selftest();

  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "IoError: cannot open '" << file << "'\n";
    return 1;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    specsum::dsl::ScenarioSpec spec = specsum::dsl::parse_scenario(ss.str());
    specsum::dsl::RunOptions opt;
    if (seed_opt->count() > 0) opt.seed = seed;
    if (trunc_opt->count() > 0) opt.trunc_size = trunc;
    opt.parallel = parallel;
    opt.timings = timings;
    specsum::dsl::AnalysisReport rep = specsum::dsl::run_scenario(spec, opt);
    std::string text = specsum::dsl::emit(rep, format);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream of(out, std::ios::binary);
      if (!of) {
        std::cerr << "IoError: cannot write '" << out << "'\n";
        return 1;
      }
      of << text;
    }
    return specsum::dsl::report_exit_code(rep);
  } catch (const specsum::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "Internal: " << e.what() << "\n";
    return 1;
  }
}
