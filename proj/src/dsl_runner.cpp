#include "specsum/dsl/run.hpp"

#include <chrono>

#include "specsum/criteria.hpp"
#include "specsum/lab.hpp"
#include "specsum/rng.hpp"

namespace specsum::dsl {

namespace {

using nlohmann::ordered_json;

std::string status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::HypothesisViolated:
    case ErrorKind::NotCoercive:
      return "violation";
    case ErrorKind::BlockNotSupported:
    case ErrorKind::InfiniteCore:
    case ErrorKind::AmbiguousBoundary:
    case ErrorKind::Undecidable:
    case ErrorKind::ExhaustedWitness:
    case ErrorKind::ScanBudgetExceeded:
      return "refused";
    default:
      return "error";
  }
}

std::string num_str(double x) { return ordered_json(x).dump(); }

ordered_json rats_json(const std::vector<Rat>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& r : v) a.push_back(rat_str(r));
  return a;
}

ordered_json indices_json(const IndexSetDesc& s) {
  ordered_json j;
  j["finite"] = s.finite;
  ordered_json tails = ordered_json::array();
  for (const auto& t : s.tails)
    tails.push_back({{"strand", t.strand}, {"from", t.from_k}});
  j["tails"] = std::move(tails);
  return j;
}

Settings resolve_settings(const ScenarioSpec& spec, const RunOptions& opt) {
  Settings s;
  for (const auto& [k, v] : spec.settings) {
    if (k == "seed")
      s.seed = static_cast<std::uint64_t>(v);
    else if (k == "trunc-size")
      s.trunc_size = static_cast<int>(v);
    else if (k == "scan-budget")
      s.scan_budget = v;
  }
  if (opt.seed) s.seed = *opt.seed;
  if (opt.trunc_size) s.trunc_size = *opt.trunc_size;
  return s;
}

long long int_arg(const Directive& d, const char* key, long long dflt) {
  auto it = d.int_args.find(key);
  return it == d.int_args.end() ? dflt : it->second;
}

struct Ctx {
  const ScenarioSpec& spec;
  const Settings& settings;
  const Tolerances& tol;
};

std::vector<ModelOperator> diag_ops(const Ctx& c, const std::vector<std::string>& ls) {
  std::vector<ModelOperator> ops;
  for (const auto& l : ls) ops.push_back(c.spec.find(l)->op);
  return ops;
}

std::vector<HermitianMatrix> mat_ops(const Ctx& c, const std::vector<std::string>& ls) {
  std::vector<HermitianMatrix> ms;
  for (const auto& l : ls) ms.push_back(to_numeric(c.spec.find(l)->mat));
  return ms;
}

void run_hypotheses(const Ctx& c, const Directive& d, DirectiveResult& r) {
  HypothesesReport rep = check_hypotheses(diag_ops(c, d.labels));
  r.verdict = rep.ok ? "CompactProducts" : "NonCompactPair";
  if (!rep.ok) r.status = "violation";
  ordered_json fails = ordered_json::array();
  for (const auto& [a, b] : rep.failing_pairs) fails.push_back({a, b});
  r.certificate = {{"type", "pairs"}, {"failing", std::move(fails)}};
  r.csv_key = "failing_pairs";
  r.csv_value = std::to_string(rep.failing_pairs.size());
}

void run_theorem_a(const Ctx& c, const Directive& d, DirectiveResult& r) {
  TheoremAReport rep = check_theorem_a(diag_ops(c, d.labels));
  r.verdict = "EqualAwayFromZero";
  r.certificate = {{"type", "spectra"},
                   {"sum", rats_json(rep.sum_essential)},
                   {"union", rats_json(rep.union_essential)}};
  r.csv_key = "sum_points";
  r.csv_value = std::to_string(rep.sum_essential.size());
}

void run_main(const Ctx& c, const Directive& d, DirectiveResult& r) {
  ZeroEssentialReport rep = check_zero_essential(diag_ops(c, d.labels));
  if (rep.verdict == EssentialVerdict::InEssential) {
    r.verdict = "InEssential";
    r.certificate = {{"type", "witness_strand"},
                     {"strand", rep.witness_strand},
                     {"modulus", rep.modulus}};
    r.csv_key = "witness_strand";
    r.csv_value = std::to_string(rep.witness_strand);
  } else {
    r.verdict = "NotInEssential";
    r.certificate = {{"type", "eps_core"},
                     {"eps", rat_str(rep.eps)},
                     {"modulus", rep.modulus},
                     {"core_count", rep.core_count}};
    r.csv_key = "eps";
    r.csv_value = rat_str(rep.eps);
  }
}

void run_schedule(const Ctx& c, const Directive& d, DirectiveResult& r) {
  int length = static_cast<int>(int_arg(d, "length", 50));
  SingularSchedule s =
      build_singular_schedule(diag_ops(c, d.labels), length, c.settings.scan_budget);
  r.verdict = "Scheduled";
  r.certificate = {{"type", "schedule"},
                   {"modulus", s.modulus},
                   {"strand", s.strand},
                   {"bound_constant", s.bound_constant},
                   {"indices", s.indices}};
  r.csv_key = "last_index";
  r.csv_value = std::to_string(s.indices.back());
}

void run_closedness(const Ctx& c, const Directive& d, DirectiveResult& r) {
  ClosednessReport rep =
      check_sum_ranges_closed(diag_ops(c, d.labels), c.settings.scan_budget);
  if (rep.closed) {
    r.verdict = "Closed";
    r.certificate = {{"type", "eps_certificate"},
                     {"eps", rat_str(rep.eps)},
                     {"defect_dim", rep.defect_dim},
                     {"core", indices_json(rep.core)},
                     {"kernel", indices_json(rep.kernel)}};
    r.csv_key = "defect_dim";
    r.csv_value = std::to_string(rep.defect_dim);
  } else {
    r.verdict = "NotClosed";
    r.certificate = {{"type", "witness_strand"},
                     {"strand", rep.witness_strand},
                     {"operator", rep.witness_label},
                     {"modulus", rep.modulus},
                     {"kernel", indices_json(rep.kernel)}};
    r.csv_key = "witness_strand";
    r.csv_value = std::to_string(rep.witness_strand);
  }
}

void run_coercivity(const Ctx& c, const Directive& d, DirectiveResult& r) {
  int samples = static_cast<int>(int_arg(d, "samples", 100));
  CoercivityReport rep =
      coercivity_constant(mat_ops(c, d.labels), samples, r.seed, c.tol);
  bool coercive = rep.lambda_min > c.tol.zero_tol;
  r.verdict = coercive ? "Coercive" : "Degenerate";
  if (!coercive) r.status = "violation";
  if (!rep.sampled_ok) {
    r.status = "error";
    r.error_kind = error_kind_name(ErrorKind::OracleMismatch);
    r.error_message = "a sampled quadratic fell below lambda_min";
  }
  r.certificate = {{"type", "coercivity"},
                   {"lambda_min", rep.lambda_min},
                   {"min_quadratic", rep.min_quadratic},
                   {"samples", rep.samples}};
  r.csv_key = "lambda_min";
  r.csv_value = num_str(rep.lambda_min);
}

void run_cor23(const Ctx& c, const Directive& d, DirectiveResult& r) {
  RangesEqReport rep = corollary_ranges_eq(mat_ops(c, d.labels), c.tol);
  r.verdict = rep.equal ? "Equal" : "NotEqual";
  if (!rep.equal) r.status = "violation";
  r.certificate = {{"type", "ranges"},
                   {"ambient", rep.ambient},
                   {"rank_sum", rep.rank_sum},
                   {"rank_stack", rep.rank_stack},
                   {"max_defect", rep.max_defect}};
  r.csv_key = "max_defect";
  r.csv_value = num_str(rep.max_defect);
}

void run_lemma41(const Ctx& c, const Directive& d, DirectiveResult& r) {
  auto ops = diag_ops(c, d.labels);
  Lemma41Report rep = check_projection_product_compact(
      ops[0], ops[1], d.rat_args.at("eps"), d.rat_args.at("delta"),
      c.settings.scan_budget);
  r.verdict = "FiniteRank";
  r.certificate = {{"type", "finite_rank"},
                   {"eps", rat_str(rep.eps)},
                   {"delta", rat_str(rep.delta)},
                   {"count", rep.count},
                   {"witnesses", rep.witnesses}};
  r.csv_key = "count";
  r.csv_value = std::to_string(rep.count);
}

void run_gram_gap(const Ctx& c, const Directive& d, DirectiveResult& r) {
  GramGapReport rep = gram_gap(mat_ops(c, d.labels), c.tol);
  r.verdict = rep.spectra_match_ok ? "SpectraMatch" : "SpectraMismatch";
  if (!rep.spectra_match_ok) r.status = "violation";
  r.certificate = {{"type", "gram"},
                   {"gap", rep.gap},
                   {"rank_excess", rep.rank_gamma_minus_identity},
                   {"max_match_diff", rep.max_match_diff},
                   {"nonzero_sum", rep.nonzero_sum},
                   {"nonzero_gram", rep.nonzero_gram}};
  r.csv_key = "gap";
  r.csv_value = num_str(rep.gap);
}

void run_ineq41(const Ctx& c, const Directive& d, DirectiveResult& r) {
  int trunc = static_cast<int>(int_arg(d, "n", c.settings.trunc_size));
  Ineq41Report rep = verify_inequality_41(diag_ops(c, d.labels),
                                          d.rat_args.at("eps"), trunc,
                                          c.settings.scan_budget, c.tol);
  r.verdict = rep.holds ? "Holds" : "Violated";
  if (!rep.holds) r.status = "violation";
  r.certificate = {{"type", "ineq41"},
                   {"eps", rat_str(rep.eps)},
                   {"delta", rat_str(rep.delta)},
                   {"delta_numeric", rep.delta_numeric},
                   {"mu", rat_str(rep.mu)},
                   {"trunc_size", rep.trunc_size},
                   {"scanned", rep.scanned},
                   {"violations", rep.violations}};
  r.csv_key = "delta_numeric";
  r.csv_value = num_str(rep.delta_numeric);
}

void run_grouped(const Ctx& c, const Directive& d, DirectiveResult& r) {
  std::vector<std::vector<ModelOperator>> groups;
  for (const auto& g : d.groups) groups.push_back(diag_ops(c, g));
  GroupedReport rep = check_grouped_closed(groups, c.settings.scan_budget);
  r.verdict = "Closed";
  r.certificate = {{"type", "grouped"},
                   {"groups", static_cast<long long>(rep.groups.size())},
                   {"group_gaps", rats_json(rep.group_gaps)},
                   {"common_eps", rat_str(rep.common_eps)},
                   {"route_defect_dim", rep.route_defect_dim},
                   {"flat_defect_dim", rep.flat.defect_dim},
                   {"flat_eps", rat_str(rep.flat.eps)}};
  r.csv_key = "common_eps";
  r.csv_value = rat_str(rep.common_eps);
}

void run_transfer(const Ctx& c, const Directive& d, DirectiveResult& r) {
  auto ops = diag_ops(c, d.labels);
  const Rat& lambda = d.rat_args.at("lambda");
  int length = static_cast<int>(int_arg(d, "length", 50));
  SingularSchedule sched =
      singular_schedule_at(ops[1], lambda, length, c.settings.scan_budget);
  long long n = int_arg(d, "n", c.settings.trunc_size);
  n = std::max(n, sched.indices.back());
  TransferReport rep = transfer_singular(ops[0], ops[1], lambda, sched, n);
  r.verdict = rep.transferred ? "Transferred" : "NotTransferred";
  if (!rep.transferred) r.status = "violation";
  r.certificate = {{"type", "transfer"},
                   {"lambda", rat_str(rep.lambda)},
                   {"n", rep.n},
                   {"schedule_len", static_cast<long long>(sched.indices.size())},
                   {"first_quarter_max", rep.first_quarter_max},
                   {"last_quarter_max", rep.last_quarter_max}};
  r.csv_key = "last_quarter_max";
  r.csv_value = num_str(rep.last_quarter_max);
}

void run_truncate(const Ctx& c, const Directive& d, DirectiveResult& r) {
  const ModelOperator& op = c.spec.find(d.labels[0])->op;
  long long n = int_arg(d, "n", c.settings.trunc_size);
  std::vector<double> vals = eigh(truncate(op, n), c.tol).values;
  r.verdict = "Spectrum";
  r.certificate = {{"type", "spectrum"}, {"n", n}, {"eigenvalues", vals}};
  r.csv_key = "n";
  r.csv_value = std::to_string(n);
}

void run_converge(const Ctx& c, const Directive& d, DirectiveResult& r) {
  const ModelOperator& op = c.spec.find(d.labels[0])->op;
  ConvergenceReport rep = truncation_spectrum_convergence(op, d.sizes, c.tol);
  double last = rep.steps.back().hausdorff;
  r.verdict = std::isfinite(last) ? "Measured" : "NoGrowingClusters";
  ordered_json steps = ordered_json::array();
  for (const auto& s : rep.steps) {
    ordered_json cl = ordered_json::array();
    for (const auto& x : s.clusters)
      cl.push_back({{"lo", x.lo},
                    {"hi", x.hi},
                    {"center", x.center},
                    {"count", x.count},
                    {"growing", x.growing}});
    steps.push_back({{"size", s.size}, {"hausdorff", s.hausdorff}, {"clusters", cl}});
  }
  r.certificate = {{"type", "convergence"},
                   {"cluster_gap", rep.cluster_gap},
                   {"essential", rats_json(rep.essential)},
                   {"steps", std::move(steps)}};
  r.csv_key = "hausdorff";
  r.csv_value = num_str(last);
}

void run_weyl(const Ctx& c, const Directive& d, DirectiveResult& r) {
  const ModelOperator& op = c.spec.find(d.labels[0])->op;
  int rank = static_cast<int>(int_arg(d, "rank", 1));
  long long n = int_arg(d, "n", 100);
  WeylReport rep = weyl_experiment(op, rank, n, r.seed, c.tol);
  r.verdict = rep.interlacing_ok ? "Interlaced" : "Displaced";
  if (!rep.interlacing_ok) r.status = "violation";
  r.certificate = {{"type", "weyl"},
                   {"rank", rep.rank},
                   {"n", rep.n},
                   {"displaced", rep.displaced},
                   {"s_min", rep.s_min},
                   {"s_max", rep.s_max},
                   {"essential_unchanged", rep.essential_unchanged}};
  r.csv_key = "displaced";
  r.csv_value = std::to_string(rep.displaced);
}

DirectiveResult run_directive(const Ctx& c, const Directive& d, std::size_t index,
                              bool timings) {
  DirectiveResult r;
  r.check = d.id;
  if (d.id == "grouped") {
    for (const auto& g : d.groups) {
      std::string joined;
      for (std::size_t i = 0; i < g.size(); ++i) joined += (i ? "+" : "") + g[i];
      r.inputs.push_back(joined);
    }
  } else {
    r.inputs = d.labels;
  }
  r.status = "ok";
  r.seed = Rng::derive(c.settings.seed, index);
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (d.id == "hypotheses") run_hypotheses(c, d, r);
    else if (d.id == "theorem-a") run_theorem_a(c, d, r);
    else if (d.id == "main") run_main(c, d, r);
    else if (d.id == "schedule") run_schedule(c, d, r);
    else if (d.id == "closedness" || d.id == "single-range") run_closedness(c, d, r);
    else if (d.id == "coercivity") run_coercivity(c, d, r);
    else if (d.id == "cor23") run_cor23(c, d, r);
    else if (d.id == "lemma41") run_lemma41(c, d, r);
    else if (d.id == "gram-gap") run_gram_gap(c, d, r);
    else if (d.id == "ineq41") run_ineq41(c, d, r);
    else if (d.id == "grouped") run_grouped(c, d, r);
    else if (d.id == "transfer") run_transfer(c, d, r);
    else if (d.id == "truncate") run_truncate(c, d, r);
    else if (d.id == "converge") run_converge(c, d, r);
    else if (d.id == "weyl") run_weyl(c, d, r);
    else throw Error(ErrorKind::UnknownDirective, "unknown check '" + d.id + "'");
  } catch (const Error& e) {
    r.status = status_of(e.kind());
    r.verdict.clear();
    r.error_kind = error_kind_name(e.kind());
    r.error_message = e.what();
    r.certificate = ordered_json::object();
    r.csv_key = "error";
    r.csv_value = r.error_kind;
  } catch (const std::exception& e) {
    r.status = "error";
    r.verdict.clear();
    r.error_kind = "Internal";
    r.error_message = e.what();
    r.certificate = ordered_json::object();
    r.csv_key = "error";
    r.csv_value = r.error_kind;
  }
  if (timings) {
    auto t1 = std::chrono::steady_clock::now();
    r.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  return r;
}

}  // namespace

AnalysisReport run_scenario(const ScenarioSpec& spec, const RunOptions& opt) {
  AnalysisReport rep;
  rep.settings = resolve_settings(spec, opt);
  Ctx c{spec, rep.settings, opt.tol};
  const long long n = static_cast<long long>(spec.directives.size());
  rep.results.resize(n);
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i)
      rep.results[i] = run_directive(c, spec.directives[i], i, opt.timings);
  } else {
    for (long long i = 0; i < n; ++i)
      rep.results[i] = run_directive(c, spec.directives[i], i, opt.timings);
  }
  return rep;
}

int report_exit_code(const AnalysisReport& rep) {
  int code = 0;
  for (const auto& r : rep.results) {
    if (r.status == "error") return 1;
    if (r.status == "violation" || r.status == "refused") code = 2;
  }
  return code;
}

}  // namespace specsum::dsl
