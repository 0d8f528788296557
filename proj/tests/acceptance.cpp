// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Populations are seeded and constructed so the standing hypotheses hold
// by design; every verdict is re-checked against an oracle that does not
// share the code path under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "specsum/criteria.hpp"
#include "specsum/dsl/parse.hpp"
#include "specsum/dsl/run.hpp"
#include "specsum/dsl/serialize.hpp"
#include "specsum/lab.hpp"
#include "specsum/numeric/eigh.hpp"
#include "specsum/rng.hpp"

using namespace specsum;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("[%02d] %s %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// --- random model-operator populations ----------------------------------

Rat rnd_rat(Rng& rng, bool nonzero) {
  long long num = static_cast<long long>(rng.below(19)) - 9;
  while (nonzero && num == 0) num = static_cast<long long>(rng.below(19)) - 9;
  long long den = 1 + static_cast<long long>(rng.below(9));
  return rat_of(num, den);
}

// 0..max_terms strictly decaying terms c * j^-e, e in {1, 2, 3}.
StrandExpr rnd_decay(Rng& rng, int max_terms, bool force_nonzero) {
  int terms = force_nonzero ? 1 + static_cast<int>(rng.below(max_terms))
                            : static_cast<int>(rng.below(max_terms + 1));
  StrandExpr e;
  for (int t = 0; t < terms; ++t)
    e = e.plus(StrandExpr::power_term(rnd_rat(rng, force_nonzero && t == 0),
                                      rat_of(1 + static_cast<long long>(rng.below(3)), 1)));
  return e;
}

ModelOperator make_op(std::string label, long long m,
                      std::vector<StrandExpr> strands,
                      std::map<long long, Rat> exceptions = {}) {
  ModelOperator op;
  op.label = std::move(label);
  op.diag.m = m;
  op.diag.strands = std::move(strands);
  op.diag.exceptions = std::move(exceptions);
  op.validate();
  return op;
}

void sprinkle_exceptions(Rng& rng, std::map<long long, Rat>& exc) {
  if (rng.below(4) != 0) return;
  int n = 1 + static_cast<int>(rng.below(2));
  for (int i = 0; i < n; ++i)
    exc[1 + static_cast<long long>(rng.below(60))] = rnd_rat(rng, false);
}

// Tuple with pairwise compact products: on every joint strand at most
// one operator keeps a nonzero limit.
std::vector<ModelOperator> rnd_compact_tuple(Rng& rng) {
  int nops = 2 + static_cast<int>(rng.below(3));
  std::vector<ModelOperator> ops;
  if (rng.below(2) == 0) {
    // Common modulus; per strand a designated operator may carry a
    // nonzero constant, the rest decay.
    long long m = 1 + static_cast<long long>(rng.below(6));
    std::vector<std::vector<StrandExpr>> strands(
        nops, std::vector<StrandExpr>(m));
    for (long long r = 0; r < m; ++r) {
      int designated = rng.below(3) == 0
                           ? -1
                           : static_cast<int>(rng.below(nops));
      for (int i = 0; i < nops; ++i) {
        if (i == designated)
          strands[i][r] =
              StrandExpr::constant(rnd_rat(rng, true)).plus(rnd_decay(rng, 2, false));
        else
          strands[i][r] = rnd_decay(rng, 2, false);
      }
    }
    for (int i = 0; i < nops; ++i) {
      std::map<long long, Rat> exc;
      sprinkle_exceptions(rng, exc);
      ops.push_back(make_op("A" + std::to_string(i), m, std::move(strands[i]),
                            std::move(exc)));
    }
  } else {
    // Heterogeneous moduli; only the first operator may have nonzero
    // limits, the others are compact by themselves.
    for (int i = 0; i < nops; ++i) {
      long long m = 1 + static_cast<long long>(rng.below(6));
      std::vector<StrandExpr> strands(m);
      for (long long r = 0; r < m; ++r) {
        if (i == 0 && rng.below(3) != 0)
          strands[r] =
              StrandExpr::constant(rnd_rat(rng, true)).plus(rnd_decay(rng, 2, false));
        else
          strands[r] = rnd_decay(rng, 2, false);
      }
      std::map<long long, Rat> exc;
      sprinkle_exceptions(rng, exc);
      ops.push_back(
          make_op("A" + std::to_string(i), m, std::move(strands), std::move(exc)));
    }
  }
  return ops;
}

std::vector<Rat> drop_zero(std::vector<Rat> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  v.erase(std::remove(v.begin(), v.end(), Rat(0)), v.end());
  return v;
}

std::vector<SymbolicSequence> diags_of(const std::vector<ModelOperator>& ops) {
  std::vector<SymbolicSequence> seqs;
  for (const auto& op : ops) seqs.push_back(op.diag);
  return refine_all(seqs);
}

// --- criteria ------------------------------------------------------------

std::vector<std::vector<ModelOperator>> population_a;

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(20260815);
  int agree = 0;
  const int total = 1000;
  for (int t = 0; t < total; ++t) {
    population_a.push_back(rnd_compact_tuple(rng));
    const auto& ops = population_a.back();
    ZeroEssentialReport rep = check_zero_essential(ops);
    bool lib = rep.verdict == EssentialVerdict::InEssential;

    // direct route: essential points of the assembled sum
    std::vector<Rat> ess = essential_points(op_sum(ops));
    bool direct = std::find(ess.begin(), ess.end(), Rat(0)) != ess.end();

    // second oracle: per-strand limits of the refined family, summed
    auto refined = diags_of(ops);
    bool strand0 = false;
    for (long long r = 0; r < refined.front().m; ++r) {
      Rat sum(0);
      for (const auto& s : refined) sum += s.strands[r].limit();
      if (sum == 0) strand0 = true;
    }
    if (lib == direct && direct == strand0 && rep.oracle_agrees) ++agree;
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "zero-in-essential oracle equivalence: %d/%d agree in %.1f s "
                "(budget 60 s)",
                agree, total, dt);
  report(1, agree == total && dt < 60.0, buf);
}

void criterion_2() {
  int good = 0;
  const int total = static_cast<int>(population_a.size());
  for (const auto& ops : population_a) {
    TheoremAReport rep = check_theorem_a(ops);

    std::vector<Rat> sum_side = drop_zero(essential_points(op_sum(ops)));
    std::vector<Rat> union_side;
    for (const auto& op : ops) {
      std::vector<Rat> e = essential_points(op);
      union_side.insert(union_side.end(), e.begin(), e.end());
    }
    union_side = drop_zero(union_side);

    bool ok = rep.equal_away_from_zero &&
              drop_zero(rep.sum_essential) == sum_side &&
              drop_zero(rep.union_essential) == union_side &&
              sum_side == union_side;
    if (ok) ++good;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "essential spectra of sum vs union away from zero: %d/%d exact",
                good, total);
  report(2, good == total, buf);
}

void criterion_3() {
  Rng rng(311);
  int closed_good = 0, open_good = 0;
  const int per_family = 200;

  for (int t = 0; t < per_family; ++t) {
    // closed by construction: every strand keeps one nonzero limit.
    // Even tuples pin the designated strand to a bare constant, which
    // forces H_eps = H_0 exactly; odd tuples ride decay terms on it and
    // must re-validate their finite defect instead.
    bool pure = t % 2 == 0;
    int nops = 2 + static_cast<int>(rng.below(3));
    long long m = 1 + static_cast<long long>(rng.below(6));
    std::vector<std::vector<StrandExpr>> strands(nops,
                                                 std::vector<StrandExpr>(m));
    for (long long r = 0; r < m; ++r) {
      int designated = static_cast<int>(rng.below(nops));
      for (int i = 0; i < nops; ++i) {
        if (i != designated) {
          strands[i][r] = rnd_decay(rng, 2, false);
          continue;
        }
        StrandExpr e = StrandExpr::constant(rnd_rat(rng, true));
        strands[i][r] = pure ? e : e.plus(rnd_decay(rng, 2, false));
      }
    }
    std::vector<ModelOperator> ops;
    for (int i = 0; i < nops; ++i)
      ops.push_back(make_op("A" + std::to_string(i), m, std::move(strands[i])));

    ClosednessReport rep = check_sum_ranges_closed(ops);
    if (!rep.closed) continue;
    CoreReport core = epsilon_core(ops, rep.eps);
    CoreReport kern = kernel_core(ops);
    IndexSetDesc defect = set_difference(core.indices, kern.indices);
    bool revalid = defect.is_finite() && defect.finite_count() == rep.defect_dim;
    if (pure)
      revalid = revalid && core.indices == kern.indices && rep.defect_dim == 0;
    if (revalid) ++closed_good;
  }

  for (int t = 0; t < per_family; ++t) {
    // not closed: one strand where every limit dies but an operator
    // stays alive
    int nops = 2 + static_cast<int>(rng.below(3));
    long long m = 1 + static_cast<long long>(rng.below(6));
    long long breaking = static_cast<long long>(rng.below(m));
    int alive = static_cast<int>(rng.below(nops));
    std::vector<std::vector<StrandExpr>> strands(nops,
                                                 std::vector<StrandExpr>(m));
    for (long long r = 0; r < m; ++r) {
      if (r == breaking) {
        for (int i = 0; i < nops; ++i)
          strands[i][r] = rnd_decay(rng, 2, i == alive);
        continue;
      }
      int designated = static_cast<int>(rng.below(nops));
      for (int i = 0; i < nops; ++i)
        strands[i][r] = i == designated
                            ? StrandExpr::constant(rnd_rat(rng, true))
                                  .plus(rnd_decay(rng, 2, false))
                            : rnd_decay(rng, 2, false);
    }
    std::vector<ModelOperator> ops;
    for (int i = 0; i < nops; ++i)
      ops.push_back(make_op("A" + std::to_string(i), m, std::move(strands[i])));

    ClosednessReport rep = check_sum_ranges_closed(ops);
    if (rep.closed) continue;

    // witness re-validation: all limits vanish on the strand, the named
    // operator does not vanish identically
    auto refined = diags_of(ops);
    bool limits_die = refined.front().m == rep.modulus;
    for (const auto& s : refined)
      if (s.strands[rep.witness_strand].limit() != 0) limits_die = false;
    bool witness_alive = false;
    for (std::size_t i = 0; i < ops.size(); ++i)
      if (ops[i].label == rep.witness_label)
        witness_alive = !refined[i].strands[rep.witness_strand].is_zero();

    // independent core route: the defect is infinite at any small eps
    IndexSetDesc defect = set_difference(epsilon_core(ops, rat_of(1, 4)).indices,
                                         kernel_core(ops).indices);
    if (limits_die && witness_alive && !defect.is_finite()) ++open_good;
  }

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "range-sum closedness both directions: %d/%d closed, %d/%d not "
                "closed, certificates re-validated",
                closed_good, per_family, open_good, per_family);
  report(3, closed_good == per_family && open_good == per_family, buf);
}

void criterion_4() {
  int in_essential = 0, good = 0;
  for (const auto& ops : population_a) {
    if (check_zero_essential(ops).verdict != EssentialVerdict::InEssential)
      continue;
    ++in_essential;
    SingularSchedule s = build_singular_schedule(ops, 50);
    bool ok = s.indices.size() == 50 && validate_schedule(ops, s) &&
              s.bound_constant == static_cast<long long>(ops.size());
    for (std::size_t t = 0; ok && t < s.indices.size(); ++t) {
      if (t > 0 && s.indices[t] <= s.indices[t - 1]) ok = false;
      Rat m_pos(static_cast<long>(t) + 1);
      Rat sum(0);
      for (const auto& op : ops) {
        Rat v = seq_eval(op.diag, s.indices[t]);
        sum += v;
        if (rat_abs(v) * m_pos > 1) ok = false;  // per-operator exact bound
      }
      if (rat_abs(sum) * m_pos > Rat(static_cast<long>(s.bound_constant)))
        ok = false;  // |sum diag_i(k_m)| <= N/m, zero tolerance
    }
    if (ok) ++good;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "singular schedules: %d/%d InEssential tuples meet the exact "
                "N/m bound at length 50",
                good, in_essential);
  report(4, good == in_essential && in_essential > 0, buf);
}

void criterion_5() {
  Rng rng(555);
  const Rat levels[3] = {rat_of(1, 2), rat_of(1, 10), rat_of(1, 100)};
  int good = 0;
  const int total = 200;
  for (int t = 0; t < total; ++t) {
    // compact product pair: disjoint nonzero-limit strands
    long long m = 1 + static_cast<long long>(rng.below(6));
    std::vector<StrandExpr> sb(m), sc(m);
    for (long long r = 0; r < m; ++r) {
      switch (rng.below(4)) {
        case 0:
          sb[r] = StrandExpr::constant(rnd_rat(rng, true)).plus(rnd_decay(rng, 1, false));
          sc[r] = rnd_decay(rng, 2, false);
          break;
        case 1:
          sb[r] = rnd_decay(rng, 2, false);
          sc[r] = StrandExpr::constant(rnd_rat(rng, true)).plus(rnd_decay(rng, 1, false));
          break;
        default:
          sb[r] = rnd_decay(rng, 2, false);
          sc[r] = rnd_decay(rng, 2, false);
      }
    }
    std::map<long long, Rat> eb, ec;
    sprinkle_exceptions(rng, eb);
    sprinkle_exceptions(rng, ec);
    ModelOperator b = make_op("B", m, std::move(sb), std::move(eb));
    ModelOperator c = make_op("C", m, std::move(sc), std::move(ec));
    const Rat& eps = levels[t % 3];
    const Rat& delta = levels[(t / 3) % 3];

    Lemma41Report rep = check_projection_product_compact(b, c, eps, delta);
    bool ok = rep.count == static_cast<long long>(rep.witnesses.size()) &&
              std::is_sorted(rep.witnesses.begin(), rep.witnesses.end());
    for (long long w : rep.witnesses)
      if (rat_abs(seq_eval(b.diag, w)) <= eps ||
          rat_abs(seq_eval(c.diag, w)) <= delta)
        ok = false;
    for (long long k = 1; ok && k <= 100000; ++k) {
      bool joint = rat_abs(seq_eval(b.diag, k)) > eps &&
                   rat_abs(seq_eval(c.diag, k)) > delta;
      bool listed =
          std::binary_search(rep.witnesses.begin(), rep.witnesses.end(), k);
      if (joint != listed) ok = false;
    }
    if (ok) ++good;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "joint spectral exceedance finite rank: %d/%d pairs match the "
                "brute scan to 1e5",
                good, total);
  report(5, good == total, buf);
}

void criterion_6() {
  Rng rng(666);
  int good = 0;
  const int total = 100;
  const long long dim = 200;
  for (int t = 0; t < total; ++t) {
    int nproj = 2 + static_cast<int>(rng.below(4));
    int entangled = static_cast<int>(rng.below(6));  // <= 5 pairs, rank <= 10
    std::vector<std::vector<std::vector<cdouble>>> frames(nproj);
    long long axis = 0;
    auto basis_vec = [&](long long i) {
      std::vector<cdouble> v(dim);
      v[i] = 1.0;
      return v;
    };
    // entangled pairs: two projections share a tilted direction
    for (int p = 0; p < entangled; ++p) {
      int a = static_cast<int>(rng.below(nproj));
      int b = static_cast<int>(rng.below(nproj));
      while (b == a) b = static_cast<int>(rng.below(nproj));
      double cth = 0.1 + 0.8 * rng.uniform();
      double sth = std::sqrt(1.0 - cth * cth);
      long long s = axis++, u = axis++;
      frames[a].push_back(basis_vec(s));
      std::vector<cdouble> tilted(dim);
      tilted[s] = cth;
      tilted[u] = sth;
      frames[b].push_back(std::move(tilted));
    }
    // plain mutually orthogonal directions fill every projection to
    // rank 1..3
    for (int i = 0; i < nproj; ++i) {
      int extra = static_cast<int>(rng.below(3)) +
                  (frames[i].empty() ? 1 : 0);
      for (int e = 0; e < extra; ++e) frames[i].push_back(basis_vec(axis++));
    }
    long long frame_total = 0;
    std::vector<HermitianMatrix> projections;
    for (int i = 0; i < nproj; ++i) {
      Matrix p(dim, dim);
      for (const auto& v : frames[i])
        for (long long r = 0; r < dim; ++r)
          for (long long cidx = 0; cidx < dim; ++cidx)
            p.at(r, cidx) += v[r] * std::conj(v[cidx]);
      projections.push_back(HermitianMatrix::from_matrix(p, 1e-10));
      frame_total += static_cast<long long>(frames[i].size());
    }

    GramGapReport rep = gram_gap(projections);
    long long outside = 0;
    for (double lambda : rep.gram_spectrum)
      if (std::abs(lambda - 1.0) > 1e-9) ++outside;
    bool ok = rep.spectra_match_ok && rep.max_match_diff <= 1e-9 &&
              rep.nonzero_sum == frame_total &&
              rep.nonzero_gram == frame_total &&
              rep.rank_gamma_minus_identity == 2 * entangled &&
              rep.rank_gamma_minus_identity <= 10 &&
              outside <= rep.rank_gamma_minus_identity;
    if (ok) ++good;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "projection sums vs gram embedding (dim 200): %d/%d families "
                "match within 1e-9",
                good, total);
  report(6, good == total, buf);
}

void criterion_7() {
  Rng rng(777);
  int good = 0;
  const int total = 100;
  const long long n = 50;
  auto rnd_herm = [&](double scale) {
    HermitianMatrix h(n);
    for (long long i = 0; i < n; ++i) {
      h.set(i, i, scale * rng.gaussian());
      for (long long j = i + 1; j < n; ++j)
        h.set(i, j, cdouble(scale * rng.gaussian(), scale * rng.gaussian()));
    }
    return h;
  };
  for (int t = 0; t < total; ++t) {
    std::vector<HermitianMatrix> bs;
    bs.push_back(rnd_herm(1.0 / std::sqrt(static_cast<double>(n))));
    // an anchored operator keeps the joint column space full
    HermitianMatrix e = rnd_herm(1.0);
    double s = 0.4 / e.fro();
    Matrix anchored = Matrix::identity(n);
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j < n; ++j) anchored.at(i, j) += s * e.at(i, j);
    bs.push_back(HermitianMatrix::from_matrix(anchored, 1e-8));
    int extra = static_cast<int>(rng.below(3));
    for (int x = 0; x < extra; ++x)
      bs.push_back(rnd_herm(1.0 / std::sqrt(static_cast<double>(n))));

    CoercivityReport rep = coercivity_constant(bs, 100, Rng::derive(777, t));
    bool ok = rep.lambda_min > 1e-8 && rep.sampled_ok &&
              rep.min_quadratic >= rep.lambda_min - 1e-9;

    // independent sampling of the quadratic inequality
    std::vector<Matrix> fulls;
    for (const auto& b : bs) fulls.push_back(b.full());
    for (int sidx = 0; ok && sidx < 100; ++sidx) {
      std::vector<cdouble> x(n);
      double norm2 = 0.0;
      for (auto& z : x) {
        z = cdouble(rng.gaussian(), rng.gaussian());
        norm2 += std::norm(z);
      }
      double quad = 0.0;
      for (const auto& f : fulls)
        for (long long i = 0; i < n; ++i) {
          cdouble acc = 0.0;
          for (long long j = 0; j < n; ++j) acc += f.at(i, j) * x[j];
          quad += std::norm(acc);
        }
      if (quad / norm2 < rep.lambda_min - 1e-9) ok = false;
    }

    RangesEqReport ranges = corollary_ranges_eq(bs);
    ok = ok && ranges.equal && ranges.rank_sum == n && ranges.rank_stack == n;
    if (ok) ++good;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "coercivity and stacked-range equality (n=50): %d/%d families",
                good, total);
  report(7, good == total, buf);
}

void criterion_8() {
  Rng rng(888);
  int good = 0;
  const int total = 50;
  const Rat eps = rat_of(1, 2);
  for (int t = 0; t < total; ++t) {
    // every strand exceeds eps in the tail, so H_eps is finite; integer
    // constants and single 1/j terms keep truncated values far from the
    // spectral window boundary
    int nops = 2 + static_cast<int>(rng.below(3));
    long long m = 1 + static_cast<long long>(rng.below(4));
    std::vector<std::vector<StrandExpr>> strands(nops,
                                                 std::vector<StrandExpr>(m));
    for (long long r = 0; r < m; ++r) {
      int designated = static_cast<int>(rng.below(nops));
      for (int i = 0; i < nops; ++i) {
        if (i == designated) {
          long long c = 1 + static_cast<long long>(rng.below(9));
          if (rng.below(2) == 0) c = -c;
          strands[i][r] = StrandExpr::constant(Rat(static_cast<long>(c)));
        } else if (rng.below(2) == 0) {
          long long d = 1 + static_cast<long long>(rng.below(9));
          if (rng.below(2) == 0) d = -d;
          strands[i][r] = StrandExpr::power_term(Rat(static_cast<long>(d)), Rat(1));
        }
      }
    }
    std::vector<ModelOperator> ops;
    for (int i = 0; i < nops; ++i) {
      std::map<long long, Rat> exc;
      if (rng.below(4) == 0)
        exc[1 + static_cast<long long>(rng.below(40))] =
            rat_of(static_cast<long long>(rng.below(2)), 4);
      ops.push_back(make_op("A" + std::to_string(i), m, std::move(strands[i]),
                            std::move(exc)));
    }

    Ineq41Report full = verify_inequality_41(ops, eps, 500);
    Ineq41Report half = verify_inequality_41(ops, eps, 250);
    bool ok = full.holds && half.holds && full.violations.empty() &&
              half.violations.empty() && full.mu == eps * eps * full.delta &&
              full.scanned >= 500;
    if (ok) ++good;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "inequality (4.1): %d/%d finite-core tuples hold at "
                "truncation 500 and 250",
                good, total);
  report(8, good == total, buf);
}

void criterion_9() {
  bool ok = true;

  // diag(1/k): not closed, essential spectrum exactly {0}
  ModelOperator harmonic =
      make_op("H", 1, {StrandExpr::power_term(Rat(1), Rat(1))});
  ClosednessReport hrep = check_range_closed_single(harmonic);
  ok = ok && !hrep.closed;
  std::vector<Rat> ess = essential_points(harmonic);
  ok = ok && ess == std::vector<Rat>{Rat(0)};

  // diagonal projections close, including the zero and identity patterns
  Rng rng(999);
  for (int t = 0; t < 25 && ok; ++t) {
    long long m = 1 + static_cast<long long>(rng.below(6));
    std::vector<StrandExpr> strands(m);
    for (long long r = 0; r < m; ++r)
      if (rng.below(2) == 0) strands[r] = StrandExpr::constant(Rat(1));
    ClosednessReport rep =
        check_range_closed_single(make_op("P", m, std::move(strands)));
    ok = ok && rep.closed && rep.defect_dim == 0;
  }

  // grouped route: singleton projection groups with compact cross
  // products close, and the route agrees with the flat verdict
  auto proj = [&](long long m, long long strand) {
    std::vector<StrandExpr> strands(m);
    strands[strand] = StrandExpr::constant(Rat(1));
    return make_op("P" + std::to_string(strand), m, std::move(strands));
  };
  GroupedReport g3 = check_grouped_closed(
      {{proj(3, 0)}, {proj(3, 1)}, {proj(3, 2)}});
  GroupedReport g2 = check_grouped_closed({{proj(3, 0)}, {proj(3, 1), proj(3, 2)}});
  for (const GroupedReport* g : {&g3, &g2})
    ok = ok && g->all_groups_closed && g->closed_by_route &&
         g->route_agrees_flat && g->flat.closed && g->route_defect_dim == 0 &&
         g->common_eps == rat_of(1, 2);

  report(9, ok,
         "classical anchors: diag(1/k) not closed with sigma_e {0}; diagonal "
         "projections and grouped projections closed");
}

void criterion_10() {
  ModelOperator two_limits = make_op(
      "T", 2,
      {StrandExpr::constant(Rat(1)).plus(StrandExpr::power_term(Rat(1), Rat(1))),
       StrandExpr::constant(Rat(-1))});
  ConvergenceReport conv =
      truncation_spectrum_convergence(two_limits, {100, 200, 400});
  const ConvergenceStep& last = conv.steps.back();
  double worst = 0.0;
  std::vector<double> targets = {-1.0, 1.0};
  std::vector<double> centers;
  for (const auto& c : last.clusters)
    if (c.growing) centers.push_back(c.center);
  bool ok = !centers.empty();
  for (double c : centers) {
    double best = 1e30;
    for (double e : targets) best = std::min(best, std::abs(c - e));
    worst = std::max(worst, best);
  }
  for (double e : targets) {
    double best = 1e30;
    for (double c : centers) best = std::min(best, std::abs(c - e));
    worst = std::max(worst, best);
  }
  ok = ok && worst <= 0.02 && last.hausdorff <= 0.02 && last.size == 400;

  // diag(1/k) truncations carry the exact rational eigenvalues
  ModelOperator harmonic =
      make_op("H", 1, {StrandExpr::power_term(Rat(1), Rat(1))});
  const long long n = 40;
  HermitianRational exact = truncate_exact(harmonic, n);
  std::vector<double> vals = eigh(truncate(harmonic, n)).values;
  for (long long k = 1; k <= n; ++k) {
    ok = ok && exact.at(k - 1, k - 1).re == rat_of(1, k);
    if (vals[n - k] != rat_to_double(rat_of(1, k))) ok = false;
  }

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "truncation lab: hausdorff %.4f <= 0.02 at n=400; harmonic "
                "eigenvalues exact",
                worst);
  report(10, ok, buf);
}

void criterion_11() {
  namespace fs = std::filesystem;
  fs::path dir = fs::is_directory("scenarios") ? "scenarios" : "../scenarios";
  bool ok = fs::is_directory(dir);
  int files = 0;

  if (ok)
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() != ".ssc") continue;
      ++files;
      std::ifstream f(entry.path(), std::ios::binary);
      std::stringstream ss;
      ss << f.rdbuf();
      std::string text = ss.str();
      try {
        if (dsl::serialize_scenario(dsl::parse_scenario(text)) != text) ok = false;
      } catch (const Error&) {
        ok = false;
      }
    }
  ok = ok && files == 20;

  // fuzz: 1e5 random inputs, typed rejection only
  Rng rng(1111);
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyz0123456789 \t\n\r{}();:,*^/+-=#_><.";
  for (int t = 0; t < 100000; ++t) {
    std::string text;
    std::size_t len = rng.below(96);
    for (std::size_t i = 0; i < len; ++i)
      text += alphabet[rng.below(alphabet.size())];
    try {
      dsl::parse_scenario(text);
    } catch (const Error&) {
    }
  }

  // determinism: serial and parallel runs emit identical bytes
  for (const char* name : {"07_ineq41.ssc", "15_block.ssc", "20_full_sweep.ssc"}) {
    std::ifstream f(dir / name, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    dsl::ScenarioSpec spec = dsl::parse_scenario(ss.str());
    dsl::RunOptions serial;
    serial.seed = 5;
    dsl::RunOptions parallel = serial;
    parallel.parallel = true;
    std::string a = dsl::emit_json(dsl::run_scenario(spec, serial));
    std::string b = dsl::emit_json(dsl::run_scenario(spec, serial));
    std::string c = dsl::emit_json(dsl::run_scenario(spec, parallel));
    ok = ok && a == b && a == c;
  }

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "surface: %d scenario files round-trip byte-identically, 1e5 "
                "fuzz inputs rejected cleanly, serial == parallel bytes",
                files);
  report(11, ok, buf);
}

}  // namespace

int main() {
  struct Entry {
    int id;
    void (*fn)();
  };
  const Entry entries[] = {{1, criterion_1},  {2, criterion_2}, {3, criterion_3},
                           {4, criterion_4},  {5, criterion_5}, {6, criterion_6},
                           {7, criterion_7},  {8, criterion_8}, {9, criterion_9},
                           {10, criterion_10}, {11, criterion_11}};
  for (const auto& e : entries) {
    try {
      e.fn();
    } catch (const std::exception& ex) {
      report(e.id, false, std::string("threw: ") + ex.what());
    }
  }
  if (failures == 0)
    std::printf("acceptance: all 11 criteria hold\n");
  else
    std::printf("acceptance: %d criteria failing\n", failures);
  return failures == 0 ? 0 : 1;
}
