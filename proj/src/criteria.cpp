#include "specsum/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "specsum/numeric/subspace.hpp"

namespace specsum {

namespace {

void require_no_blocks(const std::vector<ModelOperator>& ops, const char* what) {
  for (const auto& op : ops)
    if (op.has_block())
      throw Error(ErrorKind::BlockNotSupported,
                  std::string(what) + " needs purely diagonal operators");
}

std::vector<SymbolicSequence> refined_diags(const std::vector<ModelOperator>& ops) {
  std::vector<SymbolicSequence> diags;
  diags.reserve(ops.size());
  for (const auto& op : ops) {
    op.validate();
    diags.push_back(op.diag);
  }
  return refine_all(diags);
}

void require_hypotheses(const std::vector<ModelOperator>& ops) {
  if (ops.size() < 2) return;  // pairwise condition is vacuous
  HypothesesReport h = check_hypotheses(ops);
  if (!h.ok)
    throw Error(ErrorKind::HypothesisViolated,
                "product " + h.failing_pairs.front().first + " * " +
                    h.failing_pairs.front().second + " is not compact");
}

std::vector<Rat> strip_zero(std::vector<Rat> v) {
  std::erase(v, Rat(0));
  return v;
}

// Certified positive lower bound of |s(k)| at a point where s(k) != 0.
Rat abs_lower_bound(const SymbolicSequence& s, long long k) {
  auto it = s.exceptions.find(k);
  if (it != s.exceptions.end()) return rat_abs(it->second);
  const StrandExpr& st = s.strands[s.strand_of(k)];
  long long j = s.local_j(k);
  if (auto v = eval_exact(st, j)) return rat_abs(*v);
  for (unsigned long prec = 64; prec <= (1UL << 18); prec *= 2) {
    auto [lo, hi] = eval_interval(st, j, prec);
    if (lo > 0) return lo;
    if (hi < 0) return Rat(-hi);
  }
  throw Error(ErrorKind::Undecidable, "no nonzero lower bound found");
}

// Half the smallest nonzero per-strand maximum of |limit_i|, the
// paper-prescribed eps certificate; Rat(1) when every strand maximum
// vanishes (all operators compact or zero).
Rat half_min_nonzero_strand_max(const std::vector<SymbolicSequence>& refined) {
  Rat best(-1);
  for (long long r = 0; r < refined.front().m; ++r) {
    Rat biggest(0);
    for (const auto& s : refined)
      biggest = std::max(biggest, rat_abs(s.strands[r].limit()));
    if (biggest > 0 && (best < 0 || biggest < best)) best = biggest;
  }
  return best > 0 ? Rat(best / 2) : Rat(1);
}

}  // namespace

HypothesesReport check_hypotheses(const std::vector<ModelOperator>& ops) {
  if (ops.size() < 2)
    throw Error(ErrorKind::BadOperator, "need at least two operators");
  HypothesesReport rep;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (!product_is_compact(ops[i], ops[j]))
        rep.failing_pairs.emplace_back(ops[i].label, ops[j].label);
  rep.ok = rep.failing_pairs.empty();
  return rep;
}

TheoremAReport check_theorem_a(const std::vector<ModelOperator>& ops) {
  if (ops.empty()) throw Error(ErrorKind::BadOperator, "empty family");
  require_hypotheses(ops);
  TheoremAReport rep;
  rep.sum_essential = essential_points(op_sum(ops));
  std::set<Rat> uni;
  for (const auto& op : ops)
    for (const auto& v : essential_points(op)) uni.insert(v);
  rep.union_essential.assign(uni.begin(), uni.end());
  rep.equal_away_from_zero =
      strip_zero(rep.sum_essential) == strip_zero(rep.union_essential);
  if (!rep.equal_away_from_zero)
    throw Error(ErrorKind::OracleMismatch,
                "essential spectra disagree despite compact products");
  return rep;
}

ZeroEssentialReport check_zero_essential(const std::vector<ModelOperator>& ops) {
  if (ops.empty()) throw Error(ErrorKind::BadOperator, "empty family");
  require_no_blocks(ops, "zero-essential decision");
  require_hypotheses(ops);
  auto refined = refined_diags(ops);
  long long m = refined.front().m;
  ZeroEssentialReport rep;
  rep.modulus = m;
  for (long long r = 0; r < m && rep.witness_strand < 0; ++r) {
    bool all_zero = true;
    for (const auto& s : refined)
      if (s.strands[r].limit() != 0) all_zero = false;
    if (all_zero) rep.witness_strand = r;
  }
  rep.verdict = rep.witness_strand >= 0 ? EssentialVerdict::InEssential
                                        : EssentialVerdict::NotInEssential;
  if (rep.verdict == EssentialVerdict::NotInEssential) {
    rep.eps = half_min_nonzero_strand_max(refined);
    CoreReport core = epsilon_core(ops, rep.eps);
    if (!core.finite())
      throw Error(ErrorKind::OracleMismatch,
                  "H_eps is infinite at the certificate eps");
    rep.core_count = core.finite_dim();
  }
  // Independent oracle: limit points of the summed diagonal.
  auto ess = essential_points(op_sum(ops));
  bool zero_in = std::binary_search(ess.begin(), ess.end(), Rat(0));
  rep.oracle_agrees = zero_in == (rep.verdict == EssentialVerdict::InEssential);
  if (!rep.oracle_agrees)
    throw Error(ErrorKind::OracleMismatch, "witness route disagrees with sum spectrum");
  return rep;
}

SingularSchedule build_singular_schedule(const std::vector<ModelOperator>& ops,
                                         int length, long long budget) {
  if (length < 1) throw Error(ErrorKind::BadDimension, "schedule length must be >= 1");
  ZeroEssentialReport zero = check_zero_essential(ops);
  if (zero.verdict != EssentialVerdict::InEssential)
    throw Error(ErrorKind::HypothesisViolated,
                "0 is not in the essential spectrum of the sum");
  auto refined = refined_diags(ops);
  SingularSchedule sched;
  sched.modulus = zero.modulus;
  sched.strand = zero.witness_strand;
  sched.bound_constant = static_cast<long long>(ops.size());
  long long j = 0;
  for (int t = 1; t <= length; ++t) {
    Rat bound = rat_of(1, t);
    for (;;) {
      ++j;
      if (j > budget)
        throw Error(ErrorKind::ExhaustedWitness,
                    "scan budget exhausted at step " + std::to_string(t));
      long long k = refined.front().global_k(sched.strand, j);
      bool ok = true;
      for (const auto& s : refined)
        if (!s.member_abs_le(k, bound)) {
          ok = false;
          break;
        }
      if (ok) {
        sched.indices.push_back(k);
        break;
      }
    }
  }
  return sched;
}

bool validate_schedule(const std::vector<ModelOperator>& ops,
                       const SingularSchedule& s) {
  if (s.bound_constant != static_cast<long long>(ops.size())) return false;
  auto refined = refined_diags(ops);
  long long prev = 0;
  for (std::size_t t = 0; t < s.indices.size(); ++t) {
    long long k = s.indices[t];
    if (k <= prev) return false;
    prev = k;
    Rat bound = rat_of(1, static_cast<long long>(t) + 1);
    for (const auto& seq : refined)
      if (!seq.member_abs_le(k, bound)) return false;
  }
  return true;
}

SingularSchedule singular_schedule_at(const ModelOperator& op, const Rat& lambda,
                                      int length, long long budget) {
  if (length < 1) throw Error(ErrorKind::BadDimension, "schedule length must be >= 1");
  op.validate();
  const SymbolicSequence& d = op.diag;
  SingularSchedule sched;
  sched.modulus = d.m;
  sched.bound_constant = 1;
  for (long long r = 0; r < d.m; ++r)
    if (d.strands[r].limit() == lambda) {
      sched.strand = r;
      break;
    }
  if (sched.strand < 0)
    throw Error(ErrorKind::HypothesisViolated,
                "lambda = " + rat_str(lambda) + " is not an essential point of " +
                    op.label);
  long long j = 0;
  for (int t = 1; t <= length; ++t) {
    Rat bound = rat_of(1, t);
    for (;;) {
      ++j;
      if (j > budget)
        throw Error(ErrorKind::ExhaustedWitness,
                    "scan budget exhausted at step " + std::to_string(t));
      long long k = d.global_k(sched.strand, j);
      if (d.cmp_at(k, lambda + bound) <= 0 && d.cmp_at(k, lambda - bound) >= 0) {
        sched.indices.push_back(k);
        break;
      }
    }
  }
  return sched;
}

ClosednessReport check_sum_ranges_closed(const std::vector<ModelOperator>& ops,
                                         long long budget) {
  if (ops.empty()) throw Error(ErrorKind::BadOperator, "empty family");
  require_no_blocks(ops, "range-sum closedness");
  require_hypotheses(ops);
  auto refined = refined_diags(ops);
  long long m = refined.front().m;
  ClosednessReport rep;
  rep.modulus = m;
  for (long long r = 0; r < m; ++r) {
    bool all_zero = true;
    for (const auto& s : refined)
      if (s.strands[r].limit() != 0) all_zero = false;
    if (!all_zero) continue;
    // All limits vanish here; the strand breaks closedness unless every
    // operator vanishes identically on it.
    for (std::size_t i = 0; i < refined.size(); ++i)
      if (!refined[i].strands[r].is_zero()) {
        rep.closed = false;
        rep.witness_strand = r;
        rep.witness_label = ops[i].label;
        rep.kernel = kernel_core(ops, budget).indices;
        return rep;
      }
  }
  rep.closed = true;
  rep.eps = half_min_nonzero_strand_max(refined);
  CoreReport core = epsilon_core(ops, rep.eps, budget);
  CoreReport kern = kernel_core(ops, budget);
  rep.core = core.indices;
  rep.kernel = kern.indices;
  IndexSetDesc defect = set_difference(rep.core, rep.kernel);
  if (!defect.is_finite())
    throw Error(ErrorKind::OracleMismatch, "closed verdict with infinite defect");
  rep.defect_dim = defect.finite_count();
  return rep;
}

ClosednessReport check_range_closed_single(const ModelOperator& op, long long budget) {
  return check_sum_ranges_closed({op}, budget);
}

CoercivityReport coercivity_constant(const std::vector<HermitianMatrix>& bs,
                                     int samples, std::uint64_t seed,
                                     const Tolerances& tol) {
  if (bs.empty()) throw Error(ErrorKind::BadOperator, "empty family");
  const long long n = bs.front().dim();
  for (const auto& b : bs)
    if (b.dim() != n)
      throw Error(ErrorKind::BadDimension, "operators must share the dimension");
  Matrix s(n, n);
  for (const auto& b : bs) {
    Matrix f = b.full();
    s = s + matmul(f, adjoint(f));
  }
  HermitianMatrix h = HermitianMatrix::from_matrix(s, 1e-10);
  CoercivityReport rep;
  rep.lambda_min = lambda_min(h, tol);
  rep.samples = samples;
  Rng rng(seed);
  double min_quad = -1.0;
  for (int it = 0; it < samples; ++it) {
    std::vector<cdouble> x(n);
    double norm2 = 0.0;
    for (auto& z : x) {
      z = cdouble(rng.gaussian(), rng.gaussian());
      norm2 += std::norm(z);
    }
    if (norm2 == 0.0) continue;
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : x) z *= inv;
    // ||B* x||^2 = sum_i ||B_i* x||^2.
    double quad = 0.0;
    for (const auto& b : bs)
      for (long long col = 0; col < n; ++col) {
        cdouble acc = 0.0;
        for (long long i = 0; i < n; ++i) acc += std::conj(b.at(i, col)) * x[i];
        quad += std::norm(acc);
      }
    if (min_quad < 0.0 || quad < min_quad) min_quad = quad;
  }
  rep.min_quadratic = std::max(min_quad, 0.0);
  rep.sampled_ok =
      min_quad < 0.0 ||
      min_quad >= rep.lambda_min - tol.spectra_match * std::max(1.0, h.fro());
  return rep;
}

RangesEqReport corollary_ranges_eq(const std::vector<HermitianMatrix>& bs,
                                   const Tolerances& tol) {
  if (bs.empty()) throw Error(ErrorKind::BadOperator, "empty family");
  const long long n = bs.front().dim();
  for (const auto& b : bs)
    if (b.dim() != n)
      throw Error(ErrorKind::BadDimension, "operators must share the dimension");
  RangesEqReport rep;
  rep.ambient = n;

  // Route one: range of sum B_i B_i* via eigh.
  Matrix s(n, n);
  for (const auto& b : bs) {
    Matrix f = b.full();
    s = s + matmul(f, adjoint(f));
  }
  EigenDecomposition d = eigh(HermitianMatrix::from_matrix(s, 1e-10), tol);
  double top = 0.0;
  for (double v : d.values) top = std::max(top, std::abs(v));
  double cut = tol.rank_abs * std::max(1.0, top);
  std::vector<long long> picked;
  for (long long j = 0; j < n; ++j)
    if (d.values[j] > cut) picked.push_back(j);
  Matrix u(n, static_cast<long long>(picked.size()));
  for (long long c = 0; c < u.cols; ++c)
    for (long long i = 0; i < n; ++i) u.at(i, c) = d.vectors.at(i, picked[c]);
  rep.rank_sum = u.cols;

  // Route two: the stacked columns [B_1 ... B_n] orthogonalized directly.
  Matrix stack(n, n * static_cast<long long>(bs.size()));
  for (std::size_t b = 0; b < bs.size(); ++b)
    for (long long j = 0; j < n; ++j)
      for (long long i = 0; i < n; ++i)
        stack.at(i, static_cast<long long>(b) * n + j) = bs[b].at(i, j);
  double scale = 0.0;
  for (const auto& z : stack.a) scale = std::max(scale, std::abs(z));
  Matrix w = orthonormal_columns(stack, tol.rank_abs * std::max(1.0, scale));
  rep.rank_stack = w.cols;

  // Mutual containment of the two bases.
  auto worst_residual = [&](const Matrix& from, const Matrix& onto,
                            std::vector<cdouble>& witness) {
    double worst = 0.0;
    for (long long c = 0; c < from.cols; ++c) {
      std::vector<cdouble> v(n);
      for (long long i = 0; i < n; ++i) v[i] = from.at(i, c);
      for (long long b = 0; b < onto.cols; ++b) {
        cdouble coef = 0.0;
        for (long long i = 0; i < n; ++i) coef += std::conj(onto.at(i, b)) * v[i];
        for (long long i = 0; i < n; ++i) v[i] -= coef * onto.at(i, b);
      }
      double norm2 = 0.0;
      for (const auto& z : v) norm2 += std::norm(z);
      double r = std::sqrt(norm2);
      if (r > worst) {
        worst = r;
        witness = v;
      }
    }
    return worst;
  };
  std::vector<cdouble> wit_a, wit_b;
  double ra = worst_residual(u, w, wit_a);
  double rb = worst_residual(w, u, wit_b);
  rep.max_defect = std::max(ra, rb);
  double contain_tol = 100 * tol.rank_abs;
  rep.equal = rep.rank_sum == rep.rank_stack && rep.max_defect <= contain_tol;
  if (!rep.equal) rep.violating = ra >= rb ? wit_a : wit_b;
  return rep;
}

Lemma41Report check_projection_product_compact(const ModelOperator& b,
                                               const ModelOperator& c,
                                               const Rat& eps, const Rat& delta,
                                               long long budget) {
  if (eps <= 0 || delta <= 0)
    throw Error(ErrorKind::BadSequence, "window radii must be positive");
  require_no_blocks({b, c}, "spectral projection product");
  if (!product_is_compact(b, c))
    throw Error(ErrorKind::HypothesisViolated,
                "product " + b.label + " * " + c.label + " is not compact");
  auto [rb, rc] = refine_common(b.diag, c.diag);
  IndexSetDesc outside_b = set_complement(abs_le_set(rb, eps, budget));
  IndexSetDesc outside_c = set_complement(abs_le_set(rc, delta, budget));
  IndexSetDesc inter = set_intersection({outside_b, outside_c});
  if (!inter.is_finite())
    throw Error(ErrorKind::OracleMismatch,
                "projection product has infinite rank despite compact product");
  Lemma41Report rep;
  rep.eps = eps;
  rep.delta = delta;
  rep.count = inter.finite_count();
  rep.witnesses = inter.finite;
  return rep;
}

GramGapReport gram_gap(const std::vector<HermitianMatrix>& projections,
                       const Tolerances& tol) {
  if (projections.empty()) throw Error(ErrorKind::BadOperator, "empty family");
  const long long n = projections.front().dim();
  for (const auto& p : projections)
    if (p.dim() != n) throw Error(ErrorKind::BadDimension, "dimension mismatch");
  std::vector<Subspace> frames;
  for (const auto& p : projections) frames.push_back(range_frame(p, tol));
  Matrix s(n, n);
  for (const auto& p : projections) s = s + p.full();
  HermitianMatrix sum = HermitianMatrix::from_matrix(s, 1e-10);
  GramGapReport rep;
  rep.sum_spectrum = eigh(sum, tol).values;
  rep.gram_spectrum = eigh(gram_matrix(frames), tol).values;
  auto nonzero_desc = [&](const std::vector<double>& v) {
    std::vector<double> out;
    for (double x : v)
      if (x > tol.zero_tol) out.push_back(x);
    std::sort(out.rbegin(), out.rend());
    return out;
  };
  std::vector<double> a = nonzero_desc(rep.sum_spectrum);
  std::vector<double> g = nonzero_desc(rep.gram_spectrum);
  rep.nonzero_sum = static_cast<long long>(a.size());
  rep.nonzero_gram = static_cast<long long>(g.size());
  double diff = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), g.size()); ++i)
    diff = std::max(diff, std::abs(a[i] - g[i]));
  rep.max_match_diff = diff;
  rep.spectra_match_ok = a.size() == g.size() && diff <= tol.spectra_match;
  for (double x : rep.gram_spectrum)
    if (std::abs(x - 1.0) > tol.spectra_match) ++rep.rank_gamma_minus_identity;
  try {
    rep.gap = spectral_gap_above(sum, tol.zero_tol, tol);
  } catch (const Error&) {
    rep.gap = 0.0;
  }
  return rep;
}

Ineq41Report verify_inequality_41(const std::vector<ModelOperator>& ops,
                                  const Rat& eps, int trunc_size, long long budget,
                                  const Tolerances& tol) {
  if (ops.empty()) throw Error(ErrorKind::BadOperator, "empty family");
  if (eps <= 0) throw Error(ErrorKind::BadSequence, "eps must be positive");
  if (trunc_size < 1) throw Error(ErrorKind::BadDimension, "truncation must be >= 1");
  require_no_blocks(ops, "inequality (4.1)");
  CoreReport core = epsilon_core(ops, eps, budget);
  if (!core.finite())
    throw Error(ErrorKind::InfiniteCore,
                "H_eps is infinite, the core projection is not finite rank");
  auto refined = refined_diags(ops);
  long long m = refined.front().m;

  Ineq41Report rep;
  rep.eps = eps;
  rep.trunc_size = trunc_size;

  // Numeric route for delta: gram gap of the truncated exceedance
  // projections E_{A_i}(R \ [-eps, eps]).
  const double eps_d = rat_to_double(eps);
  std::vector<HermitianMatrix> exceed;
  for (const auto& op : ops) {
    HermitianMatrix t = truncate(op, trunc_size);
    Subspace inside = spectral_projection(t, -eps_d, eps_d, tol);
    Matrix p = Matrix::identity(trunc_size) - inside.projector();
    exceed.push_back(HermitianMatrix::from_matrix(p, 1e-10));
  }
  rep.delta_numeric = gram_gap(exceed, tol).gap;
  rep.delta = Rat(rep.delta_numeric);
  rep.mu = eps * eps * rep.delta;

  // Exact route: scan limit covering every strand's settling point.
  auto member_count = [&](long long k) {
    long long c = 0;
    for (const auto& s : refined)
      if (!s.member_abs_le(k, eps)) ++c;
    return c;
  };
  SymbolicSequence squares = seq_mul(refined.front(), refined.front());
  for (std::size_t i = 1; i < refined.size(); ++i)
    squares = seq_add(squares, seq_mul(refined[i], refined[i]));

  long long scan_to = trunc_size;
  std::vector<long long> tail_counts(m, 0);
  for (long long r = 0; r < m; ++r)
    for (const auto& s : refined) {
      AbsLeStatus st = abs_le_status(s.strands[r], eps);
      if (!st.eventually_in) ++tail_counts[r];
      scan_to = std::max(scan_to, s.global_k(r, st.settle_j));
    }
  bool tails_ok = true;
  for (long long r = 0; r < m; ++r) {
    if (tail_counts[r] == 0) continue;  // tail lies inside H_eps
    SignBeyond sb = sign_beyond(squares.strands[r], rep.mu);
    scan_to = std::max(scan_to, squares.global_k(r, sb.from_j));
    if (sb.sign < 0) tails_ok = false;
  }
  for (const auto& s : refined)
    for (const auto& [k, v] : s.exceptions) {
      (void)v;
      scan_to = std::max(scan_to, k);
    }
  if (scan_to > budget)
    throw Error(ErrorKind::ScanBudgetExceeded, "inequality scan exceeds budget");

  for (long long k = 1; k <= scan_to; ++k) {
    if (member_count(k) == 0) continue;  // inside H_eps, mu Q covers it
    if (squares.cmp_at(k, rep.mu) < 0) rep.violations.push_back(k);
  }
  rep.scanned = scan_to;
  rep.holds = rep.violations.empty() && tails_ok;
  return rep;
}

GroupedReport check_grouped_closed(const std::vector<std::vector<ModelOperator>>& groups,
                                   long long budget) {
  if (groups.empty()) throw Error(ErrorKind::BadOperator, "no groups");
  std::vector<ModelOperator> flat;
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorKind::BadOperator, "empty group");
    flat.insert(flat.end(), g.begin(), g.end());
  }
  require_no_blocks(flat, "grouped closedness");
  // Cross-group compactness hypothesis.
  for (std::size_t p = 0; p < groups.size(); ++p)
    for (std::size_t q = p + 1; q < groups.size(); ++q)
      for (const auto& a : groups[p])
        for (const auto& b : groups[q])
          if (!product_is_compact(a, b))
            throw Error(ErrorKind::HypothesisViolated,
                        "cross-group product " + a.label + " * " + b.label +
                            " is not compact");

  GroupedReport rep;
  for (std::size_t p = 0; p < groups.size(); ++p) {
    rep.groups.push_back(check_sum_ranges_closed(groups[p], budget));
    if (!rep.groups.back().closed)
      throw Error(ErrorKind::HypothesisViolated,
                  "group " + std::to_string(p + 1) +
                      " sum of ranges is not closed (witness " +
                      rep.groups.back().witness_label + ")");
  }
  rep.all_groups_closed = true;

  // Grouped squares B_p; each must keep a spectral gap at zero.
  std::vector<ModelOperator> bops;
  for (std::size_t p = 0; p < groups.size(); ++p) {
    SymbolicSequence sq = seq_mul(groups[p].front().diag, groups[p].front().diag);
    for (std::size_t i = 1; i < groups[p].size(); ++i)
      sq = seq_add(sq, seq_mul(groups[p][i].diag, groups[p][i].diag));
    ModelOperator b;
    b.label = "B" + std::to_string(p + 1);
    b.diag = sq;
    bops.push_back(std::move(b));
  }
  Rat common(-1);
  for (const auto& b : bops) {
    Rat gap(-1);
    auto fold = [&](const Rat& cand) {
      if (cand <= 0) return;
      if (gap < 0 || cand < gap) gap = cand;
    };
    for (long long r = 0; r < b.diag.m; ++r) {
      const StrandExpr& st = b.diag.strands[r];
      Rat lim = st.limit();
      if (lim > 0) {
        fold(lim / 2);
        SignBeyond sb = sign_beyond(st, lim / 2);
        if (sb.from_j > budget)
          throw Error(ErrorKind::ScanBudgetExceeded, "grouped gap scan exceeds budget");
        for (long long j = 1; j < sb.from_j; ++j) {
          long long k = b.diag.global_k(r, j);
          if (b.diag.cmp_at(k, Rat(0)) > 0) fold(abs_lower_bound(b.diag, k));
        }
      } else if (!st.is_zero()) {
        throw Error(ErrorKind::OracleMismatch,
                    "grouped square lost its gap despite group closedness");
      }
    }
    for (const auto& [k, v] : b.diag.exceptions)
      if (v > 0) fold(v);
    if (gap <= 0) gap = Rat(1);  // identically zero group
    rep.group_gaps.push_back(gap);
    if (common < 0 || gap < common) common = gap;
  }
  rep.common_eps = common;

  // Theorem 1.2 criterion applied to the B_p family at eps/2.
  CoreReport core = epsilon_core(bops, common / 2, budget);
  CoreReport kern = kernel_core(bops, budget);
  IndexSetDesc defect = set_difference(core.indices, kern.indices);
  if (!defect.is_finite() || defect.finite_count() != 0)
    throw Error(ErrorKind::OracleMismatch,
                "H_{eps/2} of the grouped squares is not the joint kernel");
  rep.route_defect_dim = defect.finite_count();
  rep.closed_by_route = true;

  rep.flat = check_sum_ranges_closed(flat, budget);
  rep.route_agrees_flat = rep.flat.closed;
  if (!rep.route_agrees_flat)
    throw Error(ErrorKind::OracleMismatch,
                "grouped route and flat verdicts disagree");
  return rep;
}

TransferReport transfer_singular(const ModelOperator& b1, const ModelOperator& b2,
                                 const Rat& lambda, const SingularSchedule& schedule,
                                 long long n) {
  if (lambda == 0) throw Error(ErrorKind::BadSequence, "lambda must be nonzero");
  if (schedule.indices.empty())
    throw Error(ErrorKind::BadSequence, "empty schedule");
  b1.validate();
  b2.validate();
  TransferReport rep;
  rep.lambda = lambda;
  rep.n = n;
  if (!product_is_compact(b1, b2))
    throw Error(ErrorKind::HypothesisViolated,
                "product " + b1.label + " * " + b2.label + " is not compact");
  rep.product_compact = true;
  long long prev = 0;
  for (std::size_t t = 0; t < schedule.indices.size(); ++t) {
    long long k = schedule.indices[t];
    if (k <= prev || k > n)
      throw Error(ErrorKind::BadDimension,
                  "schedule indices must increase and stay within the truncation");
    prev = k;
    Rat bound = rat_of(1, static_cast<long long>(t) + 1);
    if (b2.diag.cmp_at(k, lambda + bound) > 0 ||
        b2.diag.cmp_at(k, lambda - bound) < 0)
      throw Error(ErrorKind::HypothesisViolated,
                  "schedule is not singular for " + b2.label + " at " +
                      rat_str(lambda));
  }
  rep.schedule_valid = true;
  HermitianMatrix t1 = truncate(b1, n);
  std::vector<double> norms;
  for (long long k : schedule.indices) {
    double s = 0.0;
    for (long long i = 0; i < n; ++i) s += std::norm(t1.at(i, k - 1));
    norms.push_back(std::sqrt(s));
  }
  std::size_t quarter = std::max<std::size_t>(1, norms.size() / 4);
  double first = 0.0, last = 0.0;
  for (std::size_t i = 0; i < quarter; ++i) first = std::max(first, norms[i]);
  for (std::size_t i = norms.size() - quarter; i < norms.size(); ++i)
    last = std::max(last, norms[i]);
  rep.first_quarter_max = first;
  rep.last_quarter_max = last;
  rep.transferred = last <= first;
  return rep;
}

Rat effective_delta_squared(const Rat& eps, int n_groups) {
  if (eps <= 0) throw Error(ErrorKind::BadSequence, "eps must be positive");
  if (n_groups < 1) throw Error(ErrorKind::BadDimension, "need at least one group");
  return eps / rat_of(2 * n_groups);
}

}  // namespace specsum
