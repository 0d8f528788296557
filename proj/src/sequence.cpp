#include "specsum/sequence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace specsum {

void SymbolicSequence::validate() const {
  if (m < 1) throw Error(ErrorKind::BadSequence, "modulus must be >= 1");
  if (static_cast<long long>(strands.size()) != m)
    throw Error(ErrorKind::BadSequence, "strand count must equal modulus");
  for (const auto& [k, v] : exceptions) {
    (void)v;
    if (k < 1) throw Error(ErrorKind::BadSequence, "exception index must be >= 1");
  }
}

SymbolicSequence SymbolicSequence::constant(const Rat& c) {
  SymbolicSequence s;
  s.m = 1;
  s.strands = {StrandExpr::constant(c)};
  return s;
}

int SymbolicSequence::cmp_at(long long k, const Rat& theta) const {
  if (k < 1) throw Error(ErrorKind::BadSequence, "index must be >= 1");
  auto it = exceptions.find(k);
  if (it != exceptions.end()) return rat_sign(it->second - theta);
  return value_cmp(strands[strand_of(k)], local_j(k), theta);
}

bool SymbolicSequence::member_abs_le(long long k, const Rat& eps) const {
  return cmp_at(k, eps) <= 0 && cmp_at(k, -eps) >= 0;
}

bool SymbolicSequence::identically_zero() const {
  for (const auto& s : strands)
    if (!s.is_zero()) return false;
  for (const auto& [k, v] : exceptions) {
    (void)k;
    if (v != 0) return false;
  }
  return true;
}

// --- IndexSetDesc --------------------------------------------------------

bool IndexSetDesc::contains(long long k) const {
  for (const auto& t : tails)
    if ((k - 1) % modulus == t.strand && k >= t.from_k) return true;
  return std::binary_search(finite.begin(), finite.end(), k);
}

void IndexSetDesc::normalize() {
  std::sort(finite.begin(), finite.end());
  finite.erase(std::unique(finite.begin(), finite.end()), finite.end());
  std::sort(tails.begin(), tails.end(),
            [](const Tail& a, const Tail& b) { return a.strand < b.strand; });
  // Absorb finite members sitting just below (or inside) a tail.
  for (auto& t : tails) {
    bool changed = true;
    while (changed) {
      changed = false;
      auto it = std::find(finite.begin(), finite.end(), t.from_k - modulus);
      if (it != finite.end()) {
        t.from_k -= modulus;
        finite.erase(it);
        changed = true;
      }
    }
    std::erase_if(finite, [&](long long k) {
      return (k - 1) % modulus == t.strand && k >= t.from_k;
    });
  }
}

IndexSetDesc IndexSetDesc::empty(long long modulus) {
  IndexSetDesc d;
  d.modulus = modulus;
  return d;
}

IndexSetDesc IndexSetDesc::all(long long modulus) {
  IndexSetDesc d;
  d.modulus = modulus;
  for (long long r = 0; r < modulus; ++r) d.tails.push_back({r, r + 1});
  return d;
}

namespace {

const IndexSetDesc::Tail* tail_on(const IndexSetDesc& d, long long r) {
  for (const auto& t : d.tails)
    if (t.strand == r) return &t;
  return nullptr;
}

std::vector<long long> finite_on(const IndexSetDesc& d, long long r) {
  std::vector<long long> out;
  for (long long k : d.finite)
    if ((k - 1) % d.modulus == r) out.push_back(k);
  return out;
}

void check_same_modulus(const IndexSetDesc& a, const IndexSetDesc& b) {
  if (a.modulus != b.modulus)
    throw Error(ErrorKind::BadSequence, "index sets live on different moduli");
}

}  // namespace

IndexSetDesc set_difference(const IndexSetDesc& a, const IndexSetDesc& b) {
  check_same_modulus(a, b);
  IndexSetDesc out;
  out.modulus = a.modulus;
  long long m = a.modulus;
  for (long long r = 0; r < m; ++r) {
    const auto* ta = tail_on(a, r);
    const auto* tb = tail_on(b, r);
    for (long long k : finite_on(a, r))
      if (!b.contains(k)) out.finite.push_back(k);
    if (ta == nullptr) continue;
    if (tb == nullptr) {
      // Tail survives; push its start past b's finite holes.
      long long from = ta->from_k;
      long long hole_max = 0;
      for (long long k : finite_on(b, r)) hole_max = std::max(hole_max, k);
      long long new_from = std::max(from, hole_max + 1);
      // Align to the strand.
      while ((new_from - 1) % m != r) ++new_from;
      for (long long k = from; k < new_from; k += m)
        if (!b.contains(k)) out.finite.push_back(k);
      out.tails.push_back({r, new_from});
    } else {
      for (long long k = ta->from_k; k < tb->from_k; k += m)
        if (!b.contains(k)) out.finite.push_back(k);
    }
  }
  out.normalize();
  return out;
}

IndexSetDesc set_intersection(const std::vector<IndexSetDesc>& sets) {
  if (sets.empty()) throw Error(ErrorKind::BadSequence, "empty intersection");
  for (const auto& s : sets) check_same_modulus(sets.front(), s);
  long long m = sets.front().modulus;
  IndexSetDesc out;
  out.modulus = m;
  for (long long r = 0; r < m; ++r) {
    bool all_tails = true;
    long long from = r + 1;
    for (const auto& s : sets) {
      const auto* t = tail_on(s, r);
      if (t == nullptr) {
        all_tails = false;
      } else {
        from = std::max(from, t->from_k);
      }
    }
    if (all_tails) {
      out.tails.push_back({r, from});
      for (long long k = r + 1; k < from; k += m) {
        bool in_all = std::all_of(sets.begin(), sets.end(),
                                  [&](const IndexSetDesc& s) { return s.contains(k); });
        if (in_all) out.finite.push_back(k);
      }
    } else {
      // Candidates are limited to some set's finite members.
      std::set<long long> cands;
      for (const auto& s : sets)
        if (tail_on(s, r) == nullptr)
          for (long long k : finite_on(s, r)) cands.insert(k);
      for (long long k : cands) {
        bool in_all = std::all_of(sets.begin(), sets.end(),
                                  [&](const IndexSetDesc& s) { return s.contains(k); });
        if (in_all) out.finite.push_back(k);
      }
    }
  }
  out.normalize();
  return out;
}

IndexSetDesc set_complement(const IndexSetDesc& a) {
  return set_difference(IndexSetDesc::all(a.modulus), a);
}

CountResult count_of(const IndexSetDesc& d) {
  CountResult r;
  r.modulus = d.modulus;
  if (d.is_finite()) {
    r.finite = true;
    r.count = d.finite_count();
    r.witnesses = d.finite;
  } else {
    r.finite = false;
    r.witness_strand = d.tails.front().strand;
  }
  return r;
}

// --- refinement and arithmetic -------------------------------------------

namespace {

SymbolicSequence refine_to(const SymbolicSequence& s, long long big_m) {
  if (big_m % s.m != 0)
    throw Error(ErrorKind::BadSequence, "refinement modulus must be a multiple");
  if (big_m == s.m) return s;
  long long step = big_m / s.m;
  SymbolicSequence out;
  out.m = big_m;
  out.strands.clear();
  for (long long r2 = 0; r2 < big_m; ++r2) {
    long long r = r2 % s.m;
    long long offset = r2 / s.m + 1;
    out.strands.push_back(s.strands[r].reindexed(step, offset));
  }
  out.exceptions = s.exceptions;
  return out;
}

Rat rational_value_at(const SymbolicSequence& s, long long k) {
  auto it = s.exceptions.find(k);
  if (it != s.exceptions.end()) return it->second;
  auto v = eval_exact(s.strands[s.strand_of(k)], s.local_j(k));
  if (!v)
    throw Error(ErrorKind::Undecidable,
                "value at index " + std::to_string(k) + " is irrational");
  return *v;
}

SymbolicSequence combine(const SymbolicSequence& a, const SymbolicSequence& b,
                         bool multiply) {
  auto [ra, rb] = refine_common(a, b);
  SymbolicSequence out;
  out.m = ra.m;
  out.strands.clear();
  for (long long r = 0; r < ra.m; ++r)
    out.strands.push_back(multiply ? ra.strands[r].times(rb.strands[r])
                                   : ra.strands[r].plus(rb.strands[r]));
  std::set<long long> keys;
  for (const auto& [k, v] : a.exceptions) {
    (void)v;
    keys.insert(k);
  }
  for (const auto& [k, v] : b.exceptions) {
    (void)v;
    keys.insert(k);
  }
  for (long long k : keys) {
    Rat va = rational_value_at(a, k), vb = rational_value_at(b, k);
    out.exceptions[k] = multiply ? Rat(va * vb) : Rat(va + vb);
  }
  return out;
}

}  // namespace

std::pair<SymbolicSequence, SymbolicSequence> refine_common(
    const SymbolicSequence& a, const SymbolicSequence& b) {
  long long m = std::lcm(a.m, b.m);
  return {refine_to(a, m), refine_to(b, m)};
}

std::vector<SymbolicSequence> refine_all(const std::vector<SymbolicSequence>& seqs) {
  if (seqs.empty()) return {};
  long long m = 1;
  for (const auto& s : seqs) m = std::lcm(m, s.m);
  std::vector<SymbolicSequence> out;
  out.reserve(seqs.size());
  for (const auto& s : seqs) out.push_back(refine_to(s, m));
  return out;
}

SymbolicSequence seq_add(const SymbolicSequence& a, const SymbolicSequence& b) {
  return combine(a, b, false);
}

SymbolicSequence seq_mul(const SymbolicSequence& a, const SymbolicSequence& b) {
  return combine(a, b, true);
}

std::vector<Rat> seq_limit_points(const SymbolicSequence& s) {
  std::set<Rat> lims;
  for (const auto& st : s.strands) lims.insert(st.limit());
  return {lims.begin(), lims.end()};
}

bool seq_tends_to_zero(const SymbolicSequence& s) {
  for (const auto& st : s.strands)
    if (st.limit() != 0) return false;
  return true;
}

Rat seq_eval(const SymbolicSequence& s, long long k) {
  if (k < 1) throw Error(ErrorKind::BadSequence, "index must be >= 1");
  return rational_value_at(s, k);
}

double seq_eval_f(const SymbolicSequence& s, long long k) {
  if (k < 1) throw Error(ErrorKind::BadSequence, "index must be >= 1");
  auto it = s.exceptions.find(k);
  if (it != s.exceptions.end()) return rat_to_double(it->second);
  const StrandExpr& st = s.strands[s.strand_of(k)];
  long long j = s.local_j(k);
  if (auto v = eval_exact(st, j)) return rat_to_double(*v);
  auto [lo, hi] = eval_interval(st, j, 128);
  return rat_to_double((lo + hi) / 2);
}

IndexSetDesc abs_le_set(const SymbolicSequence& s, const Rat& eps, long long budget) {
  if (eps < 0) throw Error(ErrorKind::BadSequence, "threshold must be >= 0");
  if (eps == 0) return zero_set_desc(s, budget);
  s.validate();
  IndexSetDesc out;
  out.modulus = s.m;
  // Local exception indexes grouped per strand.
  std::vector<long long> exc_max_j(s.m, 0);
  for (const auto& [k, v] : s.exceptions) {
    (void)v;
    exc_max_j[s.strand_of(k)] = std::max(exc_max_j[s.strand_of(k)], s.local_j(k));
  }
  for (long long r = 0; r < s.m; ++r) {
    AbsLeStatus st = abs_le_status(s.strands[r], eps);
    long long scan_to = std::max(st.settle_j, exc_max_j[r] + 1);
    if (scan_to > budget)
      throw Error(ErrorKind::ScanBudgetExceeded, "membership scan exceeds budget");
    for (long long j = 1; j < scan_to; ++j) {
      long long k = s.global_k(r, j);
      if (s.member_abs_le(k, eps)) out.finite.push_back(k);
    }
    if (st.eventually_in) out.tails.push_back({r, s.global_k(r, scan_to)});
  }
  out.normalize();
  return out;
}

IndexSetDesc zero_set_desc(const SymbolicSequence& s, long long budget) {
  s.validate();
  IndexSetDesc out;
  out.modulus = s.m;
  std::vector<long long> exc_max_j(s.m, 0);
  for (const auto& [k, v] : s.exceptions) {
    (void)v;
    exc_max_j[s.strand_of(k)] = std::max(exc_max_j[s.strand_of(k)], s.local_j(k));
  }
  for (long long r = 0; r < s.m; ++r) {
    const StrandExpr& st = s.strands[r];
    if (st.is_zero()) {
      long long scan_to = exc_max_j[r] + 1;
      for (long long j = 1; j < scan_to; ++j) {
        long long k = s.global_k(r, j);
        if (s.is_zero_at(k)) out.finite.push_back(k);
      }
      out.tails.push_back({r, s.global_k(r, scan_to)});
      continue;
    }
    std::vector<long long> zj = zero_js(st, budget);
    std::set<long long> cand(zj.begin(), zj.end());
    for (long long j = 1; j <= exc_max_j[r]; ++j) cand.insert(j);
    for (long long j : cand) {
      long long k = s.global_k(r, j);
      if (s.is_zero_at(k)) out.finite.push_back(k);
    }
  }
  out.normalize();
  return out;
}

CountResult seq_count_below(const SymbolicSequence& s, const Rat& eps, long long budget) {
  return count_of(abs_le_set(s, eps, budget));
}

CountResult seq_zero_set(const SymbolicSequence& s, long long budget) {
  return count_of(zero_set_desc(s, budget));
}

}  // namespace specsum
