#pragma once

#include <map>
#include <vector>

#include "specsum/strand.hpp"
#include "specsum/tolerances.hpp"

namespace specsum {

// Diagonal sequence organized in m arithmetic strands plus finitely
// many pointwise exceptions.  Strand r (0-based) covers the global
// indices k with (k-1) mod m = r; the local index is j = (k-1)/m + 1.
struct SymbolicSequence {
  long long m = 1;
  std::vector<StrandExpr> strands = {StrandExpr()};
  std::map<long long, Rat> exceptions;

  void validate() const;

  static SymbolicSequence constant(const Rat& c);

  long long strand_of(long long k) const { return (k - 1) % m; }
  long long local_j(long long k) const { return (k - 1) / m + 1; }
  long long global_k(long long r, long long j) const { return r + 1 + (j - 1) * m; }

  // Exact sign of s(k) - theta, honoring exceptions.
  int cmp_at(long long k, const Rat& theta) const;
  bool is_zero_at(long long k) const { return cmp_at(k, Rat(0)) == 0; }
  bool member_abs_le(long long k, const Rat& eps) const;

  bool identically_zero() const;
};

// Exact description of an index set: finitely many listed members plus
// whole strand tails.  Normal form: finite is sorted and disjoint from
// the tails, at most one tail per strand, and each tail starts as low
// as the finite members allow.
struct IndexSetDesc {
  struct Tail {
    long long strand;
    long long from_k;
    friend bool operator==(const Tail&, const Tail&) = default;
  };

  long long modulus = 1;
  std::vector<long long> finite;
  std::vector<Tail> tails;

  bool is_finite() const { return tails.empty(); }
  long long finite_count() const { return static_cast<long long>(finite.size()); }
  bool contains(long long k) const;
  void normalize();

  static IndexSetDesc empty(long long modulus);
  static IndexSetDesc all(long long modulus);

  friend bool operator==(const IndexSetDesc&, const IndexSetDesc&) = default;
};

IndexSetDesc set_difference(const IndexSetDesc& a, const IndexSetDesc& b);
IndexSetDesc set_intersection(const std::vector<IndexSetDesc>& sets);
IndexSetDesc set_complement(const IndexSetDesc& a);

// Count of an exactly-described set, with witnesses.
struct CountResult {
  bool finite = true;
  long long count = 0;
  std::vector<long long> witnesses;  // members when finite
  long long modulus = 1;
  long long witness_strand = -1;  // a strand contained up to finitely many k
};

CountResult count_of(const IndexSetDesc& d);

// --- sequence calculus --------------------------------------------------

std::pair<SymbolicSequence, SymbolicSequence> refine_common(
    const SymbolicSequence& a, const SymbolicSequence& b);
// All sequences rewritten on the lcm of their moduli.
std::vector<SymbolicSequence> refine_all(const std::vector<SymbolicSequence>& seqs);

SymbolicSequence seq_add(const SymbolicSequence& a, const SymbolicSequence& b);
SymbolicSequence seq_mul(const SymbolicSequence& a, const SymbolicSequence& b);

// Sorted distinct limit points (one per strand, merged).
std::vector<Rat> seq_limit_points(const SymbolicSequence& s);
bool seq_tends_to_zero(const SymbolicSequence& s);

// Exact rational value at one index; Undecidable if irrational.
Rat seq_eval(const SymbolicSequence& s, long long k);
// Nearest-double value (exact when rational, else via a certified
// 128-bit enclosure).
double seq_eval_f(const SymbolicSequence& s, long long k);

// {k : |s(k)| <= eps} with eps >= 0 (eps = 0 means the zero set).
IndexSetDesc abs_le_set(const SymbolicSequence& s, const Rat& eps, long long budget);
IndexSetDesc zero_set_desc(const SymbolicSequence& s, long long budget);

CountResult seq_count_below(const SymbolicSequence& s, const Rat& eps,
                            long long budget = Settings{}.scan_budget);
CountResult seq_zero_set(const SymbolicSequence& s,
                         long long budget = Settings{}.scan_budget);

}  // namespace specsum
