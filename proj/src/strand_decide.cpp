#include <algorithm>
#include <map>
#include <numeric>

#include "specsum/strand.hpp"

namespace specsum {

namespace {

struct Iv {
  Rat lo, hi;
};

Iv iv_point(const Rat& r) { return {r, r}; }

Iv iv_add(const Iv& a, const Iv& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Iv iv_mul(const Iv& a, const Iv& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

int iv_sign(const Iv& a) {
  if (a.lo > 0) return 1;
  if (a.hi < 0) return -1;
  return 0;  // undetermined
}

Int factor_base_at(const Factor& f, long long j) {
  return int_of(f.s) * int_of(j) - int_of(f.w);
}

// Exponent e = a/q in lowest terms as machine integers.
std::pair<long, unsigned long> exp_parts(const Rat& e) {
  if (!e.get_num().fits_slong_p() || !e.get_den().fits_slong_p())
    throw Error(ErrorKind::BadSequence, "exponent too large");
  return {e.get_num().get_si(), static_cast<unsigned long>(e.get_den().get_si())};
}

// Interval for base^(-e), base a positive integer.
Iv factor_interval(const Int& base, const Rat& e, unsigned long prec) {
  auto [a, q] = exp_parts(e);
  if (q == 1) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(a));
    Rat v(1, p);
    v.canonicalize();
    return iv_point(v);
  }
  Int pa;
  mpz_pow_ui(pa.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(a));
  // base^(a/q) enclosed, then inverted; base >= 1 keeps lo >= 1.
  auto [lo, hi] = root_interval(Rat(pa), q, prec);
  return {Rat(1) / hi, Rat(1) / lo};
}

Iv expr_interval(const StrandExpr& v, long long j, unsigned long prec) {
  Iv acc = iv_point(Rat(0));
  for (const auto& t : v.terms()) {
    Iv term = iv_point(t.coeff);
    for (const auto& f : t.factors)
      term = iv_mul(term, factor_interval(factor_base_at(f, j), f.e, prec));
    acc = iv_add(acc, term);
  }
  return acc;
}

// Numerator polynomial of v - theta over the common denominator
// prod (s x - w)^Emax, valid when all exponents are integral.  The
// denominator is positive for every x >= 1, so signs agree.
QPoly numerator_poly(const StrandExpr& v, const Rat& theta) {
  std::map<std::pair<long long, long long>, long> emax;
  for (const auto& t : v.terms())
    for (const auto& f : t.factors) {
      auto [a, q] = exp_parts(f.e);
      if (q != 1) throw Error(ErrorKind::BadSequence, "fractional exponent in polynomial route");
      auto key = std::make_pair(f.s, f.w);
      emax[key] = std::max(emax[key], a);
    }
  auto base_pow = [](long long s, long long w, long k) {
    QPoly p = QPoly::constant(Rat(1));
    QPoly base(std::vector<Rat>{rat_of(-w), rat_of(s)});
    for (long i = 0; i < k; ++i) p = p * base;
    return p;
  };
  QPoly den = QPoly::constant(Rat(1));
  for (const auto& [key, e] : emax) den = den * base_pow(key.first, key.second, e);
  QPoly num;
  for (const auto& t : v.terms()) {
    QPoly piece = QPoly::constant(t.coeff);
    std::map<std::pair<long long, long long>, long> used;
    for (const auto& f : t.factors) {
      auto [a, q] = exp_parts(f.e);
      (void)q;
      used[{f.s, f.w}] += a;
    }
    for (const auto& [key, e] : emax)
      piece = piece * base_pow(key.first, key.second, e - used[key]);
    num = num + piece;
  }
  return num - den.scaled(theta);
}

unsigned long exponent_lcm(const StrandExpr& v) {
  unsigned long q = 1;
  for (const auto& t : v.terms())
    for (const auto& f : t.factors) {
      auto [a, den] = exp_parts(f.e);
      (void)a;
      q = std::lcm(q, den);
    }
  return q;
}

// Polynomial g with v(j) - theta = g(x_j), x_j = (s*j - w)^(1/q), for a
// single-base strand with exponent denominators dividing q.
QPoly substituted_poly(const StrandExpr& v, const Rat& theta, unsigned long q) {
  long amax = 0;
  std::vector<std::pair<Rat, long>> flat;  // (coeff, A) with value c * x^-A
  for (const auto& t : v.terms()) {
    long a_total = 0;
    for (const auto& f : t.factors) {
      auto [a, den] = exp_parts(f.e);
      a_total += a * static_cast<long>(q / den);
    }
    amax = std::max(amax, a_total);
    flat.emplace_back(t.coeff, a_total);
  }
  std::vector<Rat> coeffs(static_cast<std::size_t>(amax) + 1, Rat(0));
  for (const auto& [c, a] : flat) coeffs[static_cast<std::size_t>(amax - a)] += c;
  coeffs[static_cast<std::size_t>(amax)] -= theta;
  return QPoly(std::move(coeffs));
}

long long ceil_div_to_ll(const Int& num, long long den) {
  Int q;
  Int d = int_of(den);
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
  if (!q.fits_slong_p())
    throw Error(ErrorKind::ScanBudgetExceeded, "settle index too large");
  return std::max(1LL, static_cast<long long>(q.get_si()));
}

// Upper bound on sum of |nonconstant terms| for all j >= j0.
Rat tail_bound(const StrandExpr& v, long long j0) {
  Rat bound(0);
  for (const auto& t : v.terms()) {
    if (t.is_const()) continue;
    Rat piece = rat_abs(t.coeff);
    for (const auto& f : t.factors) {
      auto [a, q] = exp_parts(f.e);
      Int base = factor_base_at(f, j0);
      Int pa;
      mpz_pow_ui(pa.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(a));
      auto [lb, exact] = floor_root(pa, q);
      (void)exact;
      piece *= Rat(1, lb);  // base^e >= lb >= 1
    }
    bound += piece;
  }
  return bound;
}

}  // namespace

std::optional<Rat> eval_exact(const StrandExpr& v, long long j) {
  if (j < 1) throw Error(ErrorKind::BadSequence, "local index must be >= 1");
  Rat acc(0);
  for (const auto& t : v.terms()) {
    Rat val = t.coeff;
    for (const auto& f : t.factors) {
      auto [a, q] = exp_parts(f.e);
      Int base = factor_base_at(f, j);
      if (q == 1) {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(a));
        Rat d(1, p);
        d.canonicalize();
        val *= d;
      } else {
        auto root = exact_root_rat(Rat(base), q);
        if (!root) return std::nullopt;
        val *= rat_pow(*root, -a);
      }
    }
    acc += val;
  }
  return acc;
}

std::pair<Rat, Rat> eval_interval(const StrandExpr& v, long long j, unsigned long prec) {
  Iv iv = expr_interval(v, j, prec);
  return {iv.lo, iv.hi};
}

int value_cmp(const StrandExpr& v, long long j, const Rat& theta) {
  if (auto exact = eval_exact(v, j)) return rat_sign(*exact - theta);

  // Reduce each term to coeff * alpha^p for radicals alpha = C^(1/q2)
  // with minimal polynomial x^q2 - C.
  using RadKey = std::pair<Rat, unsigned long>;
  std::map<RadKey, std::map<long, Rat>> by_radical;  // radical -> power -> coeff
  Rat rational_part(-theta);
  bool multi = false;
  for (const auto& t : v.terms()) {
    Rat coef = t.coeff;
    std::map<RadKey, long> pows;
    for (const auto& f : t.factors) {
      auto [a, q] = exp_parts(f.e);
      Int base = factor_base_at(f, j);
      if (q == 1) {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(a));
        Rat d(1, p);
        d.canonicalize();
        coef *= d;
        continue;
      }
      auto [c, q2] = radical_reduce(Rat(base), q);
      if (q2 == 1) {
        coef *= rat_pow(c, -a);
        continue;
      }
      long i = a / static_cast<long>(q2);
      long r = a % static_cast<long>(q2);
      coef *= rat_pow(c, -i);
      if (r != 0) {
        // alpha^-r = alpha^(q2 - r) / C.
        coef /= c;
        pows[{c, q2}] += static_cast<long>(q2) - r;
      }
    }
    // Fold powers past q2 back into the coefficient.
    RadKey active{Rat(0), 0};
    long active_pow = 0;
    for (auto& [key, p] : pows) {
      long folded = p % static_cast<long>(key.second);
      coef *= rat_pow(key.first, p / static_cast<long>(key.second));
      if (folded == 0) continue;
      if (active.second != 0) multi = true;
      active = key;
      active_pow = folded;
    }
    if (active.second == 0) {
      rational_part += coef;
    } else {
      by_radical[active][active_pow] += coef;
    }
  }

  if (!multi && by_radical.size() <= 1) {
    if (by_radical.empty()) return rat_sign(rational_part);
    const auto& [key, powmap] = *by_radical.begin();
    std::vector<Rat> coeffs(key.second, Rat(0));
    coeffs[0] = rational_part;
    bool nonzero = rational_part != 0;
    for (const auto& [p, c] : powmap) {
      coeffs[static_cast<std::size_t>(p)] += c;
      if (coeffs[static_cast<std::size_t>(p)] != 0) nonzero = true;
    }
    QPoly h{std::move(coeffs)};
    if (h.is_zero()) return 0;
    (void)nonzero;
    // h(alpha) != 0 because deg h < q2 and x^q2 - C is minimal, so
    // refinement terminates.
    for (unsigned long prec = 64; prec <= (1UL << 20); prec *= 2) {
      auto [lo, hi] = root_interval(key.first, key.second, prec);
      Iv x{lo, hi};
      Iv acc = iv_point(Rat(0));
      for (int d = h.degree(); d >= 0; --d)
        acc = iv_add(iv_mul(acc, x), iv_point(h.coeffs()[static_cast<std::size_t>(d)]));
      int s = iv_sign(acc);
      if (s != 0) return s;
    }
    throw Error(ErrorKind::Undecidable, "radical refinement failed to resolve sign");
  }

  // Several independent radicals: certified refinement decides strict
  // comparisons; exact ties are not representable here.
  for (unsigned long prec = 64; prec <= 4096; prec *= 2) {
    Iv iv = expr_interval(v, j, prec);
    iv = iv_add(iv, iv_point(-theta));
    int s = iv_sign(iv);
    if (s != 0) return s;
  }
  throw Error(ErrorKind::Undecidable, "comparison involves several radicals");
}

SignBeyond sign_beyond(const StrandExpr& v, const Rat& theta) {
  if (v.integer_exponents()) {
    QPoly p = numerator_poly(v, theta);
    if (p.is_zero()) return {0, 1};
    return {rat_sign(p.leading()), std::max(1LL, p.root_free_from())};
  }
  if (auto base = v.single_base()) {
    unsigned long q = exponent_lcm(v);
    QPoly g = substituted_poly(v, theta, q);
    if (g.is_zero()) return {0, 1};
    long long jx = g.root_free_from();
    Int t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(jx), q);
    t += int_of(base->second);
    return {rat_sign(g.leading()), ceil_div_to_ll(t, base->first)};
  }
  // Mixed fractional bases: decide through the limit when it separates.
  Rat gap = v.limit() - theta;
  if (gap == 0)
    throw Error(ErrorKind::Undecidable,
                "mixed radical bases with vanishing limit difference");
  Rat target = rat_abs(gap);
  long long j0 = 1;
  for (int iter = 0; iter < 200; ++iter) {
    if (tail_bound(v, j0) < target) return {rat_sign(gap), j0};
    if (j0 > (1LL << 60))
      break;
    j0 *= 2;
  }
  throw Error(ErrorKind::Undecidable, "tail bound failed to settle");
}

AbsLeStatus abs_le_status(const StrandExpr& v, const Rat& eps) {
  if (eps <= 0) throw Error(ErrorKind::BadSequence, "threshold must be positive");
  SignBeyond above = sign_beyond(v, eps);
  SignBeyond below = sign_beyond(v, -eps);
  return {above.sign <= 0 && below.sign >= 0,
          std::max(above.from_j, below.from_j)};
}

std::vector<long long> zero_js(const StrandExpr& v, long long budget) {
  if (v.is_zero())
    throw Error(ErrorKind::BadSequence, "zero set of the zero strand is infinite");
  if (v.integer_exponents()) {
    QPoly p = numerator_poly(v, Rat(0));
    return p.positive_int_roots(budget);
  }
  SignBeyond sb = sign_beyond(v, Rat(0));
  long long stop = sb.from_j;
  if (sb.sign == 0)
    throw Error(ErrorKind::Undecidable, "strand is eventually zero but not the zero strand");
  if (stop - 1 > budget)
    throw Error(ErrorKind::ScanBudgetExceeded, "zero scan exceeds budget");
  std::vector<long long> out;
  for (long long j = 1; j < stop; ++j)
    if (value_cmp(v, j, Rat(0)) == 0) out.push_back(j);
  return out;
}

}  // namespace specsum
