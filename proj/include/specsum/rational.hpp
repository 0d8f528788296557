#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

#include "specsum/errors.hpp"

namespace specsum {

using Rat = mpq_class;
using Int = mpz_class;

inline Int int_of(long long n) { return Int(static_cast<long>(n)); }

inline Rat rat_of(long long n) { return Rat(static_cast<long>(n)); }

inline Rat rat_of(long long num, long long den) {
  if (den == 0) throw Error(ErrorKind::BadSequence, "zero denominator");
  Rat r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

// Canonical text form: reduced "p/q" with q > 0, bare "p" for integers.
std::string rat_str(const Rat& r);

// Inverse of rat_str; accepts any "p" or "p/q" with optional leading
// sign on p.  Throws ParseError on anything else.
Rat parse_rat(const std::string& text);

Rat rat_pow(const Rat& base, long exp);

inline int rat_sign(const Rat& r) { return sgn(r); }

inline Rat rat_abs(const Rat& r) { return abs(r); }

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// Floor q-th root paired with exactness, z >= 0.
std::pair<Int, bool> floor_root(const Int& z, unsigned long q);

// B^(1/q) when it is rational, for B > 0.
std::optional<Rat> exact_root_rat(const Rat& b, unsigned long q);

// Reduces B^(1/q) to C^(1/q2) with the largest divisor d of q such
// that B is an exact d-th power (C = B^(1/d), q2 = q/d).  For B > 0
// the result has x^q2 - C irreducible, so it is a minimal polynomial.
std::pair<Rat, unsigned long> radical_reduce(const Rat& b, unsigned long q);

// Certified enclosure lo <= B^(1/q) <= hi with hi - lo <= 2^(1-prec),
// for B > 0.
std::pair<Rat, Rat> root_interval(const Rat& b, unsigned long q, unsigned long prec);

// Complex number with exact rational parts.
struct RatC {
  Rat re;
  Rat im;

  RatC() : re(0), im(0) {}
  RatC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  explicit RatC(long long r) : re(rat_of(r)), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  RatC conj() const { return RatC(re, -im); }

  friend RatC operator+(const RatC& a, const RatC& b) {
    return RatC(a.re + b.re, a.im + b.im);
  }
  friend RatC operator-(const RatC& a, const RatC& b) {
    return RatC(a.re - b.re, a.im - b.im);
  }
  friend RatC operator*(const RatC& a, const RatC& b) {
    return RatC(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend bool operator==(const RatC& a, const RatC& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string ratc_str(const RatC& z);

}  // namespace specsum
