#include "specsum/rational.hpp"

#include <cctype>

namespace specsum {

std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

static bool all_digits(const std::string& s, size_t from, size_t to) {
  if (from >= to) return false;
  for (size_t i = from; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Rat parse_rat(const std::string& text) {
  size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  size_t slash = text.find('/');
  bool ok;
  if (slash == std::string::npos) {
    ok = all_digits(text, i, text.size());
  } else {
    ok = all_digits(text, i, slash) && all_digits(text, slash + 1, text.size());
  }
  if (!ok) throw Error(ErrorKind::ParseError, "bad rational literal '" + text + "'");
  Rat r;
  // mpq set_str takes a bare or '-'-signed literal; drop an explicit '+'.
  const std::string& plain = text[0] == '+' ? text.substr(1) : text;
  if (r.set_str(plain, 10) != 0 || r.get_den() == 0)
    throw Error(ErrorKind::ParseError, "bad rational literal '" + text + "'");
  r.canonicalize();
  return r;
}

Rat rat_pow(const Rat& base, long exp) {
  if (exp == 0) return Rat(1);
  bool neg = exp < 0;
  unsigned long e = neg ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
  if (neg && base == 0) throw Error(ErrorKind::BadSequence, "0 to a negative power");
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
  Rat r = neg ? Rat(den, num) : Rat(num, den);
  r.canonicalize();
  return r;
}

std::pair<Int, bool> floor_root(const Int& z, unsigned long q) {
  Int r;
  int exact = mpz_root(r.get_mpz_t(), z.get_mpz_t(), q);
  return {r, exact != 0};
}

std::optional<Rat> exact_root_rat(const Rat& b, unsigned long q) {
  if (b <= 0) return std::nullopt;
  auto [rn, en] = floor_root(b.get_num(), q);
  if (!en) return std::nullopt;
  auto [rd, ed] = floor_root(b.get_den(), q);
  if (!ed) return std::nullopt;
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

std::pair<Rat, unsigned long> radical_reduce(const Rat& b, unsigned long q) {
  for (unsigned long d = q; d >= 2; --d) {
    if (q % d != 0) continue;
    if (auto r = exact_root_rat(b, d)) return {*r, q / d};
  }
  return {b, q};
}

std::pair<Rat, Rat> root_interval(const Rat& b, unsigned long q, unsigned long prec) {
  // Scale so the root lands among integers: B^(1/q) * 2^prec =
  // (num * 2^(prec*q) / den)^(1/q).
  Int scaled_num;
  mpz_mul_2exp(scaled_num.get_mpz_t(), b.get_num().get_mpz_t(), prec * q);
  Int n, rem;
  mpz_fdiv_qr(n.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(),
              b.get_den().get_mpz_t());
  auto [lo, exact] = floor_root(n, q);
  Int hi = (exact && rem == 0) ? lo : lo + 1;
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, prec);
  Rat rlo(lo, scale), rhi(hi, scale);
  rlo.canonicalize();
  rhi.canonicalize();
  return {rlo, rhi};
}

std::string ratc_str(const RatC& z) {
  if (z.im == 0) return rat_str(z.re);
  std::string s = rat_str(z.re);
  if (z.im > 0) s += "+";
  return s + rat_str(z.im) + "i";
}

}  // namespace specsum
