#include "specsum/qpoly.hpp"

#include <algorithm>

namespace specsum {

QPoly::QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::constant(const Rat& c) { return QPoly(std::vector<Rat>{c}); }

QPoly QPoly::monomial(const Rat& coeff, std::size_t deg) {
  std::vector<Rat> v(deg + 1, Rat(0));
  v[deg] = coeff;
  return QPoly(std::move(v));
}

const Rat& QPoly::leading() const {
  if (c_.empty()) throw Error(ErrorKind::BadSequence, "leading of zero polynomial");
  return c_.back();
}

Rat QPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rat QPoly::eval_int(long long x) const {
  Rat acc(0);
  Rat rx = rat_of(x);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * rx + *it;
  return acc;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return QPoly(std::move(v));
}

QPoly QPoly::scaled(const Rat& k) const {
  if (k == 0) return QPoly();
  std::vector<Rat> v = c_;
  for (auto& x : v) x *= k;
  return QPoly(std::move(v));
}

long long QPoly::root_free_from() const {
  if (c_.empty() || c_.size() == 1) return 1;
  // Cauchy bound: all roots lie in |x| <= 1 + max |c_i / c_d|.
  Rat m(0);
  for (std::size_t i = 0; i + 1 < c_.size(); ++i)
    m = std::max(m, rat_abs(c_[i] / c_.back()));
  Rat bound = m + 1;
  Int fl = bound.get_num() / bound.get_den();
  if (!fl.fits_slong_p())
    throw Error(ErrorKind::ScanBudgetExceeded, "root bound too large");
  return fl.get_si() + 1;
}

std::vector<long long> QPoly::positive_int_roots(long long budget) const {
  if (is_zero())
    throw Error(ErrorKind::BadSequence, "root scan of zero polynomial");
  long long stop = root_free_from();
  if (stop - 1 > budget)
    throw Error(ErrorKind::ScanBudgetExceeded, "root scan exceeds budget");
  std::vector<long long> roots;
  for (long long j = 1; j < stop; ++j)
    if (eval_int(j) == 0) roots.push_back(j);
  return roots;
}

}  // namespace specsum
