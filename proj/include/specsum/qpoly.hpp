#pragma once

#include <vector>

#include "specsum/rational.hpp"

namespace specsum {

// Dense polynomial over the rationals, ascending powers.
// Invariant: coefficient list is empty (zero polynomial) or ends in a
// nonzero leading coefficient.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs);

  static QPoly constant(const Rat& c);
  static QPoly monomial(const Rat& coeff, std::size_t deg);

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& leading() const;
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat eval(const Rat& x) const;
  Rat eval_int(long long x) const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly scaled(const Rat& k) const;

  // Smallest integer J such that every real root is < J; the sign of
  // the polynomial is the sign of the leading coefficient from J on.
  long long root_free_from() const;

  // All integer roots in [1, root_free_from()), left to right.
  // Throws ScanBudgetExceeded if the scan range exceeds the budget.
  std::vector<long long> positive_int_roots(long long budget) const;

 private:
  std::vector<Rat> c_;
  void trim();
};

}  // namespace specsum
