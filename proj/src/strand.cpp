#include "specsum/strand.hpp"

#include <algorithm>
#include <map>

namespace specsum {

Rat Term::decay() const {
  Rat d(0);
  for (const auto& f : factors) d += f.e;
  return d;
}

static void validate_factor(const Factor& f) {
  if (f.e <= 0) throw Error(ErrorKind::BadSequence, "factor exponent must be positive");
  if (f.s < 1 || f.w < 0 || f.s - f.w < 1)
    throw Error(ErrorKind::BadSequence, "factor base not positive for all j >= 1");
}

static std::vector<Factor> normalize_factors(std::vector<Factor> fs) {
  std::map<std::pair<long long, long long>, Rat> acc;
  for (auto& f : fs) {
    validate_factor(f);
    acc[{f.s, f.w}] += f.e;
  }
  std::vector<Factor> out;
  for (auto& [base, e] : acc) {
    if (e == 0) continue;
    out.push_back(Factor{e, base.first, base.second});
  }
  return out;
}

static bool term_key_less(const Term& a, const Term& b) {
  Rat da = a.decay(), db = b.decay();
  if (da != db) return da < db;
  const auto& fa = a.factors;
  const auto& fb = b.factors;
  for (std::size_t i = 0; i < std::min(fa.size(), fb.size()); ++i) {
    if (fa[i].s != fb[i].s) return fa[i].s < fb[i].s;
    if (fa[i].w != fb[i].w) return fa[i].w < fb[i].w;
    if (fa[i].e != fb[i].e) return fa[i].e < fb[i].e;
  }
  return fa.size() < fb.size();
}

static bool same_factors(const Term& a, const Term& b) {
  return a.factors == b.factors;
}

StrandExpr StrandExpr::from_terms(std::vector<Term> terms) {
  for (auto& t : terms) t.factors = normalize_factors(std::move(t.factors));
  std::sort(terms.begin(), terms.end(), term_key_less);
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (!merged.empty() && same_factors(merged.back(), t)) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  StrandExpr e;
  e.terms_ = std::move(merged);
  return e;
}

StrandExpr StrandExpr::constant(const Rat& c) {
  if (c == 0) return StrandExpr();
  return from_terms({Term{c, {}}});
}

StrandExpr StrandExpr::power_term(const Rat& c, const Rat& e) {
  if (e < 0) throw Error(ErrorKind::BadSequence, "exponent must be >= 0");
  if (e == 0 || c == 0) return constant(c);
  return from_terms({Term{c, {Factor{e, 1, 0}}}});
}

Rat StrandExpr::limit() const {
  if (!terms_.empty() && terms_.front().is_const()) return terms_.front().coeff;
  return Rat(0);
}

bool StrandExpr::integer_exponents() const {
  for (const auto& t : terms_)
    for (const auto& f : t.factors)
      if (f.e.get_den() != 1) return false;
  return true;
}

std::optional<std::pair<long long, long long>> StrandExpr::single_base() const {
  std::optional<std::pair<long long, long long>> base;
  for (const auto& t : terms_)
    for (const auto& f : t.factors) {
      std::pair<long long, long long> b{f.s, f.w};
      if (!base) base = b;
      else if (*base != b) return std::nullopt;
    }
  return base;
}

StrandExpr StrandExpr::plus(const StrandExpr& o) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return from_terms(std::move(all));
}

StrandExpr StrandExpr::times(const StrandExpr& o) const {
  std::vector<Term> prod;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Term t{a.coeff * b.coeff, a.factors};
      t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
      prod.push_back(std::move(t));
    }
  return from_terms(std::move(prod));
}

StrandExpr StrandExpr::negated() const {
  std::vector<Term> ts = terms_;
  for (auto& t : ts) t.coeff = -t.coeff;
  StrandExpr e;
  e.terms_ = std::move(ts);
  return e;
}

StrandExpr StrandExpr::reindexed(long long step, long long offset) const {
  if (step < 1 || offset < 1 || offset > step)
    throw Error(ErrorKind::BadSequence, "bad reindex parameters");
  // Old local index j = step*J - w0 at new local index J.
  long long w0 = step - offset;
  std::vector<Term> ts = terms_;
  for (auto& t : ts)
    for (auto& f : t.factors) {
      // s*(step*J - w0) - w = (s*step)*J - (s*w0 + w).
      f.w = f.s * w0 + f.w;
      f.s = f.s * step;
    }
  return from_terms(std::move(ts));
}

std::string StrandExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    std::string piece = rat_str(t.coeff);
    for (const auto& f : t.factors) {
      std::string base = "j";
      if (f.s != 1 || f.w != 0) {
        base = "(" + std::to_string(f.s) + "*j";
        if (f.w != 0) base += "-" + std::to_string(f.w);
        base += ")";
      }
      piece += "*" + base + "^-" + rat_str(f.e);
    }
    if (i == 0) {
      out = piece;
    } else if (t.coeff > 0) {
      out += " + " + piece;
    } else {
      // Re-render with the sign pulled out.
      Term neg = t;
      neg.coeff = -neg.coeff;
      std::string p = rat_str(neg.coeff);
      for (const auto& f : neg.factors) {
        std::string base = "j";
        if (f.s != 1 || f.w != 0) {
          base = "(" + std::to_string(f.s) + "*j";
          if (f.w != 0) base += "-" + std::to_string(f.w);
          base += ")";
        }
        p += "*" + base + "^-" + rat_str(f.e);
      }
      out += " - " + p;
    }
  }
  return out;
}

}  // namespace specsum
