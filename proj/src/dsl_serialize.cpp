#include "specsum/dsl/serialize.hpp"

#include <sstream>

namespace specsum::dsl {

namespace {

// c or c*j^-e with e > 0; re-indexed factors have no source form.
std::string term_str(const Term& t) {
  if (t.is_const()) return rat_str(t.coeff);
  if (t.factors.size() != 1 || t.factors[0].s != 1 || t.factors[0].w != 0)
    throw Error(ErrorKind::IoError,
                "strand term has no scenario syntax (refined factor)");
  return rat_str(t.coeff) + "*j^-" + rat_str(t.factors[0].e);
}

std::string strand_str(const StrandExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < e.terms().size(); ++i) {
    Term t = e.terms()[i];
    if (i == 0) {
      out = term_str(t);
      continue;
    }
    bool neg = t.coeff < 0;
    if (neg) t.coeff = Rat(-t.coeff);
    out += (neg ? " - " : " + ") + term_str(t);
  }
  return out;
}

std::string entry_str(const RatC& z) {
  if (z.im == 0) return rat_str(z.re);
  return "(" + rat_str(z.re) + ", " + rat_str(z.im) + ")";
}

std::string matrix_str(const HermitianRational& m) {
  std::ostringstream os;
  os << m.dim() << " {";
  for (long long i = 0; i < m.dim(); ++i) {
    os << (i == 0 ? " " : "; ");
    for (long long j = 0; j < m.dim(); ++j)
      os << (j == 0 ? "" : " ") << entry_str(m.at(i, j));
  }
  os << " }";
  return os.str();
}

void write_operator(std::ostringstream& os, const OperatorDef& def) {
  os << "operator " << def.label << " = ";
  if (def.is_matrix) {
    os << "matrix " << matrix_str(def.mat) << "\n";
    return;
  }
  const SymbolicSequence& d = def.op.diag;
  os << "diag seq mod " << d.m << " {";
  for (long long r = 0; r < d.m; ++r)
    os << (r == 0 ? " " : "; ") << "strand " << r << ": "
       << strand_str(d.strands[r]);
  for (const auto& [k, v] : d.exceptions)
    os << "; except " << k << " -> " << rat_str(v);
  os << " }";
  if (def.op.has_block()) os << " block " << matrix_str(def.op.block);
  os << "\n";
}

void write_check(std::ostringstream& os, const Directive& d) {
  os << "check " << d.id;
  for (const auto& g : d.groups) {
    os << " group";
    for (const auto& l : g) os << " " << l;
  }
  for (const auto& l : d.labels) os << " " << l;
  for (const char* key : {"eps", "delta", "lambda"})
    if (auto it = d.rat_args.find(key); it != d.rat_args.end())
      os << " " << key << " " << rat_str(it->second);
  for (const char* key : {"length", "n", "rank", "samples"})
    if (auto it = d.int_args.find(key); it != d.int_args.end())
      os << " " << key << " " << it->second;
  if (!d.sizes.empty()) {
    os << " sizes (";
    for (std::size_t i = 0; i < d.sizes.size(); ++i)
      os << (i == 0 ? "" : ", ") << d.sizes[i];
    os << ")";
  }
  os << "\n";
}

}  // namespace

std::string serialize_scenario(const ScenarioSpec& spec) {
  std::ostringstream os;
  for (const auto& def : spec.operators) write_operator(os, def);
  for (const auto& [k, v] : spec.settings) os << "set " << k << " " << v << "\n";
  for (const auto& d : spec.directives) write_check(os, d);
  return os.str();
}

}  // namespace specsum::dsl
