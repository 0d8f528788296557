#include "specsum/operator_model.hpp"

#include <algorithm>

namespace specsum {

void HermitianRational::set(long long i, long long j, const RatC& z) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw Error(ErrorKind::BadDimension, "block entry out of range");
  if (i == j && z.im != 0)
    throw Error(ErrorKind::BadOperator, "diagonal block entry must be real");
  a_[i * n_ + j] = z;
  a_[j * n_ + i] = z.conj();
}

HermitianRational HermitianRational::padded(long long n) const {
  if (n < n_) throw Error(ErrorKind::BadDimension, "cannot pad downward");
  HermitianRational out(n);
  for (long long i = 0; i < n_; ++i)
    for (long long j = 0; j < n_; ++j) out.a_[i * n + j] = a_[i * n_ + j];
  return out;
}

HermitianRational operator+(const HermitianRational& a, const HermitianRational& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::BadDimension, "block size mismatch");
  HermitianRational out(a.n_);
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] = a.a_[i] + b.a_[i];
  return out;
}

HermitianRational HermitianRational::squared() const {
  HermitianRational out(n_);
  for (long long i = 0; i < n_; ++i)
    for (long long j = i; j < n_; ++j) {
      RatC acc;
      for (long long k = 0; k < n_; ++k) acc = acc + at(i, k) * at(k, j);
      out.a_[i * n_ + j] = acc;
      out.a_[j * n_ + i] = acc.conj();
    }
  return out;
}

bool HermitianRational::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const RatC& z) { return z.is_zero(); });
}

void ModelOperator::validate() const {
  diag.validate();
  if (label.empty()) throw Error(ErrorKind::BadOperator, "operator needs a label");
}

ModelOperator op_sum(const std::vector<ModelOperator>& ops) {
  if (ops.empty()) throw Error(ErrorKind::BadOperator, "empty operator sum");
  long long nb = 0;
  for (const auto& op : ops) nb = std::max(nb, op.block.dim());
  ModelOperator out = ops.front();
  out.validate();
  if (nb > 0) out.block = out.block.padded(nb);
  for (std::size_t i = 1; i < ops.size(); ++i) {
    ops[i].validate();
    out.label += "+" + ops[i].label;
    out.diag = seq_add(out.diag, ops[i].diag);
    if (nb > 0) out.block = out.block + ops[i].block.padded(nb);
  }
  return out;
}

bool is_compact(const ModelOperator& op) { return seq_tends_to_zero(op.diag); }

bool product_is_compact(const ModelOperator& a, const ModelOperator& b) {
  auto [ra, rb] = refine_common(a.diag, b.diag);
  for (long long r = 0; r < ra.m; ++r)
    if (ra.strands[r].limit() * rb.strands[r].limit() != 0) return false;
  return true;
}

SpectrumInfo essential_spectrum(const ModelOperator& op) {
  SpectrumInfo info;
  info.essential_points = seq_limit_points(op.diag);
  for (const auto& st : op.diag.strands) {
    info.strand_laws.push_back(st.str());
    if (st.limit() == 0 && !st.is_zero()) info.zero_accumulation = true;
  }
  return info;
}

std::vector<Rat> essential_points(const ModelOperator& op) {
  return seq_limit_points(op.diag);
}

namespace {

void require_block_free(const std::vector<ModelOperator>& ops, const char* what) {
  for (const auto& op : ops)
    if (op.has_block())
      throw Error(ErrorKind::BlockNotSupported,
                  std::string(what) +
                      ": spectral subspaces of a finite block are not "
                      "symbolically computable, use the numeric lab");
}

}  // namespace

CoreReport epsilon_core(const std::vector<ModelOperator>& ops, const Rat& eps,
                        long long budget) {
  if (ops.empty()) throw Error(ErrorKind::BadOperator, "empty family");
  if (eps <= 0) throw Error(ErrorKind::BadSequence, "eps must be positive");
  require_block_free(ops, "epsilon_core");
  std::vector<SymbolicSequence> diags;
  for (const auto& op : ops) {
    op.validate();
    diags.push_back(op.diag);
  }
  auto refined = refine_all(diags);
  std::vector<IndexSetDesc> sets;
  for (const auto& s : refined) sets.push_back(abs_le_set(s, eps, budget));
  CoreReport rep;
  rep.eps = eps;
  rep.indices = set_intersection(sets);
  return rep;
}

CoreReport kernel_core(const std::vector<ModelOperator>& ops, long long budget) {
  if (ops.empty()) throw Error(ErrorKind::BadOperator, "empty family");
  require_block_free(ops, "kernel_core");
  std::vector<SymbolicSequence> diags;
  for (const auto& op : ops) {
    op.validate();
    diags.push_back(op.diag);
  }
  auto refined = refine_all(diags);
  std::vector<IndexSetDesc> sets;
  for (const auto& s : refined) sets.push_back(zero_set_desc(s, budget));
  CoreReport rep;
  rep.eps = Rat(0);
  rep.indices = set_intersection(sets);
  return rep;
}

HermitianRational truncate_exact(const ModelOperator& op, long long n) {
  op.validate();
  long long nb = op.block.dim();
  if (n < nb)
    throw Error(ErrorKind::BadDimension, "truncation smaller than the block");
  HermitianRational out(n);
  for (long long i = 0; i < n; ++i)
    out.set(i, i, RatC(seq_eval(op.diag, i + 1), Rat(0)));
  for (long long i = 0; i < nb; ++i)
    for (long long j = i; j < nb; ++j)
      out.set(i, j, out.at(i, j) + op.block.at(i, j));
  return out;
}

}  // namespace specsum
