#include <chrono>
#include <cstdio>

#include "specsum/numeric/eigh.hpp"
#include "specsum/rng.hpp"

// Times the OpenMP kernels against their serial references on random
// Hermitian inputs and checks that the results agree bitwise.

namespace {

using namespace specsum;

double ms_since(std::chrono::steady_clock::time_point t0) {
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

HermitianMatrix random_hermitian(long long n, std::uint64_t seed) {
  Rng rng(seed);
  HermitianMatrix a(n);
  for (long long i = 0; i < n; ++i) {
    a.set(i, i, rng.gaussian());
    for (long long j = i + 1; j < n; ++j)
      a.set(i, j, cdouble(rng.gaussian(), rng.gaussian()));
  }
  return a;
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (std::size_t i = 0; i < a.a.size(); ++i)
    if (a.a[i] != b.a[i]) return false;
  return true;
}

}  // namespace

int main() {
  std::printf("%-10s %6s %12s %12s %8s\n", "kernel", "n", "parallel_ms",
              "serial_ms", "match");
  for (long long n : {64, 128, 256}) {
    Matrix x(n, n), y(n, n);
    Rng rng(Rng::derive(11, n));
    for (auto& z : x.a) z = cdouble(rng.gaussian(), rng.gaussian());
    for (auto& z : y.a) z = cdouble(rng.gaussian(), rng.gaussian());

    auto t0 = std::chrono::steady_clock::now();
    Matrix p = matmul(x, y);
    double tp = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    Matrix s = matmul_reference(x, y);
    double ts = ms_since(t0);
    std::printf("%-10s %6lld %12.2f %12.2f %8s\n", "matmul", n, tp, ts,
                bitwise_equal(p, s) ? "bitwise" : "DIFFER");
  }
  for (long long n : {32, 64, 128}) {
    HermitianMatrix a = random_hermitian(n, 101 + n);
    auto t0 = std::chrono::steady_clock::now();
    EigenDecomposition dp = eigh(a);
    double tp = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    EigenDecomposition ds = eigh_reference(a);
    double ts = ms_since(t0);
    double diff = 0.0;
    for (long long i = 0; i < n; ++i)
      diff = std::max(diff, std::abs(dp.values[i] - ds.values[i]));
    std::printf("%-10s %6lld %12.2f %12.2f %8s\n", "eigh", n, tp, ts,
                diff <= 1e-9 * std::max(1.0, a.fro()) ? "spectra" : "DIFFER");
  }
  return 0;
}
