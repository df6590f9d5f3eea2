// Times the serial reference kernels against their OpenMP twins and checks
// that the outputs stay bit-identical. Not part of the test suite; run
// manually: build/bench/bench_kernels [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "ohmnet/generators.hpp"
#include "ohmnet/kernels.hpp"
#include "ohmnet/rng.hpp"

using namespace ohmnet;
using kernels::Exec;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void report(const char* name, const char* size, double serial_ms,
            double omp_ms, bool equal) {
  std::printf("%-14s %-22s serial %8.2f ms   openmp %8.2f ms   x%.2f   %s\n",
              name, size, serial_ms, omp_ms, serial_ms / omp_ms,
              equal ? "bit-identical" : "MISMATCH");
}

void bench_jacobi(int repeats) {
  const auto g = gen::random_connected(2000, 0.02, 0.1, 10.0, 1);
  const auto a = g.adjacency();
  std::vector<double> p(g.n()), b(g.n(), 0.0);
  for (int u = 0; u < g.n(); ++u) p[u] = unit_draw(3, u, 0, 0);
  b[g.source()] = 1.0;
  b[g.sink()] = -1.0;
  std::vector<double> out_s(g.n()), out_p(g.n());

  double t0 = now_ms();
  for (int r = 0; r < repeats; ++r)
    kernels::jacobi_sweep(a, p, b, 1.0, out_s, Exec::serial);
  const double serial = now_ms() - t0;
  t0 = now_ms();
  for (int r = 0; r < repeats; ++r)
    kernels::jacobi_sweep(a, p, b, 1.0, out_p, Exec::openmp);
  const double omp = now_ms() - t0;
  const bool equal =
      std::memcmp(out_s.data(), out_p.data(), sizeof(double) * g.n()) == 0;
  const std::string size =
      "n=2000 m=" + std::to_string(g.m()) + " x" + std::to_string(repeats);
  report("jacobi_sweep", size.c_str(), serial, omp, equal);
}

void bench_tokens(int repeats) {
  const auto g = gen::random_connected(500, 0.05, 0.1, 10.0, 2);
  const auto a = g.adjacency();
  std::vector<int64_t> counts(g.n());
  int64_t total = 0;
  for (int u = 0; u < g.n(); ++u) {
    counts[u] = static_cast<int64_t>(counter_hash(9, u, 0, 0) % 4096);
    total += counts[u];
  }
  std::vector<int64_t> arr_s(g.n()), arr_p(g.n());

  double t0 = now_ms();
  for (int r = 0; r < repeats; ++r) {
    std::fill(arr_s.begin(), arr_s.end(), 0);
    kernels::token_sweep(a, counts, 4, 0, r, arr_s, Exec::serial);
  }
  const double serial = now_ms() - t0;
  t0 = now_ms();
  for (int r = 0; r < repeats; ++r) {
    std::fill(arr_p.begin(), arr_p.end(), 0);
    kernels::token_sweep(a, counts, 4, 0, r, arr_p, Exec::openmp);
  }
  const double omp = now_ms() - t0;
  const std::string size =
      std::to_string(total) + " tokens x" + std::to_string(repeats);
  report("token_sweep", size.c_str(), serial, omp, arr_s == arr_p);
}

void bench_cuts() {
  const auto g = gen::random_connected(20, 0.4, 0.1, 10.0, 3);
  const auto a = g.adjacency();

  double t0 = now_ms();
  const auto rs =
      kernels::cut_scan(a, kernels::CutObjective::conductance, Exec::serial);
  const double serial = now_ms() - t0;
  t0 = now_ms();
  const auto rp =
      kernels::cut_scan(a, kernels::CutObjective::conductance, Exec::openmp);
  const double omp = now_ms() - t0;
  report("cut_scan", "n=20 (1M subsets)", serial, omp,
         rs.value == rp.value && rs.mask == rp.mask);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 200;
  std::printf("threads: %d\n", omp_get_max_threads());
  bench_jacobi(repeats);
  bench_tokens(repeats / 10 + 1);
  bench_cuts();
  return 0;
}
