// Benchmark of the dense kernels: serial reference vs the OpenMP row-sliced
// kernel, plus one end-to-end tower verification workload at 1 vs all threads.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mtower/tower.hpp"

using namespace mtower;
using clk = std::chrono::steady_clock;

namespace {

double seconds(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

double time_matmul(std::size_t n, bool openmp, int reps) {
  std::mt19937_64 rng(42);
  Matrix a(n, n), b(n, n), c;
  fill_random(a, rng);
  fill_random(b, rng);
  const auto t0 = clk::now();
  for (int r = 0; r < reps; ++r) {
    if (openmp)
      matmul_openmp(a, b, c);
    else
      matmul_serial(a, b, c);
  }
  return seconds(t0, clk::now()) / reps;
}

}  // namespace

int main() {
#ifdef _OPENMP
  printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  printf("OpenMP not enabled; both kernels run serially\n");
#endif
  printf("%8s %12s %12s %9s %10s\n", "n", "serial [s]", "openmp [s]", "speedup", "GFLOP/s");
  for (std::size_t n : {64, 128, 256, 384, 512}) {
    const int reps = n <= 128 ? 20 : 5;
    const double ts = time_matmul(n, false, reps);
    const double tp = time_matmul(n, true, reps);
    const double flops = 8.0 * double(n) * n * n;  // complex mul-add = 8 real flops
    printf("%8zu %12.5f %12.5f %8.2fx %10.2f\n", n, ts, tp, ts / tp, flops / tp / 1e9);
  }

  // agreement check
  {
    std::mt19937_64 rng(7);
    Matrix a(200, 170), b(170, 230), s, p;
    fill_random(a, rng);
    fill_random(b, rng);
    matmul_serial(a, b, s);
    matmul_openmp(a, b, p);
    printf("kernel agreement, max |serial - openmp| = %.3e\n", norm_inf(s - p));
  }

  // end-to-end: tower verification workload
  auto g = builtin_graph("E6");
  auto t = build_tower(g, 9);
#ifdef _OPENMP
  omp_set_num_threads(1);
#endif
  auto t0 = clk::now();
  auto rep1 = verify_markov_axioms(t, 1e-9);
  auto t1 = clk::now();
#ifdef _OPENMP
  omp_set_num_threads(omp_get_num_procs());
#endif
  auto rep2 = verify_markov_axioms(t, 1e-9);
  auto t2 = clk::now();
  printf("axiom suite at depth 9: 1 thread %.2fs, all threads %.2fs (pass=%d/%d)\n",
         seconds(t0, t1), seconds(t1, t2), rep1.pass(), rep2.pass());
  return 0;
}
