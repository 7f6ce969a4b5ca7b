// Serial vs OpenMP timing of the batch kernels.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "cstar/pathspec.hpp"
#include "cstar/sampling.hpp"
#include "cstar/sweep.hpp"

namespace {
template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

int main(int argc, char** argv) {
  using namespace cstar;
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000;
  std::printf("threads %d, probes %zu\n", sweep::omp::max_threads(), n);

  std::vector<sweep::ProbeRecord> a, b;
  const double ts = seconds([&] { a = sweep::serial::probe(kDefaultSeed, n); });
  const double tp = seconds([&] { b = sweep::omp::probe(kDefaultSeed, n); });
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i)
    same = a[i].eigen_residual == b[i].eigen_residual && a[i].trace_relation == b[i].trace_relation;
  std::printf("probe        serial %.3fs  omp %.3fs  speedup %.2f  identical %s\n", ts, tp, ts / tp,
              same ? "yes" : "no");

  std::vector<ParamPath> loops;
  for (int i = 0; i < 64; ++i) {
    PathDescriptor d;
    d.kind = GeneratorKind::Loop;
    d.theta = 0.1 + 2.9 * i / 64.0;
    d.B = 1.0;
    d.alpha = 0.5;
    d.steps = 4000;
    loops.push_back(sample(d));
  }
  const double hs = seconds([&] { sweep::serial::berry_holonomies(loops); });
  const double hp = seconds([&] { sweep::omp::berry_holonomies(loops); });
  std::printf("holonomies   serial %.3fs  omp %.3fs  speedup %.2f\n", hs, hp, hs / hp);
  return same ? 0 : 1;
}
