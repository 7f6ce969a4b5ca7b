#include <omp.h>

#include <exception>

#include "cstar/sweep.hpp"

namespace cstar::sweep::omp {

namespace {
// Exceptions must not escape a parallel region; keep the first and rethrow.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  std::exception_ptr first;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(cstar_sweep_error)
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}
}  // namespace

std::vector<ProbeRecord> probe(std::uint64_t seed, std::size_t count) {
  std::vector<ProbeRecord> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = probe_point(seed, i); });
  return out;
}

std::vector<std::array<double, 4>> spectrum_table(const ParamPath& path, double hbar) {
  std::vector<std::array<double, 4>> out(path.size());
  parallel_for(path.size(), [&](std::size_t i) { out[i] = spectrum_row(path.point(i), hbar); });
  return out;
}

std::vector<cplx> berry_holonomies(const std::vector<ParamPath>& loops) {
  std::vector<cplx> out(loops.size());
  parallel_for(loops.size(), [&](std::size_t i) { out[i] = berry_holonomy(loops[i]); });
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace cstar::sweep::omp
