#pragma once

// Data-parallel loop kernels. Every kernel has a serial reference path and an
// OpenMP path; both produce identical results (ties resolve to the lowest
// index), which the test suite checks.

#include <cstddef>
#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace normlab {

enum class Exec { Serial, Parallel };

struct IndexedMax {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;
  bool found = false;
};

inline bool better(const IndexedMax& cand, const IndexedMax& best) {
  if (!cand.found) return false;
  if (!best.found) return true;
  if (cand.value > best.value) return true;
  return cand.value == best.value && cand.index < best.index;
}

/// Maximum of f(0..n-1). NaN values are skipped.
template <class F>
IndexedMax serial_argmax(std::size_t n, F&& f) {
  IndexedMax best;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = f(k);
    if (v != v) continue;
    IndexedMax cand{v, k, true};
    if (better(cand, best)) best = cand;
  }
  return best;
}

template <class F>
IndexedMax parallel_argmax(std::size_t n, F&& f) {
  IndexedMax best;
#pragma omp parallel
  {
    IndexedMax local;
#pragma omp for schedule(static) nowait
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
      const double v = f(static_cast<std::size_t>(k));
      if (v != v) continue;
      IndexedMax cand{v, static_cast<std::size_t>(k), true};
      if (better(cand, local)) local = cand;
    }
#pragma omp critical(normlab_argmax_merge)
    {
      if (better(local, best)) best = local;
    }
  }
  return best;
}

template <class F>
IndexedMax argmax(Exec exec, std::size_t n, F&& f) {
  return exec == Exec::Parallel ? parallel_argmax(n, f) : serial_argmax(n, f);
}

/// Runs body(k) for k in [0, n). Bodies must write only to slot k of their
/// outputs; dynamic scheduling balances restarts of uneven cost.
template <class F>
void for_each_index(Exec exec, std::size_t n, F&& body) {
  if (exec == Exec::Serial) {
    for (std::size_t k = 0; k < n; ++k) body(k);
    return;
  }
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
    body(static_cast<std::size_t>(k));
  }
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace normlab
