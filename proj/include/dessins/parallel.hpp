#pragma once

#include <cstddef>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dessins {

// How a data-parallel kernel runs.  Serial mode is the reference
// implementation used by the consistency tests; OpenMP mode must produce
// identical output, which callers get by merging per-chunk results in chunk
// order (the chunk grid does not depend on the thread count).
struct ExecPolicy {
  bool parallel = true;
  int threads = 0;  // 0: runtime default
};

inline constexpr std::size_t kMaxChunks = 256;

inline void run_chunks(
    std::size_t n, const ExecPolicy& policy,
    const std::function<void(std::size_t chunk, std::size_t begin,
                             std::size_t end)>& fn) {
  if (n == 0) return;
  const std::size_t chunks = n < kMaxChunks ? n : kMaxChunks;
  auto body = [&](std::size_t c) {
    std::size_t begin = n * c / chunks;
    std::size_t end = n * (c + 1) / chunks;
    if (begin < end) fn(c, begin, end);
  };
#ifdef _OPENMP
  if (policy.parallel) {
    int nt = policy.threads > 0 ? policy.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (long long c = 0; c < static_cast<long long>(chunks); ++c)
      body(static_cast<std::size_t>(c));
    return;
  }
#endif
  for (std::size_t c = 0; c < chunks; ++c) body(c);
}

}  // namespace dessins
