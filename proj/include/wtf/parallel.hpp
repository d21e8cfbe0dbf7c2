#pragma once

#include <cstddef>

namespace wtf::par {

/// Worker count: min(hardware, WTF_THREADS when set). Evaluated once.
int threads();

/// Runs body(i) for i in [0, n). Iterations must be independent; the
/// partition is deterministic but the execution order is not, so callers
/// aggregate into index-addressed storage.
template <class Body>
void for_each_index(std::size_t n, const Body& body);

}  // namespace wtf::par

// implementation

#include <omp.h>

namespace wtf::par {

template <class Body>
void for_each_index(std::size_t n, const Body& body) {
  const int nt = threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    body(static_cast<std::size_t>(i));
}

}  // namespace wtf::par
