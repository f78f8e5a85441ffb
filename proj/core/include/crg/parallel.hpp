#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace crg {

/// Number of workers used by parallel loops. Honors CRG_THREADS (a positive
/// integer) and any active ScopedThreadLimit; otherwise hardware concurrency.
unsigned worker_count();

/// Overrides the worker count for the lifetime of the object (tests, CLI).
class ScopedThreadLimit {
 public:
  explicit ScopedThreadLimit(unsigned threads);
  ~ScopedThreadLimit();
  ScopedThreadLimit(const ScopedThreadLimit&) = delete;
  ScopedThreadLimit& operator=(const ScopedThreadLimit&) = delete;

 private:
  std::optional<unsigned> previous_;
};

/// Calls body(i) for every i in [0, n). Work is split into contiguous blocks;
/// body must only write to state owned by index i. The first exception thrown
/// by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace crg
