#include "crg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace crg {
namespace {

std::atomic<unsigned> g_override{0};

unsigned env_threads() {
  const char* raw = std::getenv("CRG_THREADS");
  if (raw == nullptr) return 0;
  unsigned value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc{} || ptr != end || value == 0) return 0;
  return value;
}

}  // namespace

unsigned worker_count() {
  if (unsigned forced = g_override.load(); forced != 0) return forced;
  if (unsigned env = env_threads(); env != 0) return env;
  return std::max(1u, std::thread::hardware_concurrency());
}

ScopedThreadLimit::ScopedThreadLimit(unsigned threads) {
  unsigned prev = g_override.exchange(std::max(1u, threads));
  if (prev != 0) previous_ = prev;
}

ScopedThreadLimit::~ScopedThreadLimit() { g_override.store(previous_.value_or(0)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t block = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(n, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace crg
