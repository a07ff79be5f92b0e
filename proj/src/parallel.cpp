#include "repstab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace repstab {

namespace {
std::atomic<unsigned> g_jobs{1};
}

void set_default_jobs(unsigned jobs) { g_jobs = std::max(1u, jobs); }
unsigned default_jobs() { return g_jobs; }

void parallel_chunks(std::size_t count, unsigned jobs,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  if (jobs == 0) jobs = default_jobs();
  if (count == 0) return;
  if (jobs <= 1 || count == 1) {
    body(0, count);
    return;
  }
  // Over-split so uneven chunks still balance.
  const std::size_t chunks = std::min<std::size_t>(count, std::size_t{jobs} * 4);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      std::size_t begin = count * c / chunks;
      std::size_t end = count * (c + 1) / chunks;
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, chunks); ++t) threads.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace repstab
