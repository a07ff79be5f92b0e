#pragma once

#include <cstddef>
#include <functional>

namespace repstab {

/// Worker count used by data-parallel loops (enumeration, trace computation).
/// Defaults to 1; the CLI sets it from --jobs.
void set_default_jobs(unsigned jobs);
unsigned default_jobs();

/// Calls body(begin, end) on disjoint chunks covering [0, count). Chunks run on
/// up to `jobs` threads (0 means default_jobs()). The first exception thrown by
/// any chunk is rethrown on the calling thread.
void parallel_chunks(std::size_t count, unsigned jobs,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace repstab
