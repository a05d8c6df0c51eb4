#ifndef DYSOB_PARALLEL_HPP
#define DYSOB_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace dysob {

/// Worker count: the DYADIC_SOBOLEV_JOBS environment variable overrides the
/// requested value; zero requests the hardware concurrency.
inline int resolve_jobs(int requested = 0) {
  if (const char* env = std::getenv("DYADIC_SOBOLEV_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Run fn(0..count-1) across a worker pool. Each index writes only its own
/// slot in the caller's storage, so results are identical for any job count.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  jobs = std::min<std::size_t>(static_cast<std::size_t>(jobs > 0 ? jobs : 1), count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs) - 1);
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace dysob

#endif  // DYSOB_PARALLEL_HPP
