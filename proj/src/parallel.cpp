#include "prunix/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace prunix {

namespace {

std::atomic<unsigned> g_workers{0};

// Below this many items a scan stays on the calling thread.
constexpr std::size_t kMinParallelItems = 4096;

}  // namespace

void set_worker_count(unsigned n) { g_workers.store(n); }

unsigned worker_count() {
  unsigned n = g_workers.load();
  if (n == 0) n = std::max(1U, std::thread::hardware_concurrency());
  return n;
}

void parallel_blocks(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count / kMinParallelItems);
  if (workers <= 1) {
    if (count > 0) body(0, count);
    return;
  }
  const std::size_t block = (count + workers - 1) / workers;
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(count, begin + block);
    if (begin >= end) break;
    threads.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

std::optional<std::size_t> find_first(std::size_t count, const std::function<bool(std::size_t)>& pred) {
  std::atomic<std::size_t> best{count};
  parallel_blocks(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end && i < best.load(std::memory_order_relaxed); ++i) {
      if (pred(i)) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  });
  std::size_t found = best.load();
  if (found == count) return std::nullopt;
  return found;
}

double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace prunix
