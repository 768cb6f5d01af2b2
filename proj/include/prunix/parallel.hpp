#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

namespace prunix {

// Worker threads used by the exhaustive scans. 0 means "all hardware
// threads". Results never depend on this value.
void set_worker_count(unsigned n);
unsigned worker_count();

// Runs body(begin, end) over a partition of [0, count) into contiguous
// blocks, possibly concurrently.
void parallel_blocks(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

// Smallest index i in [0, count) with pred(i), scanning blocks in parallel.
std::optional<std::size_t> find_first(std::size_t count, const std::function<bool(std::size_t)>& pred);

// Pairwise (tree) summation; the association order depends only on the
// length of the input.
double pairwise_sum(std::span<const double> terms);

}  // namespace prunix
