#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace fingeo {

/// Worker cap for every parallel scan; 0 restores the default (hardware
/// concurrency).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Splits [0, n) into contiguous chunks and runs fn(chunk, begin, end) on up
/// to thread_count() threads. Chunk boundaries depend only on n and the
/// thread count, so callers that merge per-chunk results in chunk order get
/// the same answer for any schedule.
void parallel_chunks(std::uint64_t n, const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn,
                     unsigned* chunks_used = nullptr);

}  // namespace fingeo
