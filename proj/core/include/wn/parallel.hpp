#pragma once

#include <cstddef>
#include <functional>

namespace wn {

// Worker cap: WN_THREADS if set (>=1), otherwise hardware concurrency.
std::size_t thread_cap();

// Runs body(i) for i in [begin, end) on up to thread_cap() threads.
// Iterations must be independent; the first exception is rethrown.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

// Contiguous-chunk variant for reductions: body(chunk_begin, chunk_end).
void parallel_chunks(std::size_t begin, std::size_t end,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace wn
