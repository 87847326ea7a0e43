// parallel.hpp -- block partitioning of enumeration ranges over a fixed
// worker count.  Results must merge order-independently (counts) or by
// minimum encoding (first-match scans) so parallel and serial runs agree.

#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace qbinom {

/// Runs fn(begin, end, block) on contiguous blocks of [0, count).
inline void parallel_blocks(std::uint64_t count, int threads,
                            const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
    if (threads < 1) threads = 1;
    if (threads == 1 || count < 2) {
        fn(0, count, 0);
        return;
    }
    const std::uint64_t nblk = std::min<std::uint64_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nblk);
    for (std::uint64_t b = 0; b < nblk; ++b) {
        std::uint64_t lo = count * b / nblk;
        std::uint64_t hi = count * (b + 1) / nblk;
        pool.emplace_back([&, lo, hi, b] { fn(lo, hi, static_cast<int>(b)); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qbinom
