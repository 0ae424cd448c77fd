#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace spantree {

// Splits [0, total) into `shards` contiguous ranges and runs `work` on each,
// one thread per shard. Shard s owns [begin, end); ranges are a pure function
// of (total, shards), so the partition never depends on scheduling.
inline void run_sharded(std::uint64_t total, int shards,
                        const std::function<void(int, std::uint64_t, std::uint64_t)>& work) {
    if (shards < 1) throw std::invalid_argument("run_sharded: shards must be >= 1");
    const auto s = static_cast<std::uint64_t>(shards);
    if (shards == 1 || total <= 1) {
        work(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(s);
    const std::uint64_t base = total / s, rem = total % s;
    std::uint64_t begin = 0;
    for (int i = 0; i < shards; ++i) {
        const std::uint64_t len = base + (static_cast<std::uint64_t>(i) < rem ? 1 : 0);
        const std::uint64_t end = begin + len;
        pool.emplace_back([&work, i, begin, end] { work(i, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace spantree
