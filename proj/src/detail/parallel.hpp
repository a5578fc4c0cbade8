#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace cyclocode::detail {

// Calls body(i) for i in [0, count), striding indices over up to `threads` workers.
template <class Body>
void run_parallel(std::size_t count, unsigned threads, Body&& body) {
    const auto workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    }
}

}  // namespace cyclocode::detail
