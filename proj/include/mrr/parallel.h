#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace mrr
{

// Runs fn(i) for i in [0, n) over `threads` workers with static contiguous
// chunks. Results must be written to per-index slots so output never depends on
// scheduling. The first exception thrown by a worker is rethrown.
template <class F>
void parallel_for(int n, int threads, F&& fn)
{
    if (n <= 0)
        return;
    threads = std::clamp(threads, 1, n);
    if (threads == 1)
    {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    const int chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w)
    {
        pool.emplace_back([&, w] {
            try
            {
                const int lo = w * chunk;
                const int hi = std::min(n, lo + chunk);
                for (int i = lo; i < hi; ++i)
                    fn(i);
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}
