// SPDX-License-Identifier: Apache-2.0
//
// masec: movable-antenna secure transmission toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MASEC_SRC_PARALLEL_HPP
#define MASEC_SRC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace masec::detail
{
    inline int resolve_threads(int requested)
    {
        if (requested > 0)
            return requested;
        return std::max(1u, std::thread::hardware_concurrency());
    }

    // Runs job(k) for k in [0, n_jobs) on a shared work queue. Jobs write to disjoint
    // slots, so callers merge results in index order independent of completion order.
    template <class Job>
    void run_jobs(std::size_t n_jobs, int threads, Job &&job)
    {
        const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n_jobs);
        if (n_workers <= 1)
        {
            for (std::size_t k = 0; k < n_jobs; ++k)
                job(k);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;)
            {
                const auto k = next.fetch_add(1);
                if (k >= n_jobs)
                    return;
                try
                {
                    job(k);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t t = 0; t < n_workers; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }
}

#endif
