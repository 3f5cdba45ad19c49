// Copyright 2026 The locoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCOH_PARALLEL_HPP
#define LOCOH_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace locoh {

/// Runs fn(i) for i in [0, n) on up to `threads` workers using a fixed
/// contiguous partition. Callers write results into slot i, so the outcome
/// does not depend on the worker count. The first exception is rethrown.
template <class Fn>
void parallel_for(long n, int threads, Fn &&fn) {
    if (n <= 0) return;
    const long workers = std::clamp<long>(threads, 1, n);
    if (workers == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (long w = 0; w < workers; ++w) {
        const long begin = n * w / workers;
        const long end = n * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (long i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto &t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace locoh

#endif
