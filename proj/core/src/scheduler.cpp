// Copyright 2026 The replab Authors
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

#include "replab/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <thread>

#include "replab/errors.hpp"

namespace replab {

int resolve_workers(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv("REPLAB_WORKERS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<int>(std::min<long>(v, 1024));
        }
        throw DomainError("REPLAB_WORKERS", "must be a positive integer");
    }
    return 1;
}

namespace detail {

void run_indexed(size_t n, int workers, const std::function<void(size_t)> &job) {
    std::atomic<size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::optional<JobFailure> failure;

    auto attempt = [&](size_t i, std::string &msg, bool &user) {
        try {
            job(i);
            return true;
        } catch (const DomainError &e) {
            msg = e.what();
            user = true;
        } catch (const std::exception &e) {
            msg = e.what();
            user = false;
        }
        return false;
    };
    auto worker = [&]() {
        while (!stop.load()) {
            size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            std::string msg;
            bool user = false;
            if (attempt(i, msg, user) || attempt(i, msg, user)) {
                continue;
            }
            std::lock_guard<std::mutex> lock(mu);
            if (!failure || i < failure->index()) {
                failure.emplace(i, msg, user);
            }
            stop.store(true);
        }
    };

    const int count = std::max(1, std::min<int>(workers, static_cast<int>(std::max<size_t>(n, 1))));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(count);
        for (int w = 0; w < count; ++w) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        throw *failure;
    }
}

}  // namespace detail

}  // namespace replab
