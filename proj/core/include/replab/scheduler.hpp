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

#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace replab {

/// Raised when a job fails twice; carries the job index and the last message.
class JobFailure : public std::runtime_error {
  public:
    JobFailure(size_t index, const std::string &what, bool user_error)
        : std::runtime_error("job " + std::to_string(index) + " failed: " + what),
          index_(index),
          user_error_(user_error) {}
    size_t index() const {
        return index_;
    }
    /// True if the underlying error was a DomainError.
    bool user_error() const {
        return user_error_;
    }

  private:
    size_t index_;
    bool user_error_;
};

/// Resolves the worker count: explicit value if positive, else the
/// REPLAB_WORKERS environment variable, else 1.
int resolve_workers(int requested);

/// Runs job(0..n-1) on a pool of worker threads. Each failing job is retried
/// once; a second failure stops dispatch of new jobs and raises JobFailure
/// after all workers have drained. Results are returned in job-index order, so
/// the output does not depend on the worker count.
template <typename R>
std::vector<R> run_jobs(size_t n, int workers, const std::function<R(size_t)> &job);

namespace detail {
void run_indexed(size_t n, int workers, const std::function<void(size_t)> &job);
}  // namespace detail

template <typename R>
std::vector<R> run_jobs(size_t n, int workers, const std::function<R(size_t)> &job) {
    std::vector<R> results(n);
    detail::run_indexed(n, workers, [&](size_t i) { results[i] = job(i); });
    return results;
}

}  // namespace replab
