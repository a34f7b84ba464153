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

#include <stdexcept>
#include <string>

namespace replab {

/// Input outside the documented domain of an operation (user error).
class DomainError : public std::invalid_argument {
   public:
    DomainError(std::string field, const std::string &what)
        : std::invalid_argument(field.empty() ? what : field + ": " + what), field_(std::move(field)) {
    }
    const std::string &field() const noexcept {
        return field_;
    }

   private:
    std::string field_;
};

/// A fundamental event probability vanished, so its Nishimori coupling diverges.
class InfiniteCouplingError : public DomainError {
   public:
    explicit InfiniteCouplingError(int index)
        : DomainError(
              "pi[" + std::to_string(index) + "]",
              "probability is zero; coupling would be infinite (opt in to a probability floor to clamp it)"),
          index_(index) {
    }
    int vanishing_index() const noexcept {
        return index_;
    }

   private:
    int index_;
};

/// An internal invariant or an operation contract did not hold.
class ContractViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace replab
