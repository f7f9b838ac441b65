// Copyright 2026 the fuzzydb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>

#include "fuzzydb/error.hpp"

namespace testsupport {

/// Code of the fuzzydb::Error thrown by `f`, nullopt when nothing is thrown.
template <typename F>
std::optional<fuzzydb::ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const fuzzydb::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testsupport
