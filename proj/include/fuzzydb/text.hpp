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
#include <string>
#include <string_view>

namespace fuzzydb {

/// Shortest decimal form that reads back to the same double ("0.3", "50").
std::string format_number(double v);

/// format_number without the leading zero of a fraction (".3", "-.5").
std::string format_script_number(double v);

/// Full-string parse of a decimal number, accepting ".3" and "-.5".
std::optional<double> parse_number(std::string_view text);

std::optional<int> parse_int(std::string_view text);

std::string to_upper(std::string_view text);

bool iequals(std::string_view a, std::string_view b);

std::string_view trim(std::string_view text);

}  // namespace fuzzydb
