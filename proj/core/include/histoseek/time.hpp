// Copyright 2026 The HistoSeek Authors. All Rights Reserved.
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

#ifndef HISTOSEEK_TIME_HPP_
#define HISTOSEEK_TIME_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace histoseek {

using Timestamp = std::chrono::sys_seconds;

Timestamp now_seconds();

// "2026-10-16T10:55:00Z".
std::string format_rfc3339(Timestamp t);

// Accepts "YYYY-MM-DDTHH:MM:SS" followed by optional fractional seconds
// (discarded) and "Z" or a "+hh:mm"/"-hh:mm" offset.
std::optional<Timestamp> parse_rfc3339(std::string_view text);

}  // namespace histoseek

#endif  // HISTOSEEK_TIME_HPP_
