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

#ifndef HISTOSEEK_TOOLS_CLI_HPP_
#define HISTOSEEK_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace histoseek::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one `histoseek` invocation. args[0] is the program name.
// Standard input is only read by `import --in -`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace histoseek::cli

#endif  // HISTOSEEK_TOOLS_CLI_HPP_
