//
// Copyright 2026 The Hyperbound Authors
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
//

#ifndef HYPERBOUND_CLI_H_
#define HYPERBOUND_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace hyperbound {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Entry point of the `hyperbound` tool. `args` excludes the program name.
// Returns 0 on success, 1 on usage errors, 2 on data errors.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace hyperbound

#endif  // HYPERBOUND_CLI_H_
