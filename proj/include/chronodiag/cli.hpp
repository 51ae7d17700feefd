// Copyright 2026 The Chronodiag Authors
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

#ifndef CHRONODIAG_CLI_HPP_
#define CHRONODIAG_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace chronodiag {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNoEvolution = 2,
  kExitLimit = 3,
};

// Runs one command line (args[0] is the program name). JSON reports go to
// `out`, human-readable summaries and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chronodiag

#endif  // CHRONODIAG_CLI_HPP_
