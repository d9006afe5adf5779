// Copyright 2026 The trajpred Authors.
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

#ifndef TRAJPRED_HARNESS_CLI_HPP_
#define TRAJPRED_HARNESS_CLI_HPP_

namespace trajpred::harness
{

/// Entry point behind the command-line tool. Exit codes: 0 success, 1 runtime
/// failure (missing files, bad data) with a diagnostic on stderr, 2 usage
/// errors (unknown flags or subcommands).
int cli_main(int argc, const char * const * argv);

}  // namespace trajpred::harness

#endif  // TRAJPRED_HARNESS_CLI_HPP_
