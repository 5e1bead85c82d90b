// Copyright 2026 The ldpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ldpf: privatize data, tabulate Fisher information, run Monte Carlo sweeps,
// tune the interval mass c, and run the property suites.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <iostream>

#include "ldpf/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return ldpf::cli::run(argc, argv, std::cout, std::cerr);
}
