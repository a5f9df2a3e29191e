/*
 * Copyright 2026 The lbaug Authors. All rights reserved.
 * This file is licensed to you under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under
 * the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR REPRESENTATIONS
 * OF ANY KIND, either express or implied. See the License for the specific language
 * governing permissions and limitations under the License.
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lbaug::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { success = 0, computation_failure = 1, usage_error = 2 };

///
/// Runs one command. `args` excludes the program name; e.g. {"laplacian", "--mesh", "a.off"}.
/// Normal output goes to `out`, diagnostics to `err`.
///
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lbaug::cli
