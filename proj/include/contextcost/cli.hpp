// Copyright 2026 The contextcost Authors
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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace contextcost {

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInvalidInput = 2,
  kExitContextual = 10,
  kExitMediationFailed = 11,
};

enum class ArithmeticMode { kExact, kFloat };
enum class OutputFormat { kText, kJson };

struct RunConfig {
  ArithmeticMode mode = ArithmeticMode::kExact;
  double tolerance = 1e-9;
  double log_base = 2.0;
  /// "uniform", or a path to a {context-key: prob} file. Empty keeps the
  /// prior stored in the model file.
  std::string prior;
  std::uint64_t assignment_cap = std::uint64_t{1} << 20;
  OutputFormat format = OutputFormat::kText;
};

int cmd_analyze(const std::string& model_path, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_cost(const std::string& model_path, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& model_path, const std::string& channel_path, const RunConfig& cfg,
               std::ostream& out, std::ostream& err);
/// Writes a canonical model file ("xor", "triangle", "chsh"); an empty path
/// writes to `out`.
int cmd_examples(const std::string& name, const std::string& output_path, std::ostream& out, std::ostream& err);

/// Full command line, argv[0] included.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contextcost
