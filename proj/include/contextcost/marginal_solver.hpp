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

// Global-joint feasibility for empirical models. A global joint exists iff
// the context tables are a convex mixture of deterministic global
// assignments, so the unknowns are the assignment weights and every table
// cell contributes one equality constraint.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contextcost/scenario.hpp"

namespace contextcost {

/// Observable name -> outcome label, total over the scenario.
using GlobalAssignment = std::map<std::string, std::string>;

struct WeightedAssignment {
  GlobalAssignment assignment;
  Rational weight;

  bool operator==(const WeightedAssignment&) const = default;
};

/// Sparse distribution over global assignments (zero weights omitted).
using Witness = std::vector<WeightedAssignment>;

enum class Feasibility { kFeasible, kInfeasible };

const char* to_string(Feasibility f);

struct FeasibilityResult {
  Feasibility status = Feasibility::kInfeasible;
  std::optional<Witness> witness;
  /// One rational per constraint row, aligned with `constraint_labels`.
  std::optional<std::vector<Rational>> certificate;
  /// "context-key:tuple-key" per table cell, then "normalization".
  std::vector<std::string> constraint_labels;
  /// Largest distance moved when snapping float tables to the rational grid.
  double snap_distance = 0.0;
  std::size_t assignment_count = 0;
  std::size_t pivots = 0;
};

struct SolverOptions {
  std::uint64_t assignment_cap = std::uint64_t{1} << 20;
  double tolerance = kDefaultTolerance;
  std::int64_t snap_denominator = kDefaultSnapDenominator;
};

/// Number of deterministic global assignments, saturating at UINT64_MAX.
std::uint64_t assignment_count(const Scenario& sc);

/// The i-th global assignment in mixed-radix order (last observable fastest).
GlobalAssignment assignment_at(const Scenario& sc, std::uint64_t index);

/// Labels of the constraint rows used by the solver and the certificate.
std::vector<std::string> constraint_labels(const Scenario& sc);

/// Exact LP feasibility. Throws ValidationError if the model is inconsistent
/// and CapacityError if the assignment space exceeds the cap.
FeasibilityResult global_joint_exists(const EmpiricalModel<Rational>& em, const SolverOptions& opts = {});

/// Validates within tolerance, snaps every cell to the grid 1/snap_denominator
/// and solves the snapped model exactly.
FeasibilityResult global_joint_exists(const EmpiricalModel<double>& em, const SolverOptions& opts = {});

/// Farkas check: y·A_j >= 0 for every assignment column and y·b < 0, where
/// b holds the model's table cells followed by the normalization 1.
bool check_certificate(const EmpiricalModel<Rational>& em, const std::vector<Rational>& certificate,
                       const SolverOptions& opts = {});

/// True iff the witness is a distribution over total assignments of the
/// scenario whose context marginals reproduce every table (exactly, or
/// within tolerance for float models). Throws ValidationError on a scenario
/// mismatch.
bool verify_witness(const EmpiricalModel<Rational>& em, const Witness& witness, double tol = kDefaultTolerance);
bool verify_witness(const EmpiricalModel<double>& em, const Witness& witness, double tol = kDefaultTolerance);

}  // namespace contextcost
