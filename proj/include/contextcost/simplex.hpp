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

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "contextcost/rational.hpp"

namespace contextcost {

/// Feasibility system  A w = b,  w >= 0,  with b >= 0 and every column of A a
/// 0/1 vector. Columns are generated on demand: `column(j, rows)` fills the
/// row indices where column j has a one.
struct BinaryColumnSystem {
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::function<void(std::size_t, std::vector<std::size_t>&)> column;
  std::vector<Rational> rhs;
};

struct PhaseOneResult {
  bool feasible = false;
  /// Nonzero structural entries of a basic feasible solution, ascending by column.
  std::vector<std::pair<std::size_t, Rational>> solution;
  /// Farkas vector y with y·A_j >= 0 for every column and y·b < 0. Empty when feasible.
  std::vector<Rational> farkas;
  std::size_t pivots = 0;
};

/// Phase-one revised simplex in exact rational arithmetic. Starts from the
/// all-artificial basis, prices columns in index order and breaks ratio ties
/// by smallest basic index (Bland), so it terminates and is deterministic.
PhaseOneResult solve_phase_one(const BinaryColumnSystem& system);

}  // namespace contextcost
