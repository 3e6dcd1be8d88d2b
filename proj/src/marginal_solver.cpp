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

#include "contextcost/marginal_solver.hpp"

#include <limits>

#include "contextcost/simplex.hpp"

namespace contextcost {
namespace {

// Row layout: the cells of each context table in order, then normalization.
struct ConstraintLayout {
  std::vector<std::size_t> radix;                      // outcome count per observable
  std::vector<std::vector<std::size_t>> context_obs;   // observable indices per context
  std::vector<std::size_t> offset;                     // first row of each context
  std::size_t rows = 0;

  explicit ConstraintLayout(const Scenario& sc) {
    for (const Observable& o : sc.observables()) radix.push_back(o.outcomes.size());
    for (const Context& c : sc.contexts()) {
      std::vector<std::size_t> idx;
      std::size_t cells = 1;
      for (const std::string& name : c) {
        idx.push_back(sc.observable_index(name));
        cells *= radix[idx.back()];
      }
      context_obs.push_back(std::move(idx));
      offset.push_back(rows);
      rows += cells;
    }
    ++rows;  // normalization
  }

  std::vector<std::size_t> digits(std::uint64_t index) const {
    std::vector<std::size_t> d(radix.size());
    for (std::size_t i = radix.size(); i-- > 0;) {
      d[i] = static_cast<std::size_t>(index % radix[i]);
      index /= radix[i];
    }
    return d;
  }

  void column(std::uint64_t index, std::vector<std::size_t>& out) const {
    const std::vector<std::size_t> d = digits(index);
    for (std::size_t c = 0; c < context_obs.size(); ++c) {
      std::size_t cell = 0;
      for (std::size_t o : context_obs[c]) cell = cell * radix[o] + d[o];
      out.push_back(offset[c] + cell);
    }
    out.push_back(rows - 1);
  }

  std::vector<Rational> rhs(const EmpiricalModel<Rational>& em) const {
    std::vector<Rational> b;
    b.reserve(rows);
    for (const auto& t : em.tables()) b.insert(b.end(), t.cells().begin(), t.cells().end());
    b.emplace_back(1);
    return b;
  }
};

std::uint64_t checked_count(const Scenario& sc, std::uint64_t cap) {
  const std::uint64_t n = assignment_count(sc);
  if (n > cap) {
    throw CapacityError("scenario has " + (n == std::numeric_limits<std::uint64_t>::max() ? std::string("too many")
                                                                                           : std::to_string(n)) +
                        " global assignments, above the cap of " + std::to_string(cap) +
                        "; raise the cap with --cap to solve it");
  }
  return n;
}

FeasibilityResult solve(const EmpiricalModel<Rational>& em, const SolverOptions& opts, double snap_distance) {
  const Scenario& sc = em.scenario();
  const std::uint64_t n = checked_count(sc, opts.assignment_cap);
  const ConstraintLayout layout(sc);

  BinaryColumnSystem sys;
  sys.rows = layout.rows;
  sys.columns = static_cast<std::size_t>(n);
  sys.rhs = layout.rhs(em);
  sys.column = [&layout](std::size_t j, std::vector<std::size_t>& out) { layout.column(j, out); };
  PhaseOneResult lp = solve_phase_one(sys);

  FeasibilityResult result;
  result.constraint_labels = constraint_labels(sc);
  result.assignment_count = static_cast<std::size_t>(n);
  result.pivots = lp.pivots;
  result.snap_distance = snap_distance;
  if (lp.feasible) {
    result.status = Feasibility::kFeasible;
    Witness w;
    for (auto& [col, weight] : lp.solution) w.push_back({assignment_at(sc, col), std::move(weight)});
    result.witness = std::move(w);
  } else {
    result.status = Feasibility::kInfeasible;
    result.certificate = std::move(lp.farkas);
  }
  return result;
}

template <class S>
bool verify_witness_impl(const EmpiricalModel<S>& em, const Witness& witness, double tol) {
  const Scenario& sc = em.scenario();
  Rational total(0);
  std::vector<std::vector<Rational>> induced;
  for (const auto& t : em.tables()) induced.emplace_back(t.size(), Rational(0));
  for (const WeightedAssignment& wa : witness) {
    if (wa.assignment.size() != sc.observables().size()) {
      throw ValidationError("witness assignment does not cover the scenario's observables");
    }
    std::vector<std::size_t> digit;
    for (const Observable& o : sc.observables()) {
      auto it = wa.assignment.find(o.name);
      if (it == wa.assignment.end()) throw ValidationError("witness assignment misses observable '" + o.name + "'");
      auto pos = std::find(o.outcomes.begin(), o.outcomes.end(), it->second);
      if (pos == o.outcomes.end()) {
        throw ValidationError("witness assigns unknown outcome '" + it->second + "' to '" + o.name + "'");
      }
      digit.push_back(static_cast<std::size_t>(pos - o.outcomes.begin()));
    }
    if (sgn(wa.weight) < 0) return false;
    total += wa.weight;
    for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
      const auto& table = em.table(c);
      std::vector<std::size_t> tuple;
      for (const std::string& name : sc.contexts()[c]) tuple.push_back(digit[sc.observable_index(name)]);
      induced[c][table.flat_index(tuple)] += wa.weight;
    }
  }
  if (total != 1) return false;
  for (std::size_t c = 0; c < induced.size(); ++c) {
    for (std::size_t k = 0; k < induced[c].size(); ++k) {
      if constexpr (ScalarTraits<S>::exact) {
        if (induced[c][k] != em.table(c)[k]) return false;
      } else {
        if (std::abs(nearest_double(induced[c][k]) - em.table(c)[k]) > tol) return false;
      }
    }
  }
  return true;
}

}  // namespace

const char* to_string(Feasibility f) { return f == Feasibility::kFeasible ? "feasible" : "infeasible"; }

std::uint64_t assignment_count(const Scenario& sc) {
  std::uint64_t n = 1;
  for (const Observable& o : sc.observables()) {
    const std::uint64_t k = o.outcomes.size();
    if (n > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
    n *= k;
  }
  return n;
}

GlobalAssignment assignment_at(const Scenario& sc, std::uint64_t index) {
  const ConstraintLayout layout(sc);
  const std::vector<std::size_t> d = layout.digits(index);
  GlobalAssignment g;
  for (std::size_t i = 0; i < d.size(); ++i) g[sc.observables()[i].name] = sc.observables()[i].outcomes[d[i]];
  return g;
}

std::vector<std::string> constraint_labels(const Scenario& sc) {
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
    for (const std::string& cell : sc.context_outcome_keys(c)) labels.push_back(sc.context_key(c) + ":" + cell);
  }
  labels.emplace_back("normalization");
  return labels;
}

FeasibilityResult global_joint_exists(const EmpiricalModel<Rational>& em, const SolverOptions& opts) {
  require_consistent(em, opts.tolerance);
  return solve(em, opts, 0.0);
}

FeasibilityResult global_joint_exists(const EmpiricalModel<double>& em, const SolverOptions& opts) {
  require_consistent(em, opts.tolerance);
  // The snapped tables may violate exact no-disturbance by up to the snap
  // distance; the LP decides on them as they are.
  auto [snapped, distance] = snap_model(em, opts.snap_denominator);
  return solve(snapped, opts, distance);
}

bool check_certificate(const EmpiricalModel<Rational>& em, const std::vector<Rational>& certificate,
                       const SolverOptions& opts) {
  const Scenario& sc = em.scenario();
  const ConstraintLayout layout(sc);
  if (certificate.size() != layout.rows) return false;
  const std::vector<Rational> b = layout.rhs(em);
  Rational yb(0);
  for (std::size_t r = 0; r < b.size(); ++r) yb += certificate[r] * b[r];
  if (sgn(yb) >= 0) return false;
  const std::uint64_t n = checked_count(sc, opts.assignment_cap);
  std::vector<std::size_t> support;
  for (std::uint64_t j = 0; j < n; ++j) {
    support.clear();
    layout.column(j, support);
    Rational ya(0);
    for (std::size_t r : support) ya += certificate[r];
    if (sgn(ya) < 0) return false;
  }
  return true;
}

bool verify_witness(const EmpiricalModel<Rational>& em, const Witness& witness, double tol) {
  return verify_witness_impl(em, witness, tol);
}

bool verify_witness(const EmpiricalModel<double>& em, const Witness& witness, double tol) {
  return verify_witness_impl(em, witness, tol);
}

}  // namespace contextcost
