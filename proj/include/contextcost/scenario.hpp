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
#include <string>
#include <vector>

#include "contextcost/infotheory.hpp"

namespace contextcost {

struct Observable {
  std::string name;
  std::vector<std::string> outcomes;

  bool operator==(const Observable&) const = default;
};

/// A set of jointly measured observables, listed in declaration order.
using Context = std::vector<std::string>;

/// Context key: observable names joined by "|".
std::string context_key(const Context& context);

/// Outcome tuple key: outcome labels joined by ",".
std::string tuple_key(const std::vector<std::string>& outcomes);

/// Splits a key on `sep`.
std::vector<std::string> split_key(const std::string& key, char sep);

/// Observables with their outcome alphabets plus the measurement contexts.
/// Structural invariants are enforced at construction.
class Scenario {
 public:
  Scenario() = default;
  Scenario(std::vector<Observable> observables, std::vector<Context> contexts);

  const std::vector<Observable>& observables() const { return observables_; }
  const std::vector<Context>& contexts() const { return contexts_; }

  std::size_t observable_index(const std::string& name) const;
  const Observable& observable(const std::string& name) const { return observables_[observable_index(name)]; }
  std::size_t context_index(const std::string& key) const;
  std::string context_key(std::size_t i) const { return contextcost::context_key(contexts_[i]); }
  std::vector<std::string> context_keys() const;

  /// The context's observables as joint-table variables.
  std::vector<Variable> context_variables(std::size_t i) const;

  /// Tuple keys of every joint outcome of context i, in table order.
  std::vector<std::string> context_outcome_keys(std::size_t i) const;

  bool operator==(const Scenario&) const = default;

 private:
  std::vector<Observable> observables_;
  std::vector<Context> contexts_;
};

/// One joint table per context, aligned with `scenario().contexts()`.
/// Normalization and no-disturbance are checked by `validate`, not here, so
/// that deliberately broken models can be built.
template <ProbabilityScalar S>
class EmpiricalModel {
 public:
  EmpiricalModel() = default;
  EmpiricalModel(Scenario scenario, std::vector<JointTable<S>> tables)
      : scenario_(std::move(scenario)), tables_(std::move(tables)) {
    if (tables_.size() != scenario_.contexts().size()) {
      throw ValidationError("expected one table per context");
    }
    for (std::size_t i = 0; i < tables_.size(); ++i) {
      if (tables_[i].variables() != scenario_.context_variables(i)) {
        throw ValidationError("table for context '" + scenario_.context_key(i) +
                              "' does not match the context's observables");
      }
    }
  }

  const Scenario& scenario() const { return scenario_; }
  const std::vector<JointTable<S>>& tables() const { return tables_; }
  const JointTable<S>& table(std::size_t i) const { return tables_[i]; }
  const JointTable<S>& table(const std::string& key) const { return tables_[scenario_.context_index(key)]; }

  bool operator==(const EmpiricalModel&) const = default;

 private:
  Scenario scenario_;
  std::vector<JointTable<S>> tables_;
};

struct NormalizationFailure {
  std::size_t context = 0;
  std::string context_key;
  double sum = 0.0;
};

struct DisturbanceFailure {
  std::size_t first = 0;
  std::size_t second = 0;
  std::vector<std::string> shared;
  double max_deviation = 0.0;
};

struct ValidationReport {
  bool consistent = true;
  std::vector<NormalizationFailure> normalization;
  std::vector<DisturbanceFailure> disturbance;
};

/// Checks normalization of every table and agreement of shared-observable
/// marginals for every pair of contexts. Exact models must agree exactly;
/// float models within `tol`.
template <class S>
ValidationReport validate(const EmpiricalModel<S>& em, double tol = kDefaultTolerance) {
  ValidationReport report;
  const Scenario& sc = em.scenario();
  for (std::size_t i = 0; i < em.tables().size(); ++i) {
    if (!em.table(i).is_normalized(tol)) {
      report.normalization.push_back({i, sc.context_key(i), to_double(em.table(i).total())});
    }
  }
  for (std::size_t a = 0; a < sc.contexts().size(); ++a) {
    for (std::size_t b = a + 1; b < sc.contexts().size(); ++b) {
      std::vector<std::string> shared;
      for (const std::string& name : sc.contexts()[a]) {
        const Context& other = sc.contexts()[b];
        if (std::find(other.begin(), other.end(), name) != other.end()) shared.push_back(name);
      }
      if (shared.empty()) continue;
      const JointTable<S> ma = marginalize(em.table(a), shared);
      const JointTable<S> mb = marginalize(em.table(b), shared);
      double deviation = 0.0;
      bool agree = true;
      for (std::size_t k = 0; k < ma.size(); ++k) {
        deviation = std::max(deviation, ScalarTraits<S>::distance(ma[k], mb[k]));
        agree = agree && ScalarTraits<S>::near(ma[k], mb[k], tol);
      }
      if (!agree) report.disturbance.push_back({a, b, std::move(shared), deviation});
    }
  }
  report.consistent = report.normalization.empty() && report.disturbance.empty();
  return report;
}

/// Throws ValidationError summarising the first failure.
template <class S>
void require_consistent(const EmpiricalModel<S>& em, double tol = kDefaultTolerance) {
  const ValidationReport r = validate(em, tol);
  if (r.consistent) return;
  if (!r.normalization.empty()) {
    const auto& f = r.normalization.front();
    throw ValidationError("context '" + f.context_key + "' is not normalized (sum " + format_double(f.sum) + ")");
  }
  const auto& f = r.disturbance.front();
  throw ValidationError("contexts '" + em.scenario().context_key(f.first) + "' and '" +
                        em.scenario().context_key(f.second) + "' disagree on shared marginals (max deviation " +
                        format_double(f.max_deviation) + ")");
}

/// Three binary observables on a triangle of pairwise contexts, each table a
/// perfect anticorrelation: p(0,1) = p(1,0) = 1/2. Pairwise consistent, with
/// no global joint distribution.
EmpiricalModel<Rational> triangle_example();

/// Grid-snaps every cell to k/denominator. Returns the model together with
/// the largest snap distance.
std::pair<EmpiricalModel<Rational>, double> snap_model(const EmpiricalModel<double>& em,
                                                       std::int64_t denominator = kDefaultSnapDenominator);

template <class To, class From>
EmpiricalModel<To> cast_model(const EmpiricalModel<From>& em) {
  std::vector<JointTable<To>> tables;
  for (const auto& t : em.tables()) tables.push_back(cast_table<To>(t));
  return EmpiricalModel<To>(em.scenario(), std::move(tables));
}

}  // namespace contextcost
