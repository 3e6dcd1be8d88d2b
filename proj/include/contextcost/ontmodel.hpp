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

// Finite single-state ontological models. One ontic space is shared by every
// context; contexts act only through the response functions, and the context
// is drawn independently of the ontic state:
//
//   p(c, λ, o) = p(c) · μ(λ) · ξ(o | c, λ)

#include <map>
#include <string>
#include <vector>

#include "contextcost/scenario.hpp"

namespace contextcost {

inline const std::string kContextVar = "C";
inline const std::string kOnticVar = "lambda";
inline const std::string kOutcomeVar = "O";
inline const std::string kAuxVar = "M";

template <ProbabilityScalar S>
class SingleStateModel {
 public:
  SingleStateModel() = default;

  /// `responses[c][l]` is ξ(·|c, λ_l) over the shared outcome alphabet.
  /// Every context must have the same joint outcome alphabet.
  SingleStateModel(Scenario scenario, Dist<S> preparation, Dist<S> context_prior,
                   std::vector<std::vector<Dist<S>>> responses)
      : scenario_(std::move(scenario)),
        preparation_(std::move(preparation)),
        prior_(std::move(context_prior)),
        responses_(std::move(responses)) {
    outcomes_ = scenario_.context_outcome_keys(0);
    for (std::size_t c = 1; c < scenario_.contexts().size(); ++c) {
      if (scenario_.context_outcome_keys(c) != outcomes_) {
        throw ValidationError("context '" + scenario_.context_key(c) +
                              "' has a different outcome alphabet from the first context");
      }
    }
    if (prior_.alphabet() != scenario_.context_keys()) {
      throw ValidationError("context prior must list exactly the scenario's contexts in order");
    }
    const auto& lambdas = preparation_.alphabet();
    if (responses_.size() != scenario_.contexts().size()) {
      throw ModelIncompleteError("responses must cover every context");
    }
    for (std::size_t c = 0; c < responses_.size(); ++c) {
      if (responses_[c].size() != lambdas.size()) {
        throw ModelIncompleteError("responses for context '" + scenario_.context_key(c) +
                                   "' must cover every ontic state");
      }
      for (std::size_t l = 0; l < lambdas.size(); ++l) {
        if (responses_[c][l].alphabet() != outcomes_) {
          throw ValidationError("response (" + scenario_.context_key(c) + ", " + lambdas[l] +
                                ") is not over the outcome alphabet");
        }
      }
    }
  }

  const Scenario& scenario() const { return scenario_; }
  const Dist<S>& preparation() const { return preparation_; }
  const Dist<S>& context_prior() const { return prior_; }
  const std::vector<std::string>& ontic_states() const { return preparation_.alphabet(); }
  const std::vector<std::string>& contexts() const { return prior_.alphabet(); }
  const std::vector<std::string>& outcome_alphabet() const { return outcomes_; }
  const std::vector<std::vector<Dist<S>>>& responses() const { return responses_; }
  const Dist<S>& response(std::size_t c, std::size_t l) const { return responses_[c][l]; }

  /// Same model under another context prior.
  SingleStateModel with_prior(Dist<S> prior) const {
    return SingleStateModel(scenario_, preparation_, std::move(prior), responses_);
  }

  bool operator==(const SingleStateModel&) const = default;

 private:
  Scenario scenario_;
  Dist<S> preparation_;
  Dist<S> prior_;
  std::vector<std::vector<Dist<S>>> responses_;
  std::vector<std::string> outcomes_;
};

/// Throws ValidationError if μ, p(C), or any ξ(·|c,λ) is unnormalized.
template <class S>
void validate_model(const SingleStateModel<S>& m, double tol = kDefaultTolerance) {
  require_normalized(m.preparation(), tol);
  require_normalized(m.context_prior(), tol);
  for (std::size_t c = 0; c < m.contexts().size(); ++c) {
    for (std::size_t l = 0; l < m.ontic_states().size(); ++l) {
      if (!m.response(c, l).is_normalized(tol)) {
        throw ValidationError("response (" + m.contexts()[c] + ", " + m.ontic_states()[l] +
                              ") is not normalized: sums to " + ScalarTraits<S>::format(m.response(c, l).total()));
      }
    }
  }
}

/// p(o|c) = Σ_λ μ(λ) ξ(o|c,λ), one distribution per context.
template <class S>
std::vector<Dist<S>> reproduce_statistics(const SingleStateModel<S>& m, double tol = kDefaultTolerance) {
  validate_model(m, tol);
  std::vector<Dist<S>> out;
  for (std::size_t c = 0; c < m.contexts().size(); ++c) {
    std::vector<S> mass(m.outcome_alphabet().size(), ScalarTraits<S>::zero());
    for (std::size_t l = 0; l < m.ontic_states().size(); ++l) {
      const S& mu = m.preparation()[l];
      for (std::size_t o = 0; o < mass.size(); ++o) mass[o] += mu * m.response(c, l)[o];
    }
    out.emplace_back(m.outcome_alphabet(), std::move(mass));
  }
  return out;
}

/// The statistics of `m` as an empirical model on its own scenario.
template <class S>
EmpiricalModel<S> to_empirical_model(const SingleStateModel<S>& m, double tol = kDefaultTolerance) {
  std::vector<JointTable<S>> tables;
  const std::vector<Dist<S>> stats = reproduce_statistics(m, tol);
  for (std::size_t c = 0; c < stats.size(); ++c) {
    tables.emplace_back(m.scenario().context_variables(c), stats[c].mass());
  }
  return EmpiricalModel<S>(m.scenario(), std::move(tables));
}

/// Joint table over (C, lambda, O) with cells p(c)·μ(λ)·ξ(o|c,λ).
template <class S>
JointTable<S> joint_law(const SingleStateModel<S>& m, double tol = kDefaultTolerance) {
  validate_model(m, tol);
  std::vector<S> cells;
  cells.reserve(m.contexts().size() * m.ontic_states().size() * m.outcome_alphabet().size());
  for (std::size_t c = 0; c < m.contexts().size(); ++c) {
    for (std::size_t l = 0; l < m.ontic_states().size(); ++l) {
      const S weight = m.context_prior()[c] * m.preparation()[l];
      for (std::size_t o = 0; o < m.outcome_alphabet().size(); ++o) cells.push_back(weight * m.response(c, l)[o]);
    }
  }
  return JointTable<S>({{kContextVar, m.contexts()}, {kOnticVar, m.ontic_states()}, {kOutcomeVar, m.outcome_alphabet()}},
                       std::move(cells));
}

/// I(C;O|λ) on the model's joint law.
template <class S>
double contextual_dependence(const SingleStateModel<S>& m, double base = 2.0, double tol = kDefaultTolerance) {
  return conditional_mutual_information(joint_law(m, tol), kContextVar, kOutcomeVar, kOnticVar, base, tol);
}

/// Context-dependent bit f(C).
struct InterventionBit {
  std::map<std::string, int> bit;

  int operator()(const std::string& context) const {
    auto it = bit.find(context);
    if (it == bit.end()) throw LookupError("intervention bit undefined on context '" + context + "'");
    return it->second;
  }
};

/// Λ = {0,1} with uniform μ and deterministic response O = λ ⊕ f(c). Each
/// context is a single binary observable named after the context.
template <class S>
SingleStateModel<S> xor_example(const InterventionBit& f, const Dist<S>& prior) {
  const std::vector<std::string> bits{"0", "1"};
  std::vector<Observable> observables;
  std::vector<Context> contexts;
  for (const std::string& c : prior.alphabet()) {
    observables.push_back({c, bits});
    contexts.push_back({c});
  }
  std::vector<std::vector<Dist<S>>> responses;
  for (const std::string& c : prior.alphabet()) {
    const int fc = f(c);
    if (fc != 0 && fc != 1) throw ValidationError("intervention bit must be 0 or 1");
    std::vector<Dist<S>> row;
    for (int lambda = 0; lambda < 2; ++lambda) row.push_back(Dist<S>::point(bits, bits[lambda ^ fc]));
    responses.push_back(std::move(row));
  }
  return SingleStateModel<S>(Scenario(std::move(observables), std::move(contexts)), Dist<S>::uniform(bits), prior,
                             std::move(responses));
}

/// True iff ξ(·|c,λ) is the same for every context at every λ (exactly, or
/// within tolerance in float mode).
template <class S>
bool is_response_noncontextual(const SingleStateModel<S>& m, double tol = kDefaultTolerance) {
  for (std::size_t c = 1; c < m.contexts().size(); ++c) {
    for (std::size_t l = 0; l < m.ontic_states().size(); ++l) {
      for (std::size_t o = 0; o < m.outcome_alphabet().size(); ++o) {
        if (!ScalarTraits<S>::near(m.response(c, l)[o], m.response(0, l)[o], tol)) return false;
      }
    }
  }
  return true;
}

}  // namespace contextcost
