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

// Auxiliary contextual variable M for a single-state model. The channel
// C -> (λ, M) -> O draws M from p(m|c) and the outcome from p(o|λ,m); the
// response carries no context argument, so p(o|λ,M,C) = p(o|λ,M) holds by
// construction. A channel mediates a model when it reproduces ξ(o|c,λ).

#include <string>
#include <vector>

#include "contextcost/ontmodel.hpp"

namespace contextcost {

template <ProbabilityScalar S>
struct AuxChannel {
  std::vector<std::string> contexts;  // context keys, as in the model
  std::vector<std::string> ontic_states;
  std::vector<std::string> m_alphabet;
  std::vector<Dist<S>> context_to_m;                // [context] -> p(m|c)
  std::vector<std::vector<Dist<S>>> mediated_response;  // [λ][m] -> p(o|λ,m)

  bool operator==(const AuxChannel&) const = default;
};

struct MediationReport {
  bool passes = false;
  double max_deviation = 0.0;
  // Cell where the deviation is largest.
  std::string worst_context;
  std::string worst_lambda;
  std::string worst_outcome;
};

/// Refusal to cost a channel that does not mediate the model.
class MediationError : public std::runtime_error {
 public:
  explicit MediationError(MediationReport report)
      : std::runtime_error("channel does not reproduce the model's responses (max deviation " +
                           format_double(report.max_deviation) + ")"),
        report_(std::move(report)) {}
  const MediationReport& report() const noexcept { return report_; }

 private:
  MediationReport report_;
};

inline constexpr double kBoundTolerance = 1e-10;
inline constexpr double kSaturationTolerance = 1e-9;

struct CostReport {
  double i_c_o_given_lambda = 0.0;
  double i_c_m_given_lambda = 0.0;
  double h_m = 0.0;
  bool bound_satisfied = false;  // h_m >= I(C;O|λ) - 1e-10
  bool chain_satisfied = false;  // I(C;O|λ) <= I(C;M|λ) <= H(M), each within 1e-10
  bool saturated = false;        // |h_m - I(C;O|λ)| <= 1e-9
  double reproduction_max_deviation = 0.0;
};

/// Structural check: channel contexts, ontic states, and outcome alphabet
/// match the model and every component distribution is normalized.
template <class S>
void require_compatible(const SingleStateModel<S>& m, const AuxChannel<S>& ch, double tol = kDefaultTolerance) {
  if (ch.contexts != m.contexts()) throw ValidationError("channel contexts do not match the model");
  if (ch.ontic_states != m.ontic_states()) throw ValidationError("channel ontic states do not match the model");
  if (ch.m_alphabet.empty()) throw ValidationError("channel has an empty M alphabet");
  detail::require_unique(ch.m_alphabet, "M symbol");
  if (ch.context_to_m.size() != ch.contexts.size()) throw ValidationError("p(m|c) must cover every context");
  for (std::size_t c = 0; c < ch.context_to_m.size(); ++c) {
    if (ch.context_to_m[c].alphabet() != ch.m_alphabet) {
      throw ValidationError("p(m|" + ch.contexts[c] + ") is not over the M alphabet");
    }
    if (!ch.context_to_m[c].is_normalized(tol)) {
      throw ValidationError("p(m|" + ch.contexts[c] + ") is not normalized");
    }
  }
  if (ch.mediated_response.size() != ch.ontic_states.size()) {
    throw ValidationError("p(o|λ,m) must cover every ontic state");
  }
  for (std::size_t l = 0; l < ch.mediated_response.size(); ++l) {
    if (ch.mediated_response[l].size() != ch.m_alphabet.size()) {
      throw ValidationError("p(o|" + ch.ontic_states[l] + ",m) must cover every m");
    }
    for (std::size_t k = 0; k < ch.m_alphabet.size(); ++k) {
      const Dist<S>& r = ch.mediated_response[l][k];
      if (r.alphabet() != m.outcome_alphabet()) {
        throw ValidationError("p(o|" + ch.ontic_states[l] + "," + ch.m_alphabet[k] +
                              ") is not over the model's outcome alphabet");
      }
      if (!r.is_normalized(tol)) {
        throw ValidationError("p(o|" + ch.ontic_states[l] + "," + ch.m_alphabet[k] + ") is not normalized");
      }
    }
  }
}

/// Compares Σ_m p(m|c) p(o|λ,m) against ξ(o|c,λ) at every cell.
template <class S>
MediationReport check_mediation(const SingleStateModel<S>& m, const AuxChannel<S>& ch, double tol = kDefaultTolerance) {
  validate_model(m, tol);
  require_compatible(m, ch, tol);
  MediationReport report;
  report.passes = true;
  bool first = true;
  for (std::size_t c = 0; c < m.contexts().size(); ++c) {
    for (std::size_t l = 0; l < m.ontic_states().size(); ++l) {
      for (std::size_t o = 0; o < m.outcome_alphabet().size(); ++o) {
        S mixed = ScalarTraits<S>::zero();
        for (std::size_t k = 0; k < ch.m_alphabet.size(); ++k) {
          mixed += ch.context_to_m[c][k] * ch.mediated_response[l][k][o];
        }
        const S& target = m.response(c, l)[o];
        const double dev = ScalarTraits<S>::distance(mixed, target);
        if (first || dev > report.max_deviation) {
          report.max_deviation = dev;
          report.worst_context = m.contexts()[c];
          report.worst_lambda = m.ontic_states()[l];
          report.worst_outcome = m.outcome_alphabet()[o];
          first = false;
        }
        report.passes = report.passes && ScalarTraits<S>::near(mixed, target, tol);
      }
    }
  }
  return report;
}

/// p(m) = Σ_c p(c) p(m|c).
template <class S>
Dist<S> m_marginal(const SingleStateModel<S>& m, const AuxChannel<S>& ch) {
  std::vector<S> pm(ch.m_alphabet.size(), ScalarTraits<S>::zero());
  for (std::size_t c = 0; c < ch.contexts.size(); ++c) {
    for (std::size_t k = 0; k < pm.size(); ++k) pm[k] += m.context_prior()[c] * ch.context_to_m[c][k];
  }
  return Dist<S>(ch.m_alphabet, std::move(pm));
}

/// H(M) under the model's context prior. Throws MediationError when the
/// channel does not reproduce the model.
template <class S>
double channel_cost(const SingleStateModel<S>& m, const AuxChannel<S>& ch, double base = 2.0,
                    double tol = kDefaultTolerance) {
  MediationReport report = check_mediation(m, ch, tol);
  if (!report.passes) throw MediationError(std::move(report));
  return entropy(m_marginal(m, ch), base, tol);
}

/// Joint table over (C, lambda, M, O) with cells p(c)·μ(λ)·p(m|c)·p(o|λ,m).
template <class S>
JointTable<S> extended_joint(const SingleStateModel<S>& m, const AuxChannel<S>& ch) {
  std::vector<S> cells;
  for (std::size_t c = 0; c < ch.contexts.size(); ++c) {
    for (std::size_t l = 0; l < ch.ontic_states.size(); ++l) {
      const S pcl = m.context_prior()[c] * m.preparation()[l];
      for (std::size_t k = 0; k < ch.m_alphabet.size(); ++k) {
        const S pclm = pcl * ch.context_to_m[c][k];
        for (std::size_t o = 0; o < m.outcome_alphabet().size(); ++o) {
          cells.push_back(pclm * ch.mediated_response[l][k][o]);
        }
      }
    }
  }
  return JointTable<S>({{kContextVar, ch.contexts},
                        {kOnticVar, ch.ontic_states},
                        {kAuxVar, ch.m_alphabet},
                        {kOutcomeVar, m.outcome_alphabet()}},
                       std::move(cells));
}

/// Evaluates H(M) >= I(C;O|λ) and the chain I(C;O|λ) <= I(C;M|λ) <= H(M)
/// for a mediating channel. Throws MediationError otherwise.
template <class S>
CostReport verify_bound(const SingleStateModel<S>& m, const AuxChannel<S>& ch, double base = 2.0,
                        double tol = kDefaultTolerance) {
  MediationReport mediation = check_mediation(m, ch, tol);
  if (!mediation.passes) throw MediationError(std::move(mediation));
  const JointTable<S> ext = extended_joint(m, ch);
  CostReport r;
  r.i_c_o_given_lambda = contextual_dependence(m, base, tol);
  r.i_c_m_given_lambda = conditional_mutual_information(ext, kContextVar, kAuxVar, kOnticVar, base, tol);
  r.h_m = entropy(ext, {kAuxVar}, base, tol);
  r.reproduction_max_deviation = mediation.max_deviation;
  r.bound_satisfied = r.h_m >= r.i_c_o_given_lambda - kBoundTolerance;
  r.chain_satisfied = r.i_c_o_given_lambda <= r.i_c_m_given_lambda + kBoundTolerance &&
                      r.i_c_m_given_lambda <= r.h_m + kBoundTolerance;
  r.saturated = std::abs(r.h_m - r.i_c_o_given_lambda) <= kSaturationTolerance;
  return r;
}

template <ProbabilityScalar S>
struct MinimalCost {
  AuxChannel<S> channel;
  CostReport report;
  /// Context keys grouped by response family; cell k is M = "m<k>".
  std::vector<std::vector<std::string>> cells;
};

/// Deterministic channel M = g(C) that assigns one symbol per class of
/// contexts with identical response families ξ(·|c,·). Classes are formed
/// in context order; a context joins the first class whose representative
/// matches it. In float mode matching is within tolerance, which can merge
/// near-equal families and under-report the cost.
template <class S>
std::vector<std::size_t> response_partition(const SingleStateModel<S>& m, double tol = kDefaultTolerance) {
  std::vector<std::size_t> cell_of(m.contexts().size());
  std::vector<std::size_t> representative;
  for (std::size_t c = 0; c < m.contexts().size(); ++c) {
    std::size_t found = representative.size();
    for (std::size_t k = 0; k < representative.size() && found == representative.size(); ++k) {
      bool same = true;
      const std::size_t r = representative[k];
      for (std::size_t l = 0; l < m.ontic_states().size() && same; ++l) {
        for (std::size_t o = 0; o < m.outcome_alphabet().size() && same; ++o) {
          same = ScalarTraits<S>::near(m.response(c, l)[o], m.response(r, l)[o], tol);
        }
      }
      if (same) found = k;
    }
    if (found == representative.size()) representative.push_back(c);
    cell_of[c] = found;
  }
  return cell_of;
}

/// Channel for a given context partition: p(m|c) = δ(m, cell(c)) and
/// p(o|λ,m) = ξ(o|c_m,λ) for the first context c_m of cell m.
template <class S>
AuxChannel<S> partition_channel(const SingleStateModel<S>& m, const std::vector<std::size_t>& cell_of) {
  std::size_t cells = 0;
  for (std::size_t k : cell_of) cells = std::max(cells, k + 1);
  AuxChannel<S> ch;
  ch.contexts = m.contexts();
  ch.ontic_states = m.ontic_states();
  for (std::size_t k = 0; k < cells; ++k) ch.m_alphabet.push_back("m" + std::to_string(k));
  std::vector<std::size_t> first(cells, cell_of.size());
  for (std::size_t c = 0; c < cell_of.size(); ++c) {
    if (first[cell_of[c]] == cell_of.size()) first[cell_of[c]] = c;
    ch.context_to_m.push_back(Dist<S>::point(ch.m_alphabet, ch.m_alphabet[cell_of[c]]));
  }
  for (std::size_t l = 0; l < m.ontic_states().size(); ++l) {
    std::vector<Dist<S>> row;
    for (std::size_t k = 0; k < cells; ++k) {
      if (first[k] == cell_of.size()) throw ValidationError("partition has an empty cell");
      row.push_back(m.response(first[k], l));
    }
    ch.mediated_response.push_back(std::move(row));
  }
  return ch;
}

/// Coarsest deterministic mediating channel and its cost report.
template <class S>
MinimalCost<S> minimal_deterministic_cost(const SingleStateModel<S>& m, double base = 2.0,
                                          double tol = kDefaultTolerance) {
  validate_model(m, tol);
  const std::vector<std::size_t> cell_of = response_partition(m, tol);
  MinimalCost<S> out;
  out.channel = partition_channel(m, cell_of);
  out.cells.resize(out.channel.m_alphabet.size());
  for (std::size_t c = 0; c < cell_of.size(); ++c) out.cells[cell_of[c]].push_back(m.contexts()[c]);
  out.report = verify_bound(m, out.channel, base, tol);
  return out;
}

}  // namespace contextcost
