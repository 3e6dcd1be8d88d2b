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

// Seeded generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "contextcost/context_cost.hpp"
#include "contextcost/ontmodel.hpp"
#include "contextcost/scenario.hpp"

namespace contextcost::testing {

/// CONTEXTCOST_SEED if set, else a fixed default.
inline std::uint64_t suite_seed() {
  if (const char* s = std::getenv("CONTEXTCOST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20260101;
}

using Rng = std::mt19937_64;

inline std::vector<std::string> labels(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Random rational distribution with small integer weights w_i / Σw. Zero
/// weights appear with probability `zero_chance`.
inline std::vector<Rational> random_rational_mass(Rng& rng, std::size_t n, double zero_chance = 0.15) {
  std::uniform_int_distribution<int> weight(1, 12);
  std::bernoulli_distribution zero(zero_chance);
  std::vector<long> w(n);
  long total = 0;
  for (auto& x : w) {
    x = zero(rng) ? 0 : weight(rng);
    total += x;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  std::vector<Rational> out;
  for (long x : w) out.push_back(ScalarTraits<Rational>::ratio(x, total));
  return out;
}

inline std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(nearest_double(x));
  return out;
}

inline Dist<Rational> random_dist(Rng& rng, const std::vector<std::string>& alphabet, double zero_chance = 0.15) {
  return Dist<Rational>(alphabet, random_rational_mass(rng, alphabet.size(), zero_chance));
}

/// Random joint over variables with the given alphabet sizes.
inline JointTable<Rational> random_table(Rng& rng, const std::vector<std::size_t>& sizes, double zero_chance = 0.15) {
  std::vector<Variable> vars;
  std::size_t n = 1;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    static const char* const kNames[] = {"X", "Y", "Z", "W", "V", "U"};
    vars.push_back({kNames[i], labels("v", sizes[i])});
    n *= sizes[i];
  }
  return JointTable<Rational>(std::move(vars), random_rational_mass(rng, n, zero_chance));
}

/// Model generated from a random mediating channel so the pair is valid by
/// construction: ξ(o|c,λ) = Σ_m p(m|c) p(o|λ,m). Binary outcomes.
struct ModelAndChannel {
  SingleStateModel<Rational> model;
  AuxChannel<Rational> channel;
};

inline ModelAndChannel random_model_and_channel(Rng& rng, std::size_t contexts, std::size_t lambdas, std::size_t ms,
                                                bool deterministic_m = false) {
  const std::vector<std::string> bits{"0", "1"};
  const std::vector<std::string> ctx = labels("c", contexts);
  AuxChannel<Rational> ch;
  ch.contexts = ctx;
  ch.ontic_states = labels("l", lambdas);
  ch.m_alphabet = labels("m", ms);
  std::uniform_int_distribution<std::size_t> pick(0, ms - 1);
  for (std::size_t c = 0; c < contexts; ++c) {
    ch.context_to_m.push_back(deterministic_m ? Dist<Rational>::point(ch.m_alphabet, ch.m_alphabet[pick(rng)])
                                              : random_dist(rng, ch.m_alphabet, 0.3));
  }
  for (std::size_t l = 0; l < lambdas; ++l) {
    std::vector<Dist<Rational>> row;
    for (std::size_t k = 0; k < ms; ++k) row.push_back(random_dist(rng, bits, 0.4));
    ch.mediated_response.push_back(std::move(row));
  }
  std::vector<Observable> obs;
  std::vector<Context> cs;
  for (const auto& c : ctx) {
    obs.push_back({c, bits});
    cs.push_back({c});
  }
  std::vector<std::vector<Dist<Rational>>> responses;
  for (std::size_t c = 0; c < contexts; ++c) {
    std::vector<Dist<Rational>> row;
    for (std::size_t l = 0; l < lambdas; ++l) {
      std::vector<Rational> mass(2, Rational(0));
      for (std::size_t k = 0; k < ms; ++k) {
        for (std::size_t o = 0; o < 2; ++o) mass[o] += ch.context_to_m[c][k] * ch.mediated_response[l][k][o];
      }
      row.emplace_back(bits, std::move(mass));
    }
    responses.push_back(std::move(row));
  }
  SingleStateModel<Rational> m(Scenario(std::move(obs), std::move(cs)), random_dist(rng, ch.ontic_states, 0.2),
                               random_dist(rng, ctx, 0.2), std::move(responses));
  return {std::move(m), std::move(ch)};
}

/// Random model with stochastic responses.
inline SingleStateModel<Rational> random_model(Rng& rng, std::size_t contexts, std::size_t lambdas) {
  return random_model_and_channel(rng, contexts, lambdas, 3).model;
}

/// Random model whose responses are point masses; each context's response
/// family is drawn from `families` candidates so coincidences are common.
inline SingleStateModel<Rational> random_deterministic_model(Rng& rng, std::size_t contexts, std::size_t lambdas,
                                                             std::size_t families = 2) {
  const std::vector<std::string> bits{"0", "1"};
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<std::vector<int>> pool(families, std::vector<int>(lambdas));
  for (auto& f : pool) {
    for (int& b : f) b = bit(rng);
  }
  std::uniform_int_distribution<std::size_t> pick(0, families - 1);
  const std::vector<std::string> ctx = labels("c", contexts);
  std::vector<Observable> obs;
  std::vector<Context> cs;
  std::vector<std::vector<Dist<Rational>>> responses;
  for (const auto& c : ctx) {
    obs.push_back({c, bits});
    cs.push_back({c});
    const auto& family = pool[pick(rng)];
    std::vector<Dist<Rational>> row;
    for (std::size_t l = 0; l < lambdas; ++l) row.push_back(Dist<Rational>::point(bits, bits[family[l]]));
    responses.push_back(std::move(row));
  }
  return SingleStateModel<Rational>(Scenario(std::move(obs), std::move(cs)),
                                    random_dist(rng, labels("l", lambdas), 0.0), random_dist(rng, ctx, 0.0),
                                    std::move(responses));
}


/// Random consistent empirical model on n binary observables o0..o{n-1}.
/// Half the instances marginalize a random global distribution (feasible by
/// construction); the rest use pairwise contexts with uniform marginals and
/// random correlation p(same) = 2a, which is infeasible for many choices.
inline EmpiricalModel<Rational> random_binary_model(Rng& rng, std::size_t n) {
  const std::vector<std::string> bits{"0", "1"};
  std::vector<Observable> obs;
  for (std::size_t i = 0; i < n; ++i) obs.push_back({"o" + std::to_string(i), bits});
  std::bernoulli_distribution coin(0.5);
  const bool from_global = coin(rng);

  std::vector<Context> contexts;
  const std::size_t subsets = (std::size_t{1} << n) - 1;
  for (std::size_t mask = 1; mask <= subsets; ++mask) {
    Context c;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) c.push_back(obs[i].name);
    }
    const bool allowed = from_global || c.size() <= 2;
    const bool pair_heavy = !from_global && c.size() == 2;
    const bool pick = pair_heavy ? (coin(rng) || coin(rng) || coin(rng))
                                 : (c.size() >= 2 ? coin(rng) || coin(rng) : coin(rng) && coin(rng));
    if (allowed && pick) contexts.push_back(c);
  }
  if (contexts.empty()) contexts.push_back({obs[0].name, obs[1].name});
  std::shuffle(contexts.begin(), contexts.end(), rng);
  Scenario sc(obs, contexts);

  std::vector<JointTable<Rational>> tables;
  if (from_global) {
    std::vector<Variable> vars;
    for (const auto& o : obs) vars.push_back({o.name, bits});
    JointTable<Rational> global(vars, random_rational_mass(rng, std::size_t{1} << n, 0.3));
    for (const Context& c : contexts) tables.push_back(marginalize(global, c));
  } else {
    std::uniform_int_distribution<long> eighth(0, 4);
    const Rational half(1, 2);
    for (std::size_t c = 0; c < contexts.size(); ++c) {
      if (contexts[c].size() == 1) {
        tables.emplace_back(sc.context_variables(c), std::vector<Rational>{half, half});
      } else {
        const Rational a(eighth(rng), 8);
        tables.emplace_back(sc.context_variables(c), std::vector<Rational>{a, half - a, half - a, a});
      }
    }
  }
  return EmpiricalModel<Rational>(std::move(sc), std::move(tables));
}

}  // namespace contextcost::testing
