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

// JSON model, channel, and report formats. Probabilities are written as
// strings: "p/q" (or an integer) in exact mode, shortest round-tripping
// decimals in float mode. Objects are emitted with sorted keys, so output is
// byte-deterministic.
//
//   empirical model:     {"observables":[{"name","outcomes"}], "contexts":[[names]],
//                         "tables":{context-key:{tuple-key:prob}}}
//   ontological model:   observables + contexts + {"lambda":[...], "mu":{λ:prob},
//                         "prior":{context-key:prob},
//                         "responses":{context-key:{λ:{outcome:prob}}}}
//   channel:             {"m_alphabet":[...], "p_m_given_c":{context-key:{m:prob}},
//                         "response":{λ:{m:{outcome:prob}}}}
//   prior:               {context-key:prob}

#include <json.hpp>

#include <string>

#include "contextcost/context_cost.hpp"
#include "contextcost/marginal_solver.hpp"
#include "contextcost/ontmodel.hpp"

namespace contextcost {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json_text(const std::string& text, const std::string& source);

/// Reads and parses a file.
Json read_json_file(const std::string& path);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump_json(const Json& j);

template <class S>
Json to_json(const EmpiricalModel<S>& em);
template <class S>
EmpiricalModel<S> empirical_model_from_json(const Json& j);

template <class S>
Json to_json(const SingleStateModel<S>& m);
template <class S>
SingleStateModel<S> ontological_model_from_json(const Json& j);

/// Channel contexts and ontic states are ordered after `model`.
template <class S>
Json to_json(const AuxChannel<S>& ch);
template <class S>
AuxChannel<S> channel_from_json(const Json& j, const SingleStateModel<S>& model);

template <class S>
Json prior_to_json(const Dist<S>& prior);
template <class S>
Dist<S> prior_from_json(const Json& j, const std::vector<std::string>& contexts);

Json to_json(const ValidationReport& r, const Scenario& sc);
Json to_json(const FeasibilityResult& r);
Json to_json(const CostReport& r);
Json to_json(const MediationReport& r);

/// Numeric report value rounded to 12 significant digits.
Json report_number(double x);

}  // namespace contextcost
