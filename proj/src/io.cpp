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

#include "contextcost/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace contextcost {
namespace {

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(child(path, key), "missing field");
  return *it;
}

void require_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ParseError(child(path, it.key()), "unexpected field");
  }
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], child(path, i)));
  return out;
}

template <class S>
S as_prob(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return ScalarTraits<S>::parse(j.get<std::string>());
    if (j.is_number_integer()) return ScalarTraits<S>::parse(std::to_string(j.get<long long>()));
    if (j.is_number()) return ScalarTraits<S>::parse(format_double(j.get<double>()));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(path, "expected a probability string");
}

template <class S>
Json prob_json(const S& x) {
  return ScalarTraits<S>::format(x);
}

/// Reads {label: prob} for exactly the labels given, in that order.
template <class S>
std::vector<S> prob_map(const Json& j, const std::string& path, const std::vector<std::string>& labels) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  std::vector<S> out;
  for (const std::string& label : labels) {
    auto it = j.find(label);
    if (it == j.end()) throw ParseError(child(path, label), "missing entry");
    const S p = as_prob<S>(*it, child(path, label));
    if (ScalarTraits<S>::is_negative(p)) throw ParseError(child(path, label), "negative probability");
    out.push_back(p);
  }
  if (j.size() != labels.size()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (std::find(labels.begin(), labels.end(), it.key()) == labels.end()) {
        throw ParseError(child(path, it.key()), "unknown label");
      }
    }
  }
  return out;
}

template <class S>
Json prob_object(const std::vector<std::string>& labels, const std::vector<S>& mass) {
  Json out = Json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]] = prob_json(mass[i]);
  return out;
}

Scenario scenario_from_json(const Json& j) {
  const Json& obs = field(j, "", "observables");
  if (!obs.is_array()) throw ParseError("observables", "expected an array");
  std::vector<Observable> observables;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const std::string path = child("observables", i);
    require_keys(obs[i], path, {"name", "outcomes"});
    observables.push_back(
        {as_string(field(obs[i], path, "name"), child(path, "name")),
         string_list(field(obs[i], path, "outcomes"), child(path, "outcomes"))});
  }
  const Json& ctx = field(j, "", "contexts");
  if (!ctx.is_array()) throw ParseError("contexts", "expected an array");
  std::vector<Context> contexts;
  for (std::size_t i = 0; i < ctx.size(); ++i) contexts.push_back(string_list(ctx[i], child("contexts", i)));
  try {
    return Scenario(std::move(observables), std::move(contexts));
  } catch (const ValidationError& e) {
    throw ParseError("contexts", e.what());
  }
}

Json scenario_json(const Scenario& sc) {
  Json j;
  Json obs = Json::array();
  for (const Observable& o : sc.observables()) obs.push_back({{"name", o.name}, {"outcomes", o.outcomes}});
  j["observables"] = std::move(obs);
  Json ctx = Json::array();
  for (const Context& c : sc.contexts()) ctx.push_back(c);
  j["contexts"] = std::move(ctx);
  return j;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col), "invalid JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

template <class S>
Json to_json(const EmpiricalModel<S>& em) {
  const Scenario& sc = em.scenario();
  Json j = scenario_json(sc);
  Json tables = Json::object();
  for (std::size_t c = 0; c < sc.contexts().size(); ++c) {
    tables[sc.context_key(c)] = prob_object(sc.context_outcome_keys(c), em.table(c).cells());
  }
  j["tables"] = std::move(tables);
  return j;
}

template <class S>
EmpiricalModel<S> empirical_model_from_json(const Json& j) {
  require_keys(j, "", {"observables", "contexts", "tables"});
  Scenario sc = scenario_from_json(j);
  const Json& tables = field(j, "", "tables");
  if (!tables.is_object()) throw ParseError("tables", "expected an object");
  std::vector<JointTable<S>> out;
  const std::vector<std::string> keys = sc.context_keys();
  for (std::size_t c = 0; c < keys.size(); ++c) {
    const std::string path = child("tables", keys[c]);
    const Json& t = field(tables, "tables", keys[c]);
    out.emplace_back(sc.context_variables(c), prob_map<S>(t, path, sc.context_outcome_keys(c)));
  }
  for (auto it = tables.begin(); it != tables.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
      throw ParseError(child("tables", it.key()), "table for an undeclared context");
    }
  }
  return EmpiricalModel<S>(std::move(sc), std::move(out));
}

template <class S>
Json to_json(const SingleStateModel<S>& m) {
  Json j = scenario_json(m.scenario());
  j["lambda"] = m.ontic_states();
  j["mu"] = prob_object(m.ontic_states(), m.preparation().mass());
  j["prior"] = prior_to_json(m.context_prior());
  Json responses = Json::object();
  for (std::size_t c = 0; c < m.contexts().size(); ++c) {
    Json per_lambda = Json::object();
    for (std::size_t l = 0; l < m.ontic_states().size(); ++l) {
      per_lambda[m.ontic_states()[l]] = prob_object(m.outcome_alphabet(), m.response(c, l).mass());
    }
    responses[m.contexts()[c]] = std::move(per_lambda);
  }
  j["responses"] = std::move(responses);
  return j;
}

template <class S>
SingleStateModel<S> ontological_model_from_json(const Json& j) {
  require_keys(j, "", {"observables", "contexts", "lambda", "mu", "prior", "responses"});
  Scenario sc = scenario_from_json(j);
  const std::vector<std::string> lambdas = string_list(field(j, "", "lambda"), "lambda");
  if (lambdas.empty()) throw ParseError("lambda", "empty ontic space");
  std::vector<std::string> outcomes = sc.context_outcome_keys(0);
  const std::vector<std::string> keys = sc.context_keys();
  try {
    Dist<S> mu(lambdas, prob_map<S>(field(j, "", "mu"), "mu", lambdas));
    Dist<S> prior = prior_from_json<S>(field(j, "", "prior"), keys);
    const Json& resp = field(j, "", "responses");
    if (!resp.is_object()) throw ParseError("responses", "expected an object");
    std::vector<std::vector<Dist<S>>> responses;
    for (const std::string& c : keys) {
      auto ctx = resp.find(c);
      if (ctx == resp.end()) throw ParseError(child("responses", c), "missing response for context");
      std::vector<Dist<S>> row;
      for (const std::string& l : lambdas) {
        const std::string path = child(child("responses", c), l);
        auto entry = ctx->find(l);
        if (entry == ctx->end()) throw ParseError(path, "missing response for (context, lambda)");
        row.emplace_back(outcomes, prob_map<S>(*entry, path, outcomes));
      }
      responses.push_back(std::move(row));
    }
    return SingleStateModel<S>(std::move(sc), std::move(mu), std::move(prior), std::move(responses));
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ParseError("", e.what());
  }
}

template <class S>
Json to_json(const AuxChannel<S>& ch) {
  Json j;
  j["m_alphabet"] = ch.m_alphabet;
  Json pmc = Json::object();
  for (std::size_t c = 0; c < ch.contexts.size(); ++c) pmc[ch.contexts[c]] = prob_object(ch.m_alphabet, ch.context_to_m[c].mass());
  j["p_m_given_c"] = std::move(pmc);
  Json resp = Json::object();
  for (std::size_t l = 0; l < ch.ontic_states.size(); ++l) {
    Json per_m = Json::object();
    for (std::size_t k = 0; k < ch.m_alphabet.size(); ++k) {
      const Dist<S>& d = ch.mediated_response[l][k];
      per_m[ch.m_alphabet[k]] = prob_object(d.alphabet(), d.mass());
    }
    resp[ch.ontic_states[l]] = std::move(per_m);
  }
  j["response"] = std::move(resp);
  return j;
}

template <class S>
AuxChannel<S> channel_from_json(const Json& j, const SingleStateModel<S>& model) {
  require_keys(j, "", {"m_alphabet", "p_m_given_c", "response"});
  AuxChannel<S> ch;
  ch.contexts = model.contexts();
  ch.ontic_states = model.ontic_states();
  ch.m_alphabet = string_list(field(j, "", "m_alphabet"), "m_alphabet");
  if (ch.m_alphabet.empty()) throw ParseError("m_alphabet", "empty M alphabet");
  try {
    const Json& pmc = field(j, "", "p_m_given_c");
    if (!pmc.is_object()) throw ParseError("p_m_given_c", "expected an object");
    if (pmc.size() != ch.contexts.size()) {
      throw ParseError("p_m_given_c", "contexts do not match the model");
    }
    for (const std::string& c : ch.contexts) {
      const Json& row = field(pmc, "p_m_given_c", c);
      ch.context_to_m.emplace_back(ch.m_alphabet, prob_map<S>(row, child("p_m_given_c", c), ch.m_alphabet));
    }
    const Json& resp = field(j, "", "response");
    if (!resp.is_object()) throw ParseError("response", "expected an object");
    if (resp.size() != ch.ontic_states.size()) throw ParseError("response", "ontic states do not match the model");
    for (const std::string& l : ch.ontic_states) {
      const Json& per_m = field(resp, "response", l);
      std::vector<Dist<S>> row;
      for (const std::string& m : ch.m_alphabet) {
        const std::string path = child(child("response", l), m);
        row.emplace_back(model.outcome_alphabet(),
                         prob_map<S>(field(per_m, child("response", l), m), path, model.outcome_alphabet()));
      }
      ch.mediated_response.push_back(std::move(row));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ParseError("", e.what());
  }
  return ch;
}

template <class S>
Json prior_to_json(const Dist<S>& prior) {
  return prob_object(prior.alphabet(), prior.mass());
}

template <class S>
Dist<S> prior_from_json(const Json& j, const std::vector<std::string>& contexts) {
  return Dist<S>(contexts, prob_map<S>(j, "prior", contexts));
}

Json report_number(double x) { return round_sig12(x); }

Json to_json(const ValidationReport& r, const Scenario& sc) {
  Json j;
  j["consistent"] = r.consistent;
  Json norm = Json::array();
  for (const auto& f : r.normalization) norm.push_back({{"context", f.context_key}, {"sum", report_number(f.sum)}});
  j["normalization_failures"] = std::move(norm);
  Json dist = Json::array();
  for (const auto& f : r.disturbance) {
    dist.push_back({{"contexts", {sc.context_key(f.first), sc.context_key(f.second)}},
                    {"shared", f.shared},
                    {"max_deviation", report_number(f.max_deviation)}});
  }
  j["disturbance_failures"] = std::move(dist);
  return j;
}

Json to_json(const FeasibilityResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["assignment_count"] = r.assignment_count;
  j["pivots"] = r.pivots;
  j["snap_distance"] = report_number(r.snap_distance);
  if (r.witness) {
    Json w = Json::array();
    for (const auto& wa : *r.witness) {
      w.push_back({{"assignment", wa.assignment},
                   {"weight", format_rational(wa.weight)},
                   {"weight_value", report_number(nearest_double(wa.weight))}});
    }
    j["witness"] = std::move(w);
  }
  if (r.certificate) {
    Json c = Json::array();
    for (std::size_t i = 0; i < r.certificate->size(); ++i) {
      c.push_back({{"constraint", r.constraint_labels.at(i)},
                   {"coefficient", format_rational((*r.certificate)[i])},
                   {"coefficient_value", report_number(nearest_double((*r.certificate)[i]))}});
    }
    j["certificate"] = std::move(c);
  }
  return j;
}

Json to_json(const CostReport& r) {
  return Json{{"i_c_o_given_lambda", report_number(r.i_c_o_given_lambda)},
              {"i_c_m_given_lambda", report_number(r.i_c_m_given_lambda)},
              {"h_m", report_number(r.h_m)},
              {"bound_satisfied", r.bound_satisfied},
              {"chain_satisfied", r.chain_satisfied},
              {"saturated", r.saturated},
              {"reproduction_max_deviation", report_number(r.reproduction_max_deviation)}};
}

Json to_json(const MediationReport& r) {
  return Json{{"passes", r.passes},
              {"max_deviation", report_number(r.max_deviation)},
              {"worst_cell", {{"context", r.worst_context}, {"lambda", r.worst_lambda}, {"outcome", r.worst_outcome}}}};
}

#define CONTEXTCOST_INSTANTIATE_IO(S)                                                        \
  template Json to_json<S>(const EmpiricalModel<S>&);                                         \
  template EmpiricalModel<S> empirical_model_from_json<S>(const Json&);                       \
  template Json to_json<S>(const SingleStateModel<S>&);                                       \
  template SingleStateModel<S> ontological_model_from_json<S>(const Json&);                   \
  template Json to_json<S>(const AuxChannel<S>&);                                             \
  template AuxChannel<S> channel_from_json<S>(const Json&, const SingleStateModel<S>&);       \
  template Json prior_to_json<S>(const Dist<S>&);                                             \
  template Dist<S> prior_from_json<S>(const Json&, const std::vector<std::string>&);

CONTEXTCOST_INSTANTIATE_IO(Rational)
CONTEXTCOST_INSTANTIATE_IO(double)

#undef CONTEXTCOST_INSTANTIATE_IO

}  // namespace contextcost
