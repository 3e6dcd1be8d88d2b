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

#include "contextcost/scenario.hpp"

#include <algorithm>
#include <set>

namespace contextcost {
namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string context_key(const Context& context) { return join(context, '|'); }

std::string tuple_key(const std::vector<std::string>& outcomes) { return join(outcomes, ','); }

std::vector<std::string> split_key(const std::string& key, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = key.find(sep, start);
    parts.push_back(key.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

Scenario::Scenario(std::vector<Observable> observables, std::vector<Context> contexts)
    : observables_(std::move(observables)), contexts_(std::move(contexts)) {
  if (observables_.empty()) throw ValidationError("scenario has no observables");
  std::vector<std::string> names;
  for (const Observable& o : observables_) {
    if (o.name.empty()) throw ValidationError("observable with empty name");
    if (o.name.find_first_of("|,") != std::string::npos) {
      throw ValidationError("observable name '" + o.name + "' contains a key separator");
    }
    if (o.outcomes.empty()) throw ValidationError("observable '" + o.name + "' has no outcomes");
    for (const std::string& label : o.outcomes) {
      if (label.empty() || label.find_first_of("|,") != std::string::npos) {
        throw ValidationError("observable '" + o.name + "' has an invalid outcome label '" + label + "'");
      }
    }
    detail::require_unique(o.outcomes, "outcome");
    names.push_back(o.name);
  }
  detail::require_unique(names, "observable");
  if (contexts_.empty()) throw ValidationError("scenario has no contexts");
  std::set<std::set<std::string>> seen;
  for (const Context& c : contexts_) {
    if (c.empty()) throw ValidationError("empty context");
    detail::require_unique(c, "observable in context");
    for (const std::string& name : c) {
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ValidationError("context '" + contextcost::context_key(c) + "' names undeclared observable '" + name + "'");
      }
    }
    if (!seen.insert(std::set<std::string>(c.begin(), c.end())).second) {
      throw ValidationError("duplicate context '" + contextcost::context_key(c) + "'");
    }
  }
}

std::size_t Scenario::observable_index(const std::string& name) const {
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    if (observables_[i].name == name) return i;
  }
  throw LookupError("unknown observable '" + name + "'");
}

std::size_t Scenario::context_index(const std::string& key) const {
  for (std::size_t i = 0; i < contexts_.size(); ++i) {
    if (context_key(i) == key) return i;
  }
  throw LookupError("unknown context '" + key + "'");
}

std::vector<std::string> Scenario::context_keys() const {
  std::vector<std::string> keys;
  for (std::size_t i = 0; i < contexts_.size(); ++i) keys.push_back(context_key(i));
  return keys;
}

std::vector<Variable> Scenario::context_variables(std::size_t i) const {
  std::vector<Variable> vars;
  for (const std::string& name : contexts_.at(i)) vars.push_back({name, observable(name).outcomes});
  return vars;
}

std::vector<std::string> Scenario::context_outcome_keys(std::size_t i) const {
  const JointTable<double> shape = JointTable<double>::zeros(context_variables(i));
  std::vector<std::string> keys;
  keys.reserve(shape.size());
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    const std::vector<std::size_t> t = shape.tuple_of(flat);
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < t.size(); ++k) labels.push_back(shape.variables()[k].alphabet[t[k]]);
    keys.push_back(tuple_key(labels));
  }
  return keys;
}

EmpiricalModel<Rational> triangle_example() {
  const std::vector<std::string> bits{"0", "1"};
  Scenario sc({{"o1", bits}, {"o2", bits}, {"o3", bits}}, {{"o1", "o2"}, {"o2", "o3"}, {"o3", "o1"}});
  const Rational half(1, 2);
  std::vector<JointTable<Rational>> tables;
  for (std::size_t i = 0; i < 3; ++i) {
    tables.emplace_back(sc.context_variables(i), std::vector<Rational>{0, half, half, 0});
  }
  return EmpiricalModel<Rational>(std::move(sc), std::move(tables));
}

std::pair<EmpiricalModel<Rational>, double> snap_model(const EmpiricalModel<double>& em, std::int64_t denominator) {
  double distance = 0.0;
  std::vector<JointTable<Rational>> tables;
  for (const auto& t : em.tables()) {
    std::vector<Rational> cells;
    for (double c : t.cells()) {
      cells.push_back(snap_to_grid(c, denominator));
      distance = std::max(distance, std::abs(nearest_double(cells.back()) - c));
    }
    tables.emplace_back(t.variables(), std::move(cells));
  }
  return {EmpiricalModel<Rational>(em.scenario(), std::move(tables)), distance};
}

}  // namespace contextcost
