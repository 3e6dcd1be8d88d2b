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

// Discrete probability tables over labelled alphabets and the Shannon
// quantities computed from them. Tables are templated on the probability
// scalar: `Rational` for exact mode, `double` for float mode. Logarithms are
// always evaluated in binary64.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "contextcost/errors.hpp"
#include "contextcost/rational.hpp"

namespace contextcost {

struct Variable {
  std::string name;
  std::vector<std::string> alphabet;

  bool operator==(const Variable&) const = default;
};

using VarList = std::vector<std::string>;

namespace detail {

inline std::size_t find_label(const std::vector<std::string>& labels, const std::string& label) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw LookupError("unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

inline void require_unique(const std::vector<std::string>& labels, const char* what) {
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end()) {
    throw ValidationError(std::string("duplicate ") + what + " '" + *it + "'");
  }
}

/// Reduces exact masses to lowest terms; mpq arithmetic assumes it.
template <class S>
void canonicalize(std::vector<S>& mass) {
  if constexpr (ScalarTraits<S>::exact) {
    for (S& m : mass) m.canonicalize();
  }
}

template <class S>
void require_nonnegative(const std::vector<S>& mass, const char* what) {
  for (const S& m : mass) {
    if (ScalarTraits<S>::is_negative(m)) {
      throw ValidationError(std::string("negative probability in ") + what + ": " + ScalarTraits<S>::format(m));
    }
  }
}

template <class S>
S sum(const std::vector<S>& v) {
  S total = ScalarTraits<S>::zero();
  for (const S& x : v) total += x;
  return total;
}

template <class S>
bool sums_to_one(const std::vector<S>& v, double tol) {
  return ScalarTraits<S>::near(sum(v), ScalarTraits<S>::one(), tol);
}

/// Σ p·(-log2 p) over a mass vector. Exact masses are grouped by value so a
/// uniform distribution over k symbols yields exactly std::log2(k).
template <class S>
double entropy_bits(const std::vector<S>& mass) {
  if constexpr (ScalarTraits<S>::exact) {
    std::map<S, long> groups;
    for (const S& m : mass) {
      if (sgn(m) > 0) ++groups[m];
    }
    double h = 0.0;
    for (const auto& [m, count] : groups) {
      const Rational weight = m * count;
      h += nearest_double(weight) * neg_log2(m);
    }
    return h;
  } else {
    double h = 0.0;
    for (double m : mass) {
      if (m > 0.0) h -= m * std::log2(m);
    }
    return h;
  }
}

// Shannon identities can round a few ulps below zero.
inline double clamp_rounding(double v) { return (v < 0.0 && v > -1e-12) ? 0.0 : v; }

}  // namespace detail

/// Distribution over an ordered alphabet. Masses are nonnegative; whether they
/// are normalized is checked by the operations that require it.
template <ProbabilityScalar S>
class Dist {
 public:
  Dist() = default;
  Dist(std::vector<std::string> alphabet, std::vector<S> mass)
      : alphabet_(std::move(alphabet)), mass_(std::move(mass)) {
    if (alphabet_.size() != mass_.size()) throw ValidationError("alphabet and mass sizes differ");
    if (alphabet_.empty()) throw ValidationError("empty alphabet");
    detail::require_unique(alphabet_, "symbol");
    detail::canonicalize(mass_);
    detail::require_nonnegative(mass_, "distribution");
  }

  static Dist uniform(std::vector<std::string> alphabet) {
    const long k = static_cast<long>(alphabet.size());
    std::vector<S> mass(alphabet.size(), ScalarTraits<S>::ratio(1, k));
    return Dist(std::move(alphabet), std::move(mass));
  }

  static Dist point(std::vector<std::string> alphabet, const std::string& label) {
    std::vector<S> mass(alphabet.size(), ScalarTraits<S>::zero());
    mass[detail::find_label(alphabet, label)] = ScalarTraits<S>::one();
    return Dist(std::move(alphabet), std::move(mass));
  }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<S>& mass() const { return mass_; }
  std::size_t size() const { return mass_.size(); }
  const S& operator[](std::size_t i) const { return mass_[i]; }
  const S& mass_of(const std::string& label) const { return mass_[index_of(label)]; }
  std::size_t index_of(const std::string& label) const { return detail::find_label(alphabet_, label); }
  S total() const { return detail::sum(mass_); }
  bool is_normalized(double tol = kDefaultTolerance) const { return detail::sums_to_one(mass_, tol); }

  bool operator==(const Dist&) const = default;

 private:
  std::vector<std::string> alphabet_;
  std::vector<S> mass_;
};

/// Throws ValidationError naming the offending sum.
template <class S>
void require_normalized(const Dist<S>& d, double tol = kDefaultTolerance) {
  if (!d.is_normalized(tol)) {
    throw ValidationError("distribution is not normalized: masses sum to " + ScalarTraits<S>::format(d.total()));
  }
}

/// Joint law over an ordered list of variables. Cells are stored dense in
/// row-major order (last variable varies fastest).
template <ProbabilityScalar S>
class JointTable {
 public:
  JointTable() = default;
  JointTable(std::vector<Variable> variables, std::vector<S> cells)
      : variables_(std::move(variables)), cells_(std::move(cells)) {
    std::vector<std::string> names;
    std::size_t expected = 1;
    for (const Variable& v : variables_) {
      if (v.alphabet.empty()) throw ValidationError("variable '" + v.name + "' has an empty alphabet");
      detail::require_unique(v.alphabet, "symbol");
      names.push_back(v.name);
      expected *= v.alphabet.size();
    }
    if (variables_.empty()) throw ValidationError("joint table needs at least one variable");
    detail::require_unique(names, "variable");
    if (cells_.size() != expected) {
      throw ValidationError("joint table has " + std::to_string(cells_.size()) + " cells, expected " +
                            std::to_string(expected));
    }
    detail::canonicalize(cells_);
    detail::require_nonnegative(cells_, "joint table");
  }

  static JointTable zeros(std::vector<Variable> variables) {
    std::size_t n = 1;
    for (const Variable& v : variables) n *= v.alphabet.size();
    return JointTable(std::move(variables), std::vector<S>(n, ScalarTraits<S>::zero()));
  }

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<S>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  const S& operator[](std::size_t flat) const { return cells_[flat]; }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i].name == name) return i;
    }
    throw LookupError("unknown variable '" + name + "'");
  }

  std::size_t flat_index(std::span<const std::size_t> tuple) const {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < variables_.size(); ++i) flat = flat * variables_[i].alphabet.size() + tuple[i];
    return flat;
  }

  std::vector<std::size_t> tuple_of(std::size_t flat) const {
    std::vector<std::size_t> tuple(variables_.size());
    for (std::size_t i = variables_.size(); i-- > 0;) {
      const std::size_t k = variables_[i].alphabet.size();
      tuple[i] = flat % k;
      flat /= k;
    }
    return tuple;
  }

  /// Cell addressed by outcome labels, one per variable in order.
  const S& at(const std::vector<std::string>& labels) const {
    if (labels.size() != variables_.size()) throw LookupError("outcome tuple has the wrong arity");
    std::vector<std::size_t> tuple(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) tuple[i] = detail::find_label(variables_[i].alphabet, labels[i]);
    return cells_[flat_index(tuple)];
  }

  S total() const { return detail::sum(cells_); }
  bool is_normalized(double tol = kDefaultTolerance) const { return detail::sums_to_one(cells_, tol); }

  bool operator==(const JointTable&) const = default;

 private:
  std::vector<Variable> variables_;
  std::vector<S> cells_;
};

template <class S>
void require_normalized(const JointTable<S>& j, double tol = kDefaultTolerance) {
  if (!j.is_normalized(tol)) {
    throw ValidationError("joint table is not normalized: cells sum to " + ScalarTraits<S>::format(j.total()));
  }
}

/// Sums out every variable not in `keep`; the result lists variables in the
/// order given by `keep`.
template <class S>
JointTable<S> marginalize(const JointTable<S>& j, const VarList& keep) {
  if (keep.empty()) throw ValidationError("marginalize: keep list is empty");
  std::vector<std::size_t> positions;
  std::vector<Variable> kept;
  for (const std::string& name : keep) {
    positions.push_back(j.index_of(name));
    kept.push_back(j.variables()[positions.back()]);
  }
  JointTable<S> shape = JointTable<S>::zeros(kept);
  std::vector<S> out(shape.size(), ScalarTraits<S>::zero());
  std::vector<std::size_t> sub(positions.size());
  for (std::size_t flat = 0; flat < j.size(); ++flat) {
    if (ScalarTraits<S>::is_zero(j[flat])) continue;
    const std::vector<std::size_t> tuple = j.tuple_of(flat);
    for (std::size_t i = 0; i < positions.size(); ++i) sub[i] = tuple[positions[i]];
    out[shape.flat_index(sub)] += j[flat];
  }
  return JointTable<S>(std::move(kept), std::move(out));
}

/// Single-variable table as a distribution.
template <class S>
Dist<S> to_dist(const JointTable<S>& j) {
  if (j.variables().size() != 1) throw ValidationError("to_dist needs a single-variable table");
  return Dist<S>(j.variables().front().alphabet, j.cells());
}

template <class S>
JointTable<S> from_dist(const std::string& name, const Dist<S>& d) {
  return JointTable<S>({Variable{name, d.alphabet()}}, d.mass());
}

/// Elementwise conversion of the probability scalar.
template <class To, class From>
JointTable<To> cast_table(const JointTable<From>& j) {
  std::vector<To> cells;
  cells.reserve(j.size());
  for (const From& c : j.cells()) {
    if constexpr (std::is_same_v<To, double>) {
      cells.push_back(to_double(c));
    } else {
      cells.push_back(To(c));
    }
  }
  return JointTable<To>(j.variables(), std::move(cells));
}

template <class S>
double entropy(const Dist<S>& d, double base = 2.0, double tol = kDefaultTolerance) {
  require_normalized(d, tol);
  const double h = detail::entropy_bits(d.mass());
  return base == 2.0 ? h : h / std::log2(base);
}

/// Joint entropy H(vars) of the listed variables.
template <class S>
double entropy(const JointTable<S>& j, const VarList& vars, double base = 2.0, double tol = kDefaultTolerance) {
  require_normalized(j, tol);
  const double h = detail::entropy_bits(marginalize(j, vars).cells());
  return base == 2.0 ? h : h / std::log2(base);
}

namespace detail {

inline VarList concat(const VarList& a, const VarList& b) {
  VarList out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline void require_disjoint(const std::vector<const VarList*>& lists) {
  VarList all;
  for (const VarList* l : lists) all.insert(all.end(), l->begin(), l->end());
  require_unique(all, "variable");
}

}  // namespace detail

/// I(X;Y|Z) = Σ_z p(z) I(X;Y|Z=z), evaluated as
/// Σ p(x,y,z) log[p(z) p(x,y,z) / (p(x,z) p(y,z))]. An empty Z gives I(X;Y).
template <class S>
double conditional_mutual_information(const JointTable<S>& j, const VarList& x, const VarList& y, const VarList& z,
                                      double base = 2.0, double tol = kDefaultTolerance) {
  if (x.empty() || y.empty()) throw ValidationError("mutual information needs nonempty variable lists");
  detail::require_disjoint({&x, &y, &z});
  for (const VarList* l : {&x, &y, &z}) {
    for (const std::string& name : *l) j.index_of(name);
  }
  require_normalized(j, tol);

  const VarList xz = detail::concat(x, z);
  const VarList yz = detail::concat(y, z);
  const JointTable<S> pxyz = marginalize(j, detail::concat(x, yz));
  const JointTable<S> pxz = marginalize(j, xz);
  const JointTable<S> pyz = marginalize(j, yz);
  const JointTable<S> pz = z.empty() ? JointTable<S>() : marginalize(j, z);

  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  double total = 0.0;
  std::vector<std::size_t> sxz(nx + z.size()), syz(ny + z.size()), sz(z.size());
  for (std::size_t flat = 0; flat < pxyz.size(); ++flat) {
    if (ScalarTraits<S>::is_zero(pxyz[flat])) continue;
    const std::vector<std::size_t> t = pxyz.tuple_of(flat);
    for (std::size_t i = 0; i < nx; ++i) sxz[i] = t[i];
    for (std::size_t i = 0; i < ny; ++i) syz[i] = t[nx + i];
    for (std::size_t i = 0; i < z.size(); ++i) {
      sxz[nx + i] = t[nx + ny + i];
      syz[ny + i] = t[nx + ny + i];
      sz[i] = t[nx + ny + i];
    }
    const double p = to_double(pxyz[flat]);
    if constexpr (ScalarTraits<S>::exact) {
      Rational r = pxyz[flat] / (pxz[pxz.flat_index(sxz)] * pyz[pyz.flat_index(syz)]);
      if (!z.empty()) r *= pz[pz.flat_index(sz)];
      total -= p * neg_log2(r);
    } else {
      double ratio = p / (pxz[pxz.flat_index(sxz)] * pyz[pyz.flat_index(syz)]);
      if (!z.empty()) ratio *= pz[pz.flat_index(sz)];
      total += p * std::log2(ratio);
    }
  }
  total = detail::clamp_rounding(total);
  return base == 2.0 ? total : total / std::log2(base);
}

template <class S>
double mutual_information(const JointTable<S>& j, const VarList& x, const VarList& y, double base = 2.0,
                          double tol = kDefaultTolerance) {
  return conditional_mutual_information(j, x, y, VarList{}, base, tol);
}

template <class S>
double mutual_information(const JointTable<S>& j, const std::string& x, const std::string& y, double base = 2.0,
                          double tol = kDefaultTolerance) {
  return mutual_information(j, VarList{x}, VarList{y}, base, tol);
}

template <class S>
double conditional_mutual_information(const JointTable<S>& j, const std::string& x, const std::string& y,
                                      const std::string& z, double base = 2.0, double tol = kDefaultTolerance) {
  return conditional_mutual_information(j, VarList{x}, VarList{y}, VarList{z}, base, tol);
}

}  // namespace contextcost
